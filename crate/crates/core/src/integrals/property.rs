use std::fmt::Write as _;
use std::path::Path;

use nalgebra::DMatrix;

use super::{OrbitalRotation, SYMMETRY_TOL};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PropertyKind {
    /// Position operator `r`; symmetric.
    ElectricDipole,
    /// `-1/2 (r x nabla)`; antisymmetric.
    MagneticDipole,
}

impl PropertyKind {
    pub fn label(self) -> &'static str {
        match self {
            PropertyKind::ElectricDipole => "electric_dipole",
            PropertyKind::MagneticDipole => "magnetic_dipole",
        }
    }

    fn antisymmetric(self) -> bool {
        matches!(self, PropertyKind::MagneticDipole)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PropertyIntegrals {
    pub kind: PropertyKind,
    pub components: [DMatrix<f64>; 3],
    pub gauge_origin: [f64; 3],
}

fn perr(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

impl PropertyIntegrals {
    pub fn new(kind: PropertyKind, components: [DMatrix<f64>; 3], gauge_origin: [f64; 3]) -> Result<Self> {
        let p = PropertyIntegrals {
            kind,
            components,
            gauge_origin,
        };
        if let Some(first) = p.issues().into_iter().next() {
            return Err(Error::InvalidIntegrals(first));
        }
        Ok(p)
    }

    pub fn zeros(kind: PropertyKind, n: usize) -> Self {
        PropertyIntegrals {
            kind,
            components: [DMatrix::zeros(n, n), DMatrix::zeros(n, n), DMatrix::zeros(n, n)],
            gauge_origin: [0.0; 3],
        }
    }

    pub fn n_spatial(&self) -> usize {
        self.components[0].nrows()
    }

    pub fn issues(&self) -> Vec<String> {
        let mut out = Vec::new();
        let n = self.n_spatial();
        let sign = if self.kind.antisymmetric() { -1.0 } else { 1.0 };
        for (c, m) in "xyz".chars().zip(&self.components) {
            if m.nrows() != n || m.ncols() != n {
                out.push(format!("{} component is {}x{}, expected {}x{}", c, m.nrows(), m.ncols(), n, n));
                continue;
            }
            let err = (m - m.transpose() * sign).amax();
            if err > SYMMETRY_TOL {
                let what = if self.kind.antisymmetric() {
                    "antisymmetric"
                } else {
                    "symmetric"
                };
                out.push(format!(
                    "{} {} component not {} (max deviation {:e})",
                    self.kind.label(),
                    c,
                    what,
                    err
                ));
            }
        }
        out
    }

    /// One-electron transform `x' = U x U^T`.
    pub fn transform(&self, u: &DMatrix<f64>) -> Result<PropertyIntegrals> {
        let n = self.n_spatial();
        if u.nrows() != n || u.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: u.nrows(),
            });
        }
        let ut = u.transpose();
        Ok(PropertyIntegrals {
            kind: self.kind,
            components: std::array::from_fn(|k| u * &self.components[k] * &ut),
            gauge_origin: self.gauge_origin,
        })
    }

    pub fn rotate(&self, rot: &OrbitalRotation) -> Result<PropertyIntegrals> {
        self.transform(&rot.unitary())
    }

    /// Parse the `PROPINTS` text format. Indices are 1-based. Symmetric kinds
    /// list one triangle, antisymmetric kinds the full matrix.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, head) = lines.next().ok_or_else(|| perr(1, "empty property file"))?;
        let toks: Vec<&str> = head.split_whitespace().collect();
        if toks.len() != 6 || toks[0] != "PROPINTS" {
            return Err(perr(1, "expected header 'PROPINTS <kind> NORB=<n> ORIGIN=<x> <y> <z>'"));
        }
        let kind = match toks[1] {
            "electric_dipole" => PropertyKind::ElectricDipole,
            "magnetic_dipole" => PropertyKind::MagneticDipole,
            k => return Err(perr(1, format!("unknown property kind {:?}", k))),
        };
        let n: usize = toks[2]
            .strip_prefix("NORB=")
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| perr(1, "bad NORB field"))?;
        let ox = toks[3]
            .strip_prefix("ORIGIN=")
            .ok_or_else(|| perr(1, "bad ORIGIN field"))?;
        let mut origin = [0.0; 3];
        for (k, t) in [ox, toks[4], toks[5]].iter().enumerate() {
            origin[k] = t.parse().map_err(|_| perr(1, format!("bad origin value {:?}", t)))?;
        }
        let mut comps = [DMatrix::zeros(n, n), DMatrix::zeros(n, n), DMatrix::zeros(n, n)];
        let mut set = [DMatrix::from_element(n, n, false), DMatrix::from_element(n, n, false), DMatrix::from_element(n, n, false)];
        for (i, l) in lines {
            let lineno = i + 1;
            let t: Vec<&str> = l.split_whitespace().collect();
            if t.len() != 4 {
                return Err(perr(lineno, format!("expected 4 fields, found {}", t.len())));
            }
            let c = match t[0] {
                "x" => 0,
                "y" => 1,
                "z" => 2,
                o => return Err(perr(lineno, format!("bad component {:?}", o))),
            };
            let mut idx = [0usize; 2];
            for k in 0..2 {
                idx[k] = t[k + 1]
                    .parse()
                    .map_err(|_| perr(lineno, format!("bad index {:?}", t[k + 1])))?;
                if idx[k] == 0 || idx[k] > n {
                    return Err(perr(lineno, format!("index {} outside 1..={}", idx[k], n)));
                }
            }
            let v: f64 = t[3]
                .parse()
                .map_err(|_| perr(lineno, format!("bad value {:?}", t[3])))?;
            let (p, q) = (idx[0] - 1, idx[1] - 1);
            if set[c][(p, q)] {
                return Err(perr(lineno, format!("duplicate entry {} {} {}", t[0], idx[0], idx[1])));
            }
            set[c][(p, q)] = true;
            comps[c][(p, q)] = v;
            if !kind.antisymmetric() && p != q {
                if set[c][(q, p)] && (comps[c][(q, p)] - v).abs() > SYMMETRY_TOL {
                    return Err(perr(
                        lineno,
                        format!("{} {} component not symmetric at ({}, {})", kind.label(), t[0], idx[0], idx[1]),
                    ));
                }
                set[c][(q, p)] = true;
                comps[c][(q, p)] = v;
            }
        }
        PropertyIntegrals::new(kind, comps, origin)
    }

    pub fn write(&self) -> String {
        let n = self.n_spatial();
        let mut s = String::new();
        let o = self.gauge_origin;
        let _ = writeln!(s, "PROPINTS {} NORB={} ORIGIN={} {} {}", self.kind.label(), n, o[0], o[1], o[2]);
        for (c, m) in "xyz".chars().zip(&self.components) {
            for i in 0..n {
                let top = if self.kind.antisymmetric() { n } else { i + 1 };
                for j in 0..top {
                    if m[(i, j)].abs() > 1e-15 {
                        let _ = writeln!(s, "{} {} {} {:.17e}", c, i + 1, j + 1, m[(i, j)]);
                    }
                }
            }
        }
        s
    }
}

pub fn read_property(path: &Path) -> Result<PropertyIntegrals> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    PropertyIntegrals::parse(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_fixture_files() {
        let d = PropertyIntegrals::parse(include_str!("../../tests/data/h2_sto3g.dipole")).unwrap();
        assert_eq!(d.kind, PropertyKind::ElectricDipole);
        assert_eq!(d.components[2][(0, 1)], d.components[2][(1, 0)]);
        let m = PropertyIntegrals::parse(include_str!("../../tests/data/lih_sto3g.magnetic")).unwrap();
        assert_eq!(m.kind, PropertyKind::MagneticDipole);
        assert!(m.issues().is_empty());
    }

    #[test]
    fn symmetric_magnetic_rejected() {
        let text = "PROPINTS magnetic_dipole NORB=2 ORIGIN=0 0 0\nx 1 2 0.5\nx 2 1 0.5\n";
        assert!(matches!(PropertyIntegrals::parse(text), Err(Error::InvalidIntegrals(_))));
    }

    #[test]
    fn write_round_trip() {
        let d = PropertyIntegrals::parse(include_str!("../../tests/data/lih_sto3g.dipole")).unwrap();
        assert_eq!(PropertyIntegrals::parse(&d.write()).unwrap(), d);
    }

    #[test]
    fn transform_preserves_trace_and_symmetry() {
        let d = PropertyIntegrals::parse(include_str!("../../tests/data/lih_sto3g.dipole")).unwrap();
        let n = d.n_spatial();
        let mut k = DMatrix::zeros(n, n);
        k[(0, 3)] = 0.2;
        k[(3, 0)] = -0.2;
        k[(1, 5)] = -0.1;
        k[(5, 1)] = 0.1;
        let u = super::super::expm(&k);
        let t = d.transform(&u).unwrap();
        assert!(t.issues().is_empty());
        for c in 0..3 {
            assert!((t.components[c].trace() - d.components[c].trace()).abs() < 1e-12);
        }
        let same = d.transform(&DMatrix::identity(n, n)).unwrap();
        assert_eq!(same, d);
    }
}
