//! Molecular and property integrals in an orthonormal MO basis.

mod fcidump;
mod hamiltonian;
mod mp2;
mod property;
mod rotation;

pub use fcidump::{parse_fcidump, read_fcidump, write_fcidump};
pub use hamiltonian::{build_hamiltonian, hf_energy};
pub use mp2::{mp2_natural_orbitals, NaturalOrbitals};
pub use property::{read_property, PropertyIntegrals, PropertyKind};
pub use rotation::{expm, OrbitalRotation};

use nalgebra::DMatrix;

use crate::error::{Error, Result};

pub const SYMMETRY_TOL: f64 = 1e-10;

/// Two-electron integrals `(pq|rs)` in chemist order, stored densely.
#[derive(Clone, Debug, PartialEq)]
pub struct Eri {
    n: usize,
    data: Vec<f64>,
}

impl Eri {
    pub fn zeros(n: usize) -> Self {
        Eri {
            n,
            data: vec![0.0; n * n * n * n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    fn idx(&self, p: usize, q: usize, r: usize, s: usize) -> usize {
        ((p * self.n + q) * self.n + r) * self.n + s
    }

    #[inline]
    pub fn get(&self, p: usize, q: usize, r: usize, s: usize) -> f64 {
        self.data[self.idx(p, q, r, s)]
    }

    #[inline]
    pub fn set(&mut self, p: usize, q: usize, r: usize, s: usize, v: f64) {
        let i = self.idx(p, q, r, s);
        self.data[i] = v;
    }

    /// Set all eight permutations of `(pq|rs)`.
    pub fn set_sym(&mut self, p: usize, q: usize, r: usize, s: usize, v: f64) {
        for (a, b, c, d) in [
            (p, q, r, s),
            (q, p, r, s),
            (p, q, s, r),
            (q, p, s, r),
            (r, s, p, q),
            (s, r, p, q),
            (r, s, q, p),
            (s, r, q, p),
        ] {
            self.set(a, b, c, d, v);
        }
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    /// Largest deviation from 8-fold permutational symmetry.
    pub fn symmetry_error(&self) -> f64 {
        let n = self.n;
        let mut err: f64 = 0.0;
        for p in 0..n {
            for q in 0..n {
                for r in 0..n {
                    for s in 0..n {
                        let v = self.get(p, q, r, s);
                        err = err
                            .max((v - self.get(q, p, r, s)).abs())
                            .max((v - self.get(p, q, s, r)).abs())
                            .max((v - self.get(r, s, p, q)).abs());
                    }
                }
            }
        }
        err
    }

    /// `g'_{pqrs} = sum U_pa U_qb U_rc U_sd g_abcd`.
    pub fn transform(&self, u: &DMatrix<f64>) -> Eri {
        let n = self.n;
        let mut a = self.data.clone();
        let mut b = vec![0.0; a.len()];
        // contract one index at a time, cycling the transformed index to the back
        let m = n * n * n;
        for _ in 0..4 {
            // a is laid out as [old][rest], b as [rest][new]
            for rest in 0..m {
                for newp in 0..n {
                    let mut acc = 0.0;
                    for old in 0..n {
                        acc += u[(newp, old)] * a[old * m + rest];
                    }
                    b[rest * n + newp] = acc;
                }
            }
            std::mem::swap(&mut a, &mut b);
        }
        Eri { n, data: a }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MolecularIntegrals {
    pub n_electrons: usize,
    pub h: DMatrix<f64>,
    pub g: Eri,
    pub e_nuc: f64,
}

impl MolecularIntegrals {
    /// Construct and check symmetry invariants.
    pub fn new(h: DMatrix<f64>, g: Eri, e_nuc: f64, n_electrons: usize) -> Result<Self> {
        let mi = MolecularIntegrals {
            n_electrons,
            h,
            g,
            e_nuc,
        };
        let issues = mi.issues();
        if let Some(first) = issues.into_iter().next() {
            return Err(Error::InvalidIntegrals(first));
        }
        Ok(mi)
    }

    pub fn n_spatial(&self) -> usize {
        self.h.nrows()
    }

    /// Invariant violations, empty when the integrals are consistent.
    pub fn issues(&self) -> Vec<String> {
        let mut out = Vec::new();
        let n = self.h.nrows();
        if self.h.ncols() != n {
            out.push(format!("h is {}x{}, not square", n, self.h.ncols()));
            return out;
        }
        if self.g.n() != n {
            out.push(format!("g has dimension {} but h has {}", self.g.n(), n));
            return out;
        }
        let mut worst = (0.0, 0, 0);
        for p in 0..n {
            for q in 0..p {
                let d = (self.h[(p, q)] - self.h[(q, p)]).abs();
                if d > worst.0 {
                    worst = (d, p, q);
                }
            }
        }
        if worst.0 > SYMMETRY_TOL {
            out.push(format!(
                "h not symmetric: h[{},{}] - h[{},{}] = {:e}",
                worst.1 + 1,
                worst.2 + 1,
                worst.2 + 1,
                worst.1 + 1,
                worst.0
            ));
        }
        let ge = self.g.symmetry_error();
        if ge > SYMMETRY_TOL {
            out.push(format!("g lacks 8-fold permutational symmetry (max deviation {:e})", ge));
        }
        if self.n_electrons > 2 * n {
            out.push(format!("{} electrons do not fit in {} orbitals", self.n_electrons, n));
        }
        out
    }

    /// Integrals in the orbital basis `phi'_p = sum_q U_pq phi_q`.
    pub fn transform(&self, u: &DMatrix<f64>) -> Result<MolecularIntegrals> {
        let n = self.n_spatial();
        if u.nrows() != n || u.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: u.nrows(),
            });
        }
        Ok(MolecularIntegrals {
            n_electrons: self.n_electrons,
            h: u * &self.h * u.transpose(),
            g: self.g.transform(u),
            e_nuc: self.e_nuc,
        })
    }

    pub fn rotate(&self, rot: &OrbitalRotation) -> Result<MolecularIntegrals> {
        self.transform(&rot.unitary())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transform_by_identity_is_exact() {
        let mut g = Eri::zeros(3);
        g.set_sym(0, 1, 2, 0, 0.25);
        g.set_sym(1, 1, 1, 1, 0.5);
        let t = g.transform(&DMatrix::identity(3, 3));
        assert_eq!(t, g);
    }

    #[test]
    fn transform_permutation_moves_indices() {
        let mut g = Eri::zeros(2);
        g.set_sym(0, 0, 0, 1, 0.3);
        let mut u = DMatrix::zeros(2, 2);
        u[(0, 1)] = 1.0;
        u[(1, 0)] = 1.0;
        let t = g.transform(&u);
        assert!((t.get(1, 1, 1, 0) - 0.3).abs() < 1e-15);
        assert!(t.get(0, 0, 0, 1).abs() < 1e-15);
    }
}
