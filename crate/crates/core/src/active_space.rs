//! Inactive/active/virtual partition and projection onto the active register.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::fermion::jordan_wigner;
use crate::integrals::{build_hamiltonian, Eri, MolecularIntegrals};
use crate::pauli::{PauliString, PauliSum};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ActiveSpaceSpec {
    pub n_inactive: usize,
    pub n_active: usize,
    pub n_virtual: usize,
    pub n_active_electrons: usize,
}

impl ActiveSpaceSpec {
    pub fn new(n_inactive: usize, n_active: usize, n_virtual: usize, n_active_electrons: usize) -> Result<Self> {
        let s = ActiveSpaceSpec {
            n_inactive,
            n_active,
            n_virtual,
            n_active_electrons,
        };
        if !n_active_electrons.is_multiple_of(2) {
            return Err(Error::InvalidActiveSpace(format!(
                "active electron count {} is odd",
                n_active_electrons
            )));
        }
        if n_active_electrons > 2 * n_active {
            return Err(Error::InvalidActiveSpace(format!(
                "{} active electrons exceed capacity of {} active orbitals",
                n_active_electrons, n_active
            )));
        }
        if s.n_qubits() > 64 {
            return Err(Error::TooManyQubits(s.n_qubits()));
        }
        Ok(s)
    }

    /// `(n_electrons, n_orbitals)` active space carved from a closed-shell system
    /// with the remaining electrons in the lowest orbitals.
    pub fn from_counts(n_spatial: usize, n_electrons: usize, active_electrons: usize, active_orbitals: usize) -> Result<Self> {
        if !n_electrons.is_multiple_of(2) {
            return Err(Error::OpenShell(n_electrons));
        }
        if active_electrons > n_electrons {
            return Err(Error::InvalidActiveSpace(format!(
                "{} active electrons but only {} in total",
                active_electrons, n_electrons
            )));
        }
        if !(n_electrons - active_electrons).is_multiple_of(2) {
            return Err(Error::InvalidActiveSpace(format!(
                "active electron count {} is odd",
                active_electrons
            )));
        }
        let ni = (n_electrons - active_electrons) / 2;
        if ni + active_orbitals > n_spatial {
            return Err(Error::InvalidActiveSpace(format!(
                "{} inactive + {} active orbitals exceed the {} available",
                ni, active_orbitals, n_spatial
            )));
        }
        Self::new(ni, active_orbitals, n_spatial - ni - active_orbitals, active_electrons)
    }

    pub fn n_spatial(&self) -> usize {
        self.n_inactive + self.n_active + self.n_virtual
    }

    pub fn n_qubits(&self) -> usize {
        2 * self.n_spatial()
    }

    pub fn n_active_qubits(&self) -> usize {
        2 * self.n_active
    }

    pub fn n_electrons(&self) -> usize {
        2 * self.n_inactive + self.n_active_electrons
    }

    /// Number of doubly occupied active orbitals in the reference.
    pub fn n_active_occupied(&self) -> usize {
        self.n_active_electrons / 2
    }

    pub fn active_offset(&self) -> usize {
        2 * self.n_inactive
    }

    pub fn inactive_mask(&self) -> u64 {
        low_bits(self.active_offset())
    }

    pub fn active_mask(&self) -> u64 {
        low_bits(self.n_active_qubits()) << self.active_offset()
    }

    pub fn outside_mask(&self) -> u64 {
        low_bits(self.n_qubits()) & !self.active_mask()
    }

    /// Free orbital-rotation pairs `(p, q)`, `p > q`: active-inactive, then
    /// virtual-inactive, then virtual-active.
    pub fn kappa_pairs(&self) -> Vec<(usize, usize)> {
        let ni = self.n_inactive;
        let na = self.n_active;
        let nv = self.n_virtual;
        let mut out = Vec::new();
        for v in ni..ni + na {
            for i in 0..ni {
                out.push((v, i));
            }
        }
        for a in ni + na..ni + na + nv {
            for i in 0..ni {
                out.push((a, i));
            }
        }
        for a in ni + na..ni + na + nv {
            for v in ni..ni + na {
                out.push((a, v));
            }
        }
        out
    }
}

#[inline]
pub(crate) fn low_bits(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Project a full-register operator onto the active register with the inactive
/// orbitals doubly occupied and the virtual orbitals empty.
pub fn project(op: &PauliSum, spec: &ActiveSpaceSpec) -> Result<PauliSum> {
    if op.n_qubits() != spec.n_qubits() {
        return Err(Error::SizeMismatch {
            left: op.n_qubits(),
            right: spec.n_qubits(),
        });
    }
    let out_mask = spec.outside_mask();
    let inact = spec.inactive_mask();
    let off = spec.active_offset();
    let na = spec.n_active_qubits();
    let amask = low_bits(na);
    let mut res = PauliSum::zero(na);
    for (p, c) in op.iter() {
        if p.x_mask() & out_mask != 0 {
            continue;
        }
        let sign = if (p.z_mask() & inact).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
        let s = PauliString::from_masks_unchecked(na, (p.x_mask() >> off) & amask, (p.z_mask() >> off) & amask);
        res.add_term(s, c * sign);
    }
    res.simplify();
    Ok(res)
}

/// Frozen-core integrals restricted to the active orbitals, with the inactive
/// energy folded into `e_nuc`.
pub fn active_integrals(mi: &MolecularIntegrals, spec: &ActiveSpaceSpec) -> Result<MolecularIntegrals> {
    if mi.n_spatial() != spec.n_spatial() {
        return Err(Error::DimensionMismatch {
            expected: spec.n_spatial(),
            got: mi.n_spatial(),
        });
    }
    let ni = spec.n_inactive;
    let na = spec.n_active;
    let mut e = mi.e_nuc;
    for i in 0..ni {
        e += 2.0 * mi.h[(i, i)];
        for j in 0..ni {
            e += 2.0 * mi.g.get(i, i, j, j) - mi.g.get(i, j, j, i);
        }
    }
    let h = DMatrix::from_fn(na, na, |t, u| {
        let (t, u) = (t + ni, u + ni);
        let mut v = mi.h[(t, u)];
        for i in 0..ni {
            v += 2.0 * mi.g.get(t, u, i, i) - mi.g.get(t, i, i, u);
        }
        v
    });
    let mut g = Eri::zeros(na);
    for t in 0..na {
        for u in 0..na {
            for v in 0..na {
                for w in 0..na {
                    g.set(t, u, v, w, mi.g.get(t + ni, u + ni, v + ni, w + ni));
                }
            }
        }
    }
    Ok(MolecularIntegrals {
        n_electrons: spec.n_active_electrons,
        h,
        g,
        e_nuc: e,
    })
}

/// Active-register qubit Hamiltonian; equal to `project(JW(H))` but built
/// without the full-register operator.
pub fn active_hamiltonian(mi: &MolecularIntegrals, spec: &ActiveSpaceSpec) -> Result<PauliSum> {
    let act = active_integrals(mi, spec)?;
    jordan_wigner(&build_hamiltonian(&act), spec.n_active_qubits())
}

/// Full-register qubit Hamiltonian.
pub fn full_hamiltonian(mi: &MolecularIntegrals) -> Result<PauliSum> {
    jordan_wigner(&build_hamiltonian(mi), 2 * mi.n_spatial())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn load(name: &str) -> MolecularIntegrals {
        let p = format!("{}/tests/data/{}.fcidump", env!("CARGO_MANIFEST_DIR"), name);
        crate::integrals::read_fcidump(std::path::Path::new(&p)).unwrap()
    }

    #[test]
    fn spec_validation() {
        assert!(ActiveSpaceSpec::new(0, 2, 0, 3).is_err());
        assert!(ActiveSpaceSpec::new(0, 2, 0, 6).is_err());
        assert!(ActiveSpaceSpec::from_counts(4, 4, 4, 5).is_err());
        let s = ActiveSpaceSpec::from_counts(6, 4, 2, 2).unwrap();
        assert_eq!((s.n_inactive, s.n_active, s.n_virtual), (1, 2, 3));
        assert_eq!(s.inactive_mask(), 0b11);
        assert_eq!(s.active_mask(), 0b111100);
    }

    #[test]
    fn kappa_pair_counts() {
        let s = ActiveSpaceSpec::new(1, 4, 1, 4).unwrap();
        let k = s.kappa_pairs();
        assert_eq!(k.len(), 4 + 1 + 4);
        assert_eq!(k[0], (1, 0));
        assert_eq!(k[4], (5, 0));
        assert_eq!(k[5], (5, 1));
        assert!(ActiveSpaceSpec::new(0, 2, 0, 2).unwrap().kappa_pairs().is_empty());
    }

    #[test]
    fn identity_and_inactive_z() {
        let s = ActiveSpaceSpec::new(1, 1, 1, 2).unwrap();
        let c = Complex64::new(0.7, 0.0);
        let id = PauliSum::identity(6, c);
        assert!(project(&id, &s).unwrap().approx_eq(&PauliSum::identity(2, c), 0.0));
        let z = PauliSum::from_term(PauliString::single(6, 0, crate::pauli::Pauli::Z).unwrap(), c);
        assert!(project(&z, &s).unwrap().approx_eq(&PauliSum::identity(2, -c), 0.0));
        let zv = PauliSum::from_term(PauliString::single(6, 5, crate::pauli::Pauli::Z).unwrap(), c);
        assert!(project(&zv, &s).unwrap().approx_eq(&PauliSum::identity(2, c), 0.0));
        let xi = PauliSum::from_term(PauliString::single(6, 1, crate::pauli::Pauli::X).unwrap(), c);
        assert!(project(&xi, &s).unwrap().is_empty());
        assert!(project(&id, &ActiveSpaceSpec::new(0, 1, 1, 2).unwrap()).is_err());
    }

    #[test]
    fn frozen_core_matches_projection() {
        let mi = load("lih_sto3g");
        let s = ActiveSpaceSpec::from_counts(6, 4, 2, 2).unwrap();
        let full = full_hamiltonian(&mi).unwrap();
        let p = project(&full, &s).unwrap();
        let fast = active_hamiltonian(&mi, &s).unwrap();
        assert!(p.approx_eq(&fast, 1e-11), "max diff {}", p.sub(&fast).unwrap().max_abs());
        assert!(p.len() <= full.len());
        assert!(p.is_hermitian(1e-12));
    }
}
