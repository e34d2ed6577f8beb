use num_complex::Complex64;

use super::MolecularIntegrals;
use crate::fermion::FermionOperator;

/// Spin-orbital Hamiltonian
/// `e_nuc + sum h_pq a+_{p s} a_{q s} + 1/2 sum (pq|rs) a+_{p s} a+_{r t} a_{s t} a_{q s}`.
pub fn build_hamiltonian(mi: &MolecularIntegrals) -> FermionOperator {
    let n = mi.n_spatial();
    let mut f = FermionOperator::zero();
    if mi.e_nuc != 0.0 {
        f.push(Complex64::new(mi.e_nuc, 0.0), Vec::new());
    }
    for p in 0..n {
        for q in 0..n {
            let v = mi.h[(p, q)];
            if v == 0.0 {
                continue;
            }
            for s in 0..2 {
                f.push(Complex64::new(v, 0.0), vec![(2 * p + s, true), (2 * q + s, false)]);
            }
        }
    }
    for p in 0..n {
        for q in 0..n {
            for r in 0..n {
                for s in 0..n {
                    let v = mi.g.get(p, q, r, s);
                    if v == 0.0 {
                        continue;
                    }
                    for sig in 0..2 {
                        for tau in 0..2 {
                            let (a, b, c, d) = (2 * p + sig, 2 * r + tau, 2 * s + tau, 2 * q + sig);
                            if a == b || c == d {
                                continue;
                            }
                            f.push(
                                Complex64::new(0.5 * v, 0.0),
                                vec![(a, true), (b, true), (c, false), (d, false)],
                            );
                        }
                    }
                }
            }
        }
    }
    f
}

/// Closed-shell determinant energy with the lowest `n_electrons / 2` orbitals doubly occupied.
pub fn hf_energy(mi: &MolecularIntegrals) -> f64 {
    let nocc = mi.n_electrons / 2;
    let mut e = mi.e_nuc;
    for i in 0..nocc {
        e += 2.0 * mi.h[(i, i)];
        for j in 0..nocc {
            e += 2.0 * mi.g.get(i, i, j, j) - mi.g.get(i, j, j, i);
        }
    }
    e
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fermion::jordan_wigner;
    use crate::integrals::{parse_fcidump, Eri};
    use crate::pauli::{PauliString, PauliSum};
    use nalgebra::DMatrix;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn nuclear_only_is_identity() {
        let mi = MolecularIntegrals::new(DMatrix::zeros(2, 2), Eri::zeros(2), 1.0, 0).unwrap();
        let s = jordan_wigner(&build_hamiltonian(&mi), 4).unwrap();
        assert!(s.approx_eq(&PauliSum::identity(4, c(1.0)), 1e-15));
    }

    #[test]
    fn single_orbital_number_operator() {
        let eps = -0.3;
        let mi = MolecularIntegrals::new(DMatrix::from_element(1, 1, eps), Eri::zeros(1), 0.0, 0).unwrap();
        let s = jordan_wigner(&build_hamiltonian(&mi), 2).unwrap();
        let e = PauliSum::from_terms(
            2,
            [
                (PauliString::identity(2), c(eps)),
                ("ZI".parse().unwrap(), c(-eps / 2.0)),
                ("IZ".parse().unwrap(), c(-eps / 2.0)),
            ],
        )
        .unwrap();
        assert!(s.approx_eq(&e, 1e-15));
    }

    #[test]
    fn h2_diagonal_term_is_hf_energy() {
        let mi = parse_fcidump(include_str!("../../tests/data/h2_sto3g.fcidump")).unwrap();
        let s = jordan_wigner(&build_hamiltonian(&mi), 4).unwrap();
        assert!(s.is_hermitian(1e-14));
        // <1100| P |1100> is nonzero only for Z-type strings: sign from Z on occupied qubits 0, 1
        let mut e = 0.0;
        for (p, v) in s.iter() {
            if p.x_mask() == 0 {
                let sign = if (p.z_mask() & 0b11).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
                e += v.re * sign;
            }
        }
        assert!((e - hf_energy(&mi)).abs() < 1e-12);
        assert!((e - -1.1166843870853405).abs() < 1e-9);
    }
}
