//! Determinant-space CI built directly from the integrals.

use std::collections::HashMap;

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::integrals::MolecularIntegrals;

#[derive(Clone, Debug)]
pub struct CiResult {
    /// Ascending total energies.
    pub energies: Vec<f64>,
    /// Eigenvectors over `dets`.
    pub vectors: Vec<DVector<f64>>,
    /// Full-register basis indices, spin-orbital `m` at bit `n_modes - 1 - m`.
    pub dets: Vec<usize>,
    pub n_modes: usize,
    /// `<S^2>` of each eigenvector.
    pub spin_squared: Vec<f64>,
}

impl CiResult {
    /// Eigenvector `k` on the active register of `n_active` spatial orbitals after `n_inactive`.
    pub fn active_vector(&self, k: usize, n_inactive: usize, n_active: usize) -> Vec<num_complex::Complex64> {
        let na = 2 * n_active;
        let mut out = vec![num_complex::Complex64::new(0.0, 0.0); 1 << na];
        for (i, &d) in self.dets.iter().enumerate() {
            let mut a = 0usize;
            for j in 0..na {
                let m = 2 * n_inactive + j;
                if (d >> (self.n_modes - 1 - m)) & 1 == 1 {
                    a |= 1 << (na - 1 - j);
                }
            }
            out[a] = self.vectors[k][i].into();
        }
        out
    }

    /// `<k0| sum_pq m_pq E_pq |k>` over spatial orbitals.
    pub fn one_body_transition(&self, k0: usize, k: usize, m: &DMatrix<f64>) -> f64 {
        let n = self.n_modes;
        let pos: HashMap<usize, usize> = self.dets.iter().enumerate().map(|(i, &d)| (d, i)).collect();
        let (bra, ket) = (&self.vectors[k0], &self.vectors[k]);
        let mut acc = 0.0;
        for (j, &d) in self.dets.iter().enumerate() {
            if ket[j] == 0.0 {
                continue;
            }
            for q in 0..n {
                let Some((d1, s1)) = annihilate(n, q, d) else { continue };
                for p in (q % 2..n).step_by(2) {
                    let Some((d2, s2)) = create(n, p, d1) else { continue };
                    if let Some(&i) = pos.get(&d2) {
                        acc += bra[i] * m[(p / 2, q / 2)] * s1 * s2 * ket[j];
                    }
                }
            }
        }
        acc
    }

    /// Singlet roots (`<S^2>` below `tol`).
    pub fn singlets(&self, tol: f64) -> Vec<usize> {
        (0..self.energies.len()).filter(|&k| self.spin_squared[k].abs() < tol).collect()
    }
}

#[inline]
fn annihilate(n: usize, m: usize, d: usize) -> Option<(usize, f64)> {
    let bit = 1usize << (n - 1 - m);
    if d & bit == 0 {
        return None;
    }
    let above = !((bit << 1) - 1);
    Some((d ^ bit, if (d & above).count_ones().is_multiple_of(2) { 1.0 } else { -1.0 }))
}

#[inline]
fn create(n: usize, m: usize, d: usize) -> Option<(usize, f64)> {
    let bit = 1usize << (n - 1 - m);
    if d & bit != 0 {
        return None;
    }
    let above = !((bit << 1) - 1);
    Some((d | bit, if (d & above).count_ones().is_multiple_of(2) { 1.0 } else { -1.0 }))
}

/// `<d'|H|d>` over the given determinants (spin-orbital `2p` alpha, `2p+1` beta).
pub fn determinant_hamiltonian(mi: &MolecularIntegrals, dets: &[usize]) -> DMatrix<f64> {
    let n = 2 * mi.n_spatial();
    let pos: HashMap<usize, usize> = dets.iter().enumerate().map(|(i, &d)| (d, i)).collect();
    let mut h = DMatrix::zeros(dets.len(), dets.len());
    for (j, &d) in dets.iter().enumerate() {
        h[(j, j)] += mi.e_nuc;
        for q in 0..n {
            let Some((d1, s1)) = annihilate(n, q, d) else { continue };
            for p in (q % 2..n).step_by(2) {
                if let Some((d2, s2)) = create(n, p, d1) {
                    if let Some(&i) = pos.get(&d2) {
                        h[(i, j)] += mi.h[(p / 2, q / 2)] * s1 * s2;
                    }
                }
            }
            for s in 0..n {
                let Some((d2, s2)) = annihilate(n, s, d1) else { continue };
                for r in (s % 2..n).step_by(2) {
                    let Some((d3, s3)) = create(n, r, d2) else { continue };
                    for p in (q % 2..n).step_by(2) {
                        let Some((d4, s4)) = create(n, p, d3) else { continue };
                        if let Some(&i) = pos.get(&d4) {
                            h[(i, j)] += 0.5 * mi.g.get(p / 2, q / 2, r / 2, s / 2) * s1 * s2 * s3 * s4;
                        }
                    }
                }
            }
        }
    }
    h
}

/// `<v|S^2|v>` over determinants of `n_modes` spin orbitals.
pub fn spin_squared_expectation(v: &DVector<f64>, dets: &[usize], n_modes: usize) -> f64 {
    let pos: HashMap<usize, usize> = dets.iter().enumerate().map(|(i, &d)| (d, i)).collect();
    let n_sp = n_modes / 2;
    let mut acc = 0.0;
    for (j, &d) in dets.iter().enumerate() {
        let cj = v[j];
        if cj == 0.0 {
            continue;
        }
        let mut na = 0.0;
        let mut nb = 0.0;
        for p in 0..n_sp {
            na += ((d >> (n_modes - 1 - 2 * p)) & 1) as f64;
            nb += ((d >> (n_modes - 2 - 2 * p)) & 1) as f64;
        }
        let sz = 0.5 * (na - nb);
        acc += cj * cj * (sz * sz + sz);
        // S- S+ = sum_pq a+_{p b} a_{p a} a+_{q a} a_{q b}
        for q in 0..n_sp {
            let Some((d1, s1)) = annihilate(n_modes, 2 * q + 1, d) else { continue };
            let Some((d2, s2)) = create(n_modes, 2 * q, d1) else { continue };
            for p in 0..n_sp {
                let Some((d3, s3)) = annihilate(n_modes, 2 * p, d2) else { continue };
                let Some((d4, s4)) = create(n_modes, 2 * p + 1, d3) else { continue };
                if let Some(&i) = pos.get(&d4) {
                    acc += v[i] * cj * s1 * s2 * s3 * s4;
                }
            }
        }
    }
    acc
}

/// CASCI with `n_inactive` doubly occupied and the rest of the orbitals beyond the
/// active window empty; `S_z = 0` determinants only. With `n_inactive = 0` and
/// `n_active` equal to the orbital count this is FCI.
pub fn casci(mi: &MolecularIntegrals, n_inactive: usize, n_active: usize, n_active_electrons: usize) -> CiResult {
    let n = 2 * mi.n_spatial();
    let na = 2 * n_active;
    let half = n_active_electrons / 2;
    let mut dets = Vec::new();
    for a in 0..1usize << na {
        let mut alpha = 0;
        let mut beta = 0;
        for j in 0..na {
            if (a >> j) & 1 == 1 {
                if j % 2 == 0 {
                    alpha += 1;
                } else {
                    beta += 1;
                }
            }
        }
        if alpha != half || beta != half || alpha + beta != n_active_electrons {
            continue;
        }
        let mut d = 0usize;
        for m in 0..2 * n_inactive {
            d |= 1 << (n - 1 - m);
        }
        for j in 0..na {
            if (a >> j) & 1 == 1 {
                d |= 1 << (n - 1 - (2 * n_inactive + j));
            }
        }
        dets.push(d);
    }
    dets.sort_unstable();
    let h = determinant_hamiltonian(mi, &dets);
    let eig = SymmetricEigen::new((&h + h.transpose()) * 0.5);
    let mut order: Vec<usize> = (0..dets.len()).collect();
    order.sort_by(|&x, &y| eig.eigenvalues[x].total_cmp(&eig.eigenvalues[y]));
    let energies: Vec<f64> = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors: Vec<DVector<f64>> = order.iter().map(|&k| eig.eigenvectors.column(k).into_owned()).collect();
    let spin_squared = vectors.iter().map(|v| spin_squared_expectation(v, &dets, n)).collect();
    CiResult {
        energies,
        vectors,
        dets,
        n_modes: n,
        spin_squared,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fermion::jordan_wigner;
    use crate::integrals::{build_hamiltonian, read_fcidump};
    use crate::oracle::{eigensolve, to_dense};

    fn load(name: &str) -> MolecularIntegrals {
        let p = format!("{}/tests/data/{}.fcidump", env!("CARGO_MANIFEST_DIR"), name);
        read_fcidump(std::path::Path::new(&p)).unwrap()
    }

    #[test]
    fn h2_two_by_two_formula() {
        let mi = load("h2_sto3g");
        let r = casci(&mi, 0, 2, 2);
        // closed-shell 2x2 CI between |1100> and |0011>
        let e0 = mi.e_nuc + 2.0 * mi.h[(0, 0)] + mi.g.get(0, 0, 0, 0);
        let e1 = mi.e_nuc + 2.0 * mi.h[(1, 1)] + mi.g.get(1, 1, 1, 1);
        let k = mi.g.get(0, 1, 0, 1);
        let lo = 0.5 * (e0 + e1) - (0.25 * (e0 - e1).powi(2) + k * k).sqrt();
        assert!((r.energies[0] - lo).abs() < 1e-12);
        assert!((r.energies[0] - -1.137270174660903).abs() < 1e-9);
    }

    #[test]
    fn jw_dense_matches_determinants() {
        let mi = load("h2_sto3g");
        let d = to_dense(&jordan_wigner(&build_hamiltonian(&mi), 4).unwrap()).unwrap();
        assert!(d.hermiticity_error() < 1e-12);
        let dets: Vec<usize> = (0..16).collect();
        let h = determinant_hamiltonian(&mi, &dets);
        for i in 0..16 {
            for j in 0..16 {
                assert!((d.matrix[(i, j)].re - h[(i, j)]).abs() < 1e-12 && d.matrix[(i, j)].im.abs() < 1e-12);
            }
        }
        let (vals, _) = eigensolve(&d, Some(2));
        let r = casci(&mi, 0, 2, 2);
        for (a, b) in vals.iter().zip(&r.energies) {
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn h2_singlet_spectrum() {
        let mi = load("h2_sto3g");
        let r = casci(&mi, 0, 2, 2);
        let s: Vec<f64> = r.singlets(1e-8).iter().map(|&k| r.energies[k]).collect();
        let refs = [-1.137270174660903, -0.1699013904631801, 0.4798361182442783];
        assert_eq!(s.len(), 3);
        for (a, b) in s.iter().zip(refs) {
            assert!((a - b).abs() < 1e-9, "{a} {b}");
        }
        // the triplet Sz=0 component sits between
        assert_eq!(r.energies.len(), 4);
    }

    #[test]
    fn one_body_transition_matches_dense() {
        use crate::oracle::{apply_fermion, inner};
        use crate::properties::one_body_operator;
        let mi = load("h4_twisted_sto3g");
        let r = casci(&mi, 0, 4, 4);
        let m = DMatrix::from_fn(4, 4, |p, q| 0.1 * (p + 2 * q) as f64 + if p == q { 0.3 } else { 0.0 });
        let op = one_body_operator(&m);
        let embed = |k: usize| {
            let mut v = vec![num_complex::Complex64::new(0.0, 0.0); 1 << 8];
            for (i, &d) in r.dets.iter().enumerate() {
                v[d] = r.vectors[k][i].into();
            }
            v
        };
        for k in [0, 1, 5] {
            let dense = inner(&embed(0), &apply_fermion(&op, &embed(k), 8)).re;
            assert!((r.one_body_transition(0, k, &m) - dense).abs() < 1e-12);
        }
    }

    #[test]
    fn h4_and_lih_references() {
        let refs: serde_json::Value = serde_json::from_str(include_str!("../../tests/data/references.json")).unwrap();
        let r = casci(&load("h4_twisted_sto3g"), 0, 4, 4);
        let e = refs["h4_twisted_sto3g"]["fci_energy"].as_f64().unwrap();
        assert!((r.energies[0] - e).abs() < 1e-9, "{} {e}", r.energies[0]);
        // CASCI in HF orbitals lies above CASSCF
        let r = casci(&load("lih_sto3g"), 1, 2, 2);
        let e = refs["lih_sto3g"]["casscf_energy"].as_f64().unwrap();
        assert!(r.energies[0] > e - 1e-10);
    }
}
