//! Working-equation matrices from explicit vectors in the full Fock space.
//!
//! Operators act through their second-quantized form with their own ladder
//! signs; no qubit mapping is involved.

use num_complex::Complex64;

use super::inner;
use crate::active_space::ActiveSpaceSpec;
use crate::fermion::FermionOperator;
use crate::integrals::{build_hamiltonian, MolecularIntegrals};
use crate::qeom::{assemble, EomBasis, EomMatrices, OperatorKind, Slot, Terms};

/// `|inactive doubly occupied> (x) |active>` on the full register.
pub fn embed_state(spec: &ActiveSpaceSpec, active: &[Complex64]) -> Vec<Complex64> {
    let n = spec.n_qubits();
    let na = spec.n_active_qubits();
    assert_eq!(active.len(), 1 << na);
    let mut out_bits = 0usize;
    for q in 0..spec.active_offset() {
        out_bits |= 1 << (n - 1 - q);
    }
    let shift = n - spec.active_offset() - na;
    let mut v = vec![Complex64::new(0.0, 0.0); 1 << n];
    for (a, c) in active.iter().enumerate() {
        v[out_bits | (a << shift)] = *c;
    }
    v
}

/// `op |v>` over `n` spin orbitals, orbital `m` at bit `n - 1 - m`.
pub fn apply_fermion(op: &FermionOperator, v: &[Complex64], n: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); v.len()];
    let support: Vec<usize> = (0..v.len()).filter(|&b| v[b] != Complex64::new(0.0, 0.0)).collect();
    for (c, ladders) in op.terms() {
        'det: for &b in &support {
            let mut d = b;
            let mut sign = 1.0;
            for &(m, dagger) in ladders.iter().rev() {
                let bit = 1usize << (n - 1 - m);
                if (d & bit != 0) == dagger {
                    continue 'det;
                }
                let above = !((bit << 1) - 1);
                if (d & above).count_ones() % 2 == 1 {
                    sign = -sign;
                }
                d ^= bit;
            }
            out[d] += c * sign * v[b];
        }
    }
    out
}

/// `A`, `B`, `Sigma`, `Delta` by dense vector algebra on the same term tables.
pub fn dense_eom_matrices(basis: &EomBasis, mi: &MolecularIntegrals, active_state: &[Complex64]) -> EomMatrices {
    let n = basis.spec.n_qubits();
    let psi = embed_state(&basis.spec, active_state);
    let h = build_hamiltonian(mi);
    let ops: Vec<FermionOperator> = basis.ops.iter().map(|o| o.fermion.clone()).collect();
    let ops_dag: Vec<FermionOperator> = ops.iter().map(|o| o.adjoint()).collect();
    let ap = |o: &FermionOperator, v: &[Complex64]| apply_fermion(o, v, n);

    let h_psi = ap(&h, &psi);
    let o_psi: Vec<_> = ops.iter().map(|o| ap(o, &psi)).collect();
    let od_psi: Vec<_> = ops_dag.iter().map(|o| ap(o, &psi)).collect();
    let h_o_psi: Vec<_> = o_psi.iter().map(|v| ap(&h, v)).collect();
    let h_od_psi: Vec<_> = od_psi.iter().map(|v| ap(&h, v)).collect();
    let o_h_psi: Vec<_> = ops.iter().map(|o| ap(o, &h_psi)).collect();
    let od_h_psi: Vec<_> = ops_dag.iter().map(|o| ap(o, &h_psi)).collect();

    let kinds: Vec<OperatorKind> = basis.ops.iter().map(|o| o.kind).collect();
    let eval = |t: Terms, i: usize, j: usize| -> Complex64 {
        // F|psi> for a single slot
        let single = |s: Slot| -> &Vec<Complex64> {
            match s {
                Slot::H => &h_psi,
                Slot::I => &o_psi[i],
                Slot::Id => &od_psi[i],
                Slot::J => &o_psi[j],
                Slot::Jd => &od_psi[j],
            }
        };
        let dagger = |s: Slot| match s {
            Slot::H => Slot::H,
            Slot::I => Slot::Id,
            Slot::Id => Slot::I,
            Slot::J => Slot::Jd,
            Slot::Jd => Slot::J,
        };
        let op = |s: Slot| -> &FermionOperator {
            match s {
                Slot::H => &h,
                Slot::I => &ops[i],
                Slot::Id => &ops_dag[i],
                Slot::J => &ops[j],
                Slot::Jd => &ops_dag[j],
            }
        };
        let pair = |a: Slot, b: Slot| -> Vec<Complex64> {
            match (a, b) {
                (Slot::H, Slot::I) => h_o_psi[i].clone(),
                (Slot::H, Slot::Id) => h_od_psi[i].clone(),
                (Slot::H, Slot::J) => h_o_psi[j].clone(),
                (Slot::H, Slot::Jd) => h_od_psi[j].clone(),
                (Slot::I, Slot::H) => o_h_psi[i].clone(),
                (Slot::Id, Slot::H) => od_h_psi[i].clone(),
                (Slot::J, Slot::H) => o_h_psi[j].clone(),
                (Slot::Jd, Slot::H) => od_h_psi[j].clone(),
                _ => ap(op(a), single(b)),
            }
        };
        let mut acc = Complex64::new(0.0, 0.0);
        for (c, slots) in t {
            let bra = single(dagger(slots[0]));
            let v = match slots.len() {
                2 => inner(bra, single(slots[1])),
                3 => inner(bra, &pair(slots[1], slots[2])),
                _ => unreachable!("working equations have two or three factors"),
            };
            acc += *c * v;
        }
        acc
    };
    assemble(&kinds, eval)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::active_space::{active_integrals, ActiveSpaceSpec};
    use crate::ansatz::build_uccsd_ansatz;
    use crate::fermion::jordan_wigner;
    use crate::integrals::read_fcidump;
    use crate::oracle::casci;
    use crate::qeom::{build_basis, PauliContext};
    use crate::statevector::Statevector;

    fn load(name: &str) -> MolecularIntegrals {
        let p = format!("{}/tests/data/{}.fcidump", env!("CARGO_MANIFEST_DIR"), name);
        read_fcidump(std::path::Path::new(&p)).unwrap()
    }

    fn compare(mi: &MolecularIntegrals, spec: ActiveSpaceSpec, active: Vec<Complex64>) {
        let basis = build_basis(&spec).unwrap();
        let hq = jordan_wigner(&build_hamiltonian(mi), spec.n_qubits()).unwrap();
        let ctx = PauliContext::new(&basis, &hq, Statevector::from_amplitudes(active.clone()).unwrap());
        let p = ctx.matrices();
        let d = dense_eom_matrices(&basis, mi, &active);
        let diff = |x: &nalgebra::DMatrix<Complex64>, y: &nalgebra::DMatrix<Complex64>| {
            (x - y).iter().fold(0.0f64, |a, v| a.max(v.norm()))
        };
        assert!(diff(&p.a, &d.a) < 1e-10, "A {}", diff(&p.a, &d.a));
        assert!(diff(&p.b, &d.b) < 1e-10, "B {}", diff(&p.b, &d.b));
        assert!(diff(&p.sigma, &d.sigma) < 1e-10);
        assert!(diff(&p.delta, &d.delta) < 1e-10);
        assert!((p.b_raw_asymmetry - d.b_raw_asymmetry).abs() < 1e-10);
    }

    fn ci_active(mi: &MolecularIntegrals, spec: &ActiveSpaceSpec) -> Vec<Complex64> {
        let act = active_integrals(mi, spec).unwrap();
        let r = casci(&act, 0, spec.n_active, spec.n_active_electrons);
        r.active_vector(0, 0, spec.n_active)
    }

    #[test]
    fn embedding_places_active_block() {
        let spec = ActiveSpaceSpec::new(1, 1, 1, 2).unwrap();
        let mut a = vec![Complex64::new(0.0, 0.0); 4];
        a[3] = Complex64::new(1.0, 0.0);
        let v = embed_state(&spec, &a);
        assert_eq!(v.iter().position(|c| c.re == 1.0), Some(0b111100));
    }

    #[test]
    fn h2_full_space_pauli_matches_dense() {
        let mi = load("h2_sto3g");
        let spec = ActiveSpaceSpec::from_counts(2, 2, 2, 2).unwrap();
        compare(&mi, spec, ci_active(&mi, &spec));
    }

    #[test]
    fn lih_frozen_core_pauli_matches_dense() {
        let mi = load("lih_sto3g");
        let spec = ActiveSpaceSpec::from_counts(mi.n_spatial(), 4, 2, 2).unwrap();
        compare(&mi, spec, ci_active(&mi, &spec));
        // a non-eigenstate exercises the gradient-carrying terms
        let ans = build_uccsd_ansatz(&spec).unwrap();
        let theta: Vec<f64> = (0..ans.n_parameters).map(|k| 0.1 + 0.07 * k as f64).collect();
        let mut s = crate::statevector::prepare_reference(&spec);
        ans.apply(&mut s, &theta).unwrap();
        compare(&mi, spec, s.amplitudes().to_vec());
    }

    #[test]
    fn h4_pauli_matches_dense() {
        let mi = load("h4_twisted_sto3g");
        let spec = ActiveSpaceSpec::from_counts(4, 4, 4, 4).unwrap();
        compare(&mi, spec, ci_active(&mi, &spec));
    }
}
