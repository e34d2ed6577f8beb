//! Spin-summed reduced density matrices of an active-register state.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::integrals::MolecularIntegrals;
use crate::statevector::Statevector;

/// Apply `a_p` (or `a_p^dag` when `dagger`) to basis index `b` of an `n`-mode register.
#[inline]
pub(crate) fn ladder(n: usize, p: usize, dagger: bool, b: usize) -> Option<(usize, f64)> {
    let bit = 1usize << (n - 1 - p);
    if (b & bit != 0) == dagger {
        return None;
    }
    // modes below p sit in the higher bits
    let below = !((bit << 1) - 1) & ((1usize << n) - 1);
    let sign = if (b & below).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
    Some((b ^ bit, sign))
}

/// `D[t][u] = sum_s <a+_{ts} a_{us}>` and
/// `P[t,u,v,w] = sum_{s,s'} <a+_{ts} a+_{vs'} a_{ws'} a_{us}>`, both real parts.
#[derive(Clone, Debug)]
pub struct Rdms {
    pub n: usize,
    pub one: DMatrix<f64>,
    pub two: Vec<f64>,
}

impl Rdms {
    pub fn new(state: &Statevector) -> Self {
        let nq = state.n_qubits();
        let n = nq / 2;
        let amps = state.amplitudes();
        let mut one = DMatrix::zeros(n, n);
        let mut two = vec![0.0; n * n * n * n];
        for (b, &a) in amps.iter().enumerate() {
            if a.norm_sqr() == 0.0 {
                continue;
            }
            for q in 0..nq {
                let Some((b1, s1)) = ladder(nq, q, false, b) else { continue };
                for p in 0..nq {
                    if p % 2 != q % 2 {
                        continue;
                    }
                    if let Some((b2, s2)) = ladder(nq, p, true, b1) {
                        one[(p / 2, q / 2)] += (amps[b2].conj() * a * s1 * s2).re;
                    }
                }
                for s in 0..nq {
                    let Some((b2, s2)) = ladder(nq, s, false, b1) else { continue };
                    for r in (s % 2..nq).step_by(2) {
                        let Some((b3, s3)) = ladder(nq, r, true, b2) else { continue };
                        for p in (q % 2..nq).step_by(2) {
                            let Some((b4, s4)) = ladder(nq, p, true, b3) else { continue };
                            let v: Complex64 = amps[b4].conj() * a * (s1 * s2 * s3 * s4);
                            let (p, q, r, s) = (p / 2, q / 2, r / 2, s / 2);
                            two[((p * n + q) * n + r) * n + s] += v.re;
                        }
                    }
                }
            }
        }
        Rdms { n, one, two }
    }

    pub fn two(&self, t: usize, u: usize, v: usize, w: usize) -> f64 {
        let n = self.n;
        self.two[((t * n + u) * n + v) * n + w]
    }

    /// `<H>` for active-space integrals (core energy in `e_nuc`).
    pub fn energy(&self, act: &MolecularIntegrals) -> f64 {
        let n = self.n;
        let mut e = act.e_nuc;
        for t in 0..n {
            for u in 0..n {
                e += act.h[(t, u)] * self.one[(t, u)];
            }
        }
        let g = act.g.as_slice();
        let two: f64 = g.iter().zip(&self.two).map(|(a, b)| a * b).sum();
        e + 0.5 * two
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::active_space::{active_hamiltonian, active_integrals, ActiveSpaceSpec};
    use crate::ansatz::build_uccsd_ansatz;
    use crate::statevector::prepare_reference;

    #[test]
    fn energy_matches_pauli_expectation() {
        let p = format!("{}/tests/data/lih_sto3g.fcidump", env!("CARGO_MANIFEST_DIR"));
        let mi = crate::integrals::read_fcidump(std::path::Path::new(&p)).unwrap();
        let spec = ActiveSpaceSpec::from_counts(6, 4, 2, 3).unwrap();
        let a = build_uccsd_ansatz(&spec).unwrap();
        let mut s = prepare_reference(&spec);
        let theta: Vec<f64> = (0..a.n_parameters).map(|k| 0.1 * (k as f64 + 1.0).sin()).collect();
        a.apply(&mut s, &theta).unwrap();
        let h = active_hamiltonian(&mi, &spec).unwrap();
        let r = Rdms::new(&s);
        let e1 = s.expectation(&h).unwrap().re;
        let e2 = r.energy(&active_integrals(&mi, &spec).unwrap());
        assert!((e1 - e2).abs() < 1e-12, "{e1} {e2}");
        assert!((r.one.trace() - 2.0).abs() < 1e-12);
    }
}
