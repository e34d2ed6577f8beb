//! Dense statevector of the active register.
//!
//! Qubit `q` is bit `n - 1 - q` of the basis index, so qubit 0 is the most
//! significant bit and `|1100>` is index 12.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::active_space::ActiveSpaceSpec;
use crate::error::{Error, Result};
use crate::pauli::{i_pow, PauliString, PauliSum};

/// Tolerance on the imaginary part of a Hermitian expectation value.
pub const HERMITIAN_IM_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct Statevector {
    n_qubits: usize,
    amps: Vec<Complex64>,
}

/// Masks of a string in basis-index bit order.
#[inline]
pub(crate) fn index_masks(n: usize, x: u64, z: u64) -> (usize, usize) {
    if n == 0 {
        return (0, 0);
    }
    let shift = 64 - n as u32;
    ((x.reverse_bits() >> shift) as usize, (z.reverse_bits() >> shift) as usize)
}

impl Statevector {
    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        if n_qubits > 30 {
            return Err(Error::TooManyQubits(n_qubits));
        }
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(Error::IndexOutOfRange {
                index,
                n_modes: dim,
            });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(Statevector { n_qubits, amps })
    }

    /// Wrap raw amplitudes. The length must be a power of two; no normalization is applied.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let n = amps.len().trailing_zeros() as usize;
        if amps.len() != 1usize << n {
            return Err(Error::DimensionMismatch {
                expected: 1usize << (n + 1),
                got: amps.len(),
            });
        }
        Ok(Statevector { n_qubits: n, amps })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn inner(&self, other: &Statevector) -> Complex64 {
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }

    fn check(&self, p: &PauliString) -> Result<()> {
        if p.n_qubits() != self.n_qubits {
            return Err(Error::SizeMismatch {
                left: self.n_qubits,
                right: p.n_qubits(),
            });
        }
        Ok(())
    }

    /// `P |psi>`.
    pub fn apply_pauli(&self, p: &PauliString) -> Result<Statevector> {
        self.check(p)?;
        let (xm, zm) = index_masks(self.n_qubits, p.x_mask(), p.z_mask());
        let ph = i_pow(p.n_y());
        let mut out = vec![Complex64::new(0.0, 0.0); self.amps.len()];
        for (b, a) in self.amps.iter().enumerate() {
            let s = if (b & zm).count_ones() % 2 == 1 { -ph } else { ph };
            out[b ^ xm] = s * a;
        }
        Ok(Statevector {
            n_qubits: self.n_qubits,
            amps: out,
        })
    }

    /// `exp(-i angle P / 2) |psi>`.
    pub fn apply_pauli_rotation(&mut self, p: &PauliString, angle: f64) -> Result<()> {
        self.check(p)?;
        let (xm, zm) = index_masks(self.n_qubits, p.x_mask(), p.z_mask());
        let c = (angle / 2.0).cos();
        // -i sin(angle/2) i^{n_y}
        let s = Complex64::new(0.0, -(angle / 2.0).sin()) * i_pow(p.n_y());
        let sign = |b: usize| if (b & zm).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
        if xm == 0 {
            for (b, a) in self.amps.iter_mut().enumerate() {
                *a *= c + s * sign(b);
            }
            return Ok(());
        }
        let hi = 1usize << (usize::BITS - 1 - xm.leading_zeros());
        for b in 0..self.amps.len() {
            if b & hi != 0 {
                continue;
            }
            let b2 = b ^ xm;
            let (u, v) = (self.amps[b], self.amps[b2]);
            // (P psi)[b2] = s_b psi[b], (P psi)[b] = s_b2 psi[b2]
            self.amps[b] = c * u + s * sign(b2) * v;
            self.amps[b2] = c * v + s * sign(b) * u;
        }
        Ok(())
    }

    /// `<psi|P|psi>`.
    pub fn pauli_expectation(&self, p: &PauliString) -> Complex64 {
        let (xm, zm) = index_masks(self.n_qubits, p.x_mask(), p.z_mask());
        let mut acc = Complex64::new(0.0, 0.0);
        for (b, a) in self.amps.iter().enumerate() {
            let v = self.amps[b ^ xm].conj() * a;
            if (b & zm).count_ones() % 2 == 1 {
                acc -= v;
            } else {
                acc += v;
            }
        }
        acc * i_pow(p.n_y())
    }

    /// `<psi|O|psi>` summed term by term in a fixed order.
    pub fn expectation(&self, op: &PauliSum) -> Result<Complex64> {
        if op.n_qubits() != self.n_qubits {
            return Err(Error::SizeMismatch {
                left: self.n_qubits,
                right: op.n_qubits(),
            });
        }
        let terms: Vec<(&PauliString, &Complex64)> = op.iter().collect();
        let vals: Vec<Complex64> = terms.par_iter().map(|(p, c)| **c * self.pauli_expectation(p)).collect();
        Ok(vals.into_iter().sum())
    }

    /// Real expectation value of a Hermitian operator.
    pub fn expectation_real(&self, op: &PauliSum) -> Result<f64> {
        let v = self.expectation(op)?;
        debug_assert!(
            v.im.abs() < HERMITIAN_IM_TOL * (1.0 + op.max_abs() * op.len() as f64),
            "imaginary expectation {}",
            v.im
        );
        Ok(v.re)
    }
}

/// Reference determinant with the lowest `n_active_electrons` active spin orbitals occupied.
pub fn prepare_reference(spec: &ActiveSpaceSpec) -> Statevector {
    let n = spec.n_active_qubits();
    let ne = spec.n_active_electrons;
    let idx = if n == 0 { 0 } else { ((1usize << ne) - 1) << (n - ne) };
    Statevector::basis(n, idx).expect("active register within simulator limits")
}
