//! Single-step Trotterized spin-adapted UCCSD.

use crate::active_space::ActiveSpaceSpec;
use crate::error::{Error, Result};
use crate::excitation::{singles_and_doubles, Excitation};
use crate::fermion::jordan_wigner;
use crate::pauli::PauliString;
use crate::statevector::Statevector;

#[derive(Clone, Debug, PartialEq)]
pub struct Generator {
    pub pauli: PauliString,
    pub parameter_index: usize,
    /// Rotation angle is `prefactor * theta[parameter_index]`.
    pub prefactor: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Ansatz {
    pub n_qubits: usize,
    pub generators: Vec<Generator>,
    pub n_parameters: usize,
    /// Excitation behind each parameter.
    pub excitations: Vec<Excitation>,
}

impl Ansatz {
    /// Ansatz with no parameters on `n_qubits`.
    pub fn empty(n_qubits: usize) -> Self {
        Ansatz {
            n_qubits,
            generators: Vec::new(),
            n_parameters: 0,
            excitations: Vec::new(),
        }
    }

    fn check(&self, state: &Statevector, theta: &[f64]) -> Result<()> {
        if theta.len() != self.n_parameters {
            return Err(Error::DimensionMismatch {
                expected: self.n_parameters,
                got: theta.len(),
            });
        }
        if state.n_qubits() != self.n_qubits {
            return Err(Error::SizeMismatch {
                left: state.n_qubits(),
                right: self.n_qubits,
            });
        }
        Ok(())
    }

    /// Apply all generators in order.
    pub fn apply(&self, state: &mut Statevector, theta: &[f64]) -> Result<()> {
        self.check(state, theta)?;
        for g in &self.generators {
            state.apply_pauli_rotation(&g.pauli, g.prefactor * theta[g.parameter_index])?;
        }
        Ok(())
    }

    /// Apply generators with one rotation angle shifted by `shift`.
    pub(crate) fn apply_shifted(&self, state: &mut Statevector, theta: &[f64], k: usize, shift: f64) -> Result<()> {
        self.check(state, theta)?;
        for (n, g) in self.generators.iter().enumerate() {
            let mut a = g.prefactor * theta[g.parameter_index];
            if n == k {
                a += shift;
            }
            state.apply_pauli_rotation(&g.pauli, a)?;
        }
        Ok(())
    }
}

/// UCCSD generators `exp(theta (T - T^dag))` for every spin-adapted single and
/// double inside the active space, split into commuting-order Pauli rotations.
pub fn build_uccsd_ansatz(spec: &ActiveSpaceSpec) -> Result<Ansatz> {
    if !spec.n_active_electrons.is_multiple_of(2) {
        return Err(Error::OpenShell(spec.n_active_electrons));
    }
    let n = spec.n_active_qubits();
    let no = spec.n_active_occupied();
    let occ: Vec<usize> = (0..no).collect();
    let unocc: Vec<usize> = (no..spec.n_active).collect();
    let excitations = singles_and_doubles(&occ, &unocc);
    let mut generators = Vec::new();
    for (k, ex) in excitations.iter().enumerate() {
        let t = ex.operator();
        let anti = t.add(&t.adjoint().scale((-1.0).into()));
        let s = jordan_wigner(&anti, n)?;
        // JW(T - T^dag) = sum_j i c_j P_j, and exp(i theta c P) = exp(-i (-2 c theta) P / 2)
        for (p, c) in s.iter() {
            debug_assert!(c.re.abs() < 1e-12);
            generators.push(Generator {
                pauli: *p,
                parameter_index: k,
                prefactor: -2.0 * c.im,
            });
        }
    }
    Ok(Ansatz {
        n_qubits: n,
        generators,
        n_parameters: excitations.len(),
        excitations,
    })
}
