//! Energy `E(kappa, theta)`, its gradients, and the two-stage VQE / oo-VQE protocol.

use nalgebra::DMatrix;
use rayon::prelude::*;

use crate::active_space::{active_hamiltonian, active_integrals, full_hamiltonian, project, ActiveSpaceSpec};
use crate::ansatz::Ansatz;
use crate::error::{Error, Result};
use crate::integrals::{mp2_natural_orbitals, MolecularIntegrals, OrbitalRotation};
use crate::optimizer::{inf_norm, minimize, BfgsOptions, Objective, TracePoint};
use crate::pauli::PauliSum;
use crate::rdm::Rdms;
use crate::statevector::{prepare_reference, Statevector};

/// Central finite-difference step for orbital-rotation gradients.
pub const KAPPA_FD_STEP: f64 = 1e-5;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StartOrbitals {
    AsGiven,
    Mp2Natural,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VqeOptions {
    pub bfgs: BfgsOptions,
    pub kappa_fd_step: f64,
    /// Skip the orbital-optimization stage.
    pub freeze_orbitals: bool,
}

impl Default for VqeOptions {
    fn default() -> Self {
        VqeOptions {
            bfgs: BfgsOptions::default(),
            kappa_fd_step: KAPPA_FD_STEP,
            freeze_orbitals: false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct VqeResult {
    pub theta_opt: Vec<f64>,
    pub kappa_opt: OrbitalRotation,
    pub energy: f64,
    pub stage1_energy: f64,
    pub gradient_inf_norm: f64,
    pub iterations: usize,
    pub converged: bool,
    pub trace: Vec<TracePoint>,
    /// Starting orbitals in the input basis (rows).
    pub start_transform: DMatrix<f64>,
    /// Final orbitals `exp(kappa) * start_transform` in the input basis (rows).
    pub orbitals: DMatrix<f64>,
    /// Integrals in the final orbital basis.
    pub integrals: MolecularIntegrals,
    pub state: Statevector,
}

/// Energy surface over `(theta, kappa)` for fixed starting integrals.
pub struct VqeProblem<'a> {
    pub mi: &'a MolecularIntegrals,
    pub spec: ActiveSpaceSpec,
    pub ansatz: &'a Ansatz,
}

impl<'a> VqeProblem<'a> {
    pub fn new(mi: &'a MolecularIntegrals, spec: ActiveSpaceSpec, ansatz: &'a Ansatz) -> Result<Self> {
        if mi.n_spatial() != spec.n_spatial() {
            return Err(Error::DimensionMismatch {
                expected: spec.n_spatial(),
                got: mi.n_spatial(),
            });
        }
        if mi.n_electrons != spec.n_electrons() {
            return Err(Error::InvalidActiveSpace(format!(
                "active space holds {} electrons, integrals have {}",
                spec.n_electrons(),
                mi.n_electrons
            )));
        }
        if ansatz.n_qubits != spec.n_active_qubits() {
            return Err(Error::SizeMismatch {
                left: ansatz.n_qubits,
                right: spec.n_active_qubits(),
            });
        }
        Ok(VqeProblem { mi, spec, ansatz })
    }

    pub fn zero_rotation(&self) -> OrbitalRotation {
        OrbitalRotation::zero(self.spec.n_spatial(), self.spec.kappa_pairs())
    }

    pub fn rotation(&self, kappa: &[f64]) -> Result<OrbitalRotation> {
        OrbitalRotation::from_parameters(self.spec.n_spatial(), self.spec.kappa_pairs(), kappa)
    }

    pub fn state(&self, theta: &[f64]) -> Result<Statevector> {
        let mut s = prepare_reference(&self.spec);
        self.ansatz.apply(&mut s, theta)?;
        Ok(s)
    }

    fn rotated(&self, kappa: &OrbitalRotation) -> Result<MolecularIntegrals> {
        if kappa.is_zero() {
            Ok(self.mi.clone())
        } else {
            self.mi.rotate(kappa)
        }
    }

    /// Active-register Hamiltonian in the `kappa`-rotated basis.
    pub fn hamiltonian(&self, kappa: &OrbitalRotation) -> Result<PauliSum> {
        active_hamiltonian(&self.rotated(kappa)?, &self.spec)
    }

    /// `E(kappa, theta)` through frozen-core active integrals and the state's RDMs.
    pub fn energy(&self, theta: &[f64], kappa: &OrbitalRotation) -> Result<f64> {
        let s = self.state(theta)?;
        let act = active_integrals(&self.rotated(kappa)?, &self.spec)?;
        Ok(Rdms::new(&s).energy(&act))
    }

    /// `E(kappa, theta)` by rotating, mapping the full Hamiltonian to qubits and
    /// projecting out the inactive and virtual qubits. Slow; kept as a reference path.
    pub fn energy_by_projection(&self, theta: &[f64], kappa: &OrbitalRotation) -> Result<f64> {
        let s = self.state(theta)?;
        let h = project(&full_hamiltonian(&self.rotated(kappa)?)?, &self.spec)?;
        s.expectation_real(&h)
    }

    /// Parameter-shift gradient: each Pauli rotation shifted by `+-pi/2`, summed per parameter.
    pub fn gradient_theta(&self, theta: &[f64], kappa: &OrbitalRotation) -> Result<Vec<f64>> {
        let h = self.hamiltonian(kappa)?;
        self.gradient_theta_with(theta, &h)
    }

    pub(crate) fn gradient_theta_with(&self, theta: &[f64], h: &PauliSum) -> Result<Vec<f64>> {
        let gens = &self.ansatz.generators;
        let shifted = |k: usize, sh: f64| -> Result<f64> {
            let mut s = prepare_reference(&self.spec);
            self.ansatz.apply_shifted(&mut s, theta, k, sh)?;
            s.expectation_real(h)
        };
        let h2 = std::f64::consts::FRAC_PI_2;
        let parts: Vec<Result<f64>> = (0..gens.len())
            .into_par_iter()
            .map(|k| Ok(gens[k].prefactor * 0.5 * (shifted(k, h2)? - shifted(k, -h2)?)))
            .collect();
        let mut g = vec![0.0; self.ansatz.n_parameters];
        for (k, d) in parts.into_iter().enumerate() {
            g[gens[k].parameter_index] += d?;
        }
        Ok(g)
    }

    /// Central finite differences over the free rotation parameters.
    pub fn gradient_kappa(&self, theta: &[f64], kappa: &OrbitalRotation, step: f64) -> Result<Vec<f64>> {
        let rdm = Rdms::new(&self.state(theta)?);
        self.gradient_kappa_with(&rdm, kappa, step)
    }

    fn gradient_kappa_with(&self, rdm: &Rdms, kappa: &OrbitalRotation, step: f64) -> Result<Vec<f64>> {
        let k0 = kappa.parameters();
        let e_at = |k: usize, d: f64| -> Result<f64> {
            let mut k1 = k0.clone();
            k1[k] += d;
            let rot = self.rotation(&k1)?;
            Ok(rdm.energy(&active_integrals(&self.mi.rotate(&rot)?, &self.spec)?))
        };
        (0..k0.len())
            .into_par_iter()
            .map(|k| Ok((e_at(k, step)? - e_at(k, -step)?) / (2.0 * step)))
            .collect()
    }
}

struct ThetaObjective<'p, 'a> {
    p: &'p VqeProblem<'a>,
    h: PauliSum,
}

impl Objective for ThetaObjective<'_, '_> {
    fn value(&self, x: &[f64]) -> Result<f64> {
        self.p.state(x)?.expectation_real(&self.h)
    }
    fn gradient(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.p.gradient_theta_with(x, &self.h)
    }
}

struct JointObjective<'p, 'a> {
    p: &'p VqeProblem<'a>,
    step: f64,
}

impl JointObjective<'_, '_> {
    fn split<'x>(&self, x: &'x [f64]) -> Result<(&'x [f64], OrbitalRotation)> {
        let (t, k) = x.split_at(self.p.ansatz.n_parameters);
        Ok((t, self.p.rotation(k)?))
    }
}

impl Objective for JointObjective<'_, '_> {
    fn value(&self, x: &[f64]) -> Result<f64> {
        let (t, k) = self.split(x)?;
        self.p.energy(t, &k)
    }
    fn gradient(&self, x: &[f64]) -> Result<Vec<f64>> {
        let (t, k) = self.split(x)?;
        let mut g = self.p.gradient_theta(t, &k)?;
        let rdm = Rdms::new(&self.p.state(t)?);
        g.extend(self.p.gradient_kappa_with(&rdm, &k, self.step)?);
        Ok(g)
    }
}

/// `E(kappa, theta)` for integrals in their given basis.
pub fn energy(mi: &MolecularIntegrals, spec: &ActiveSpaceSpec, ansatz: &Ansatz, theta: &[f64], kappa: &OrbitalRotation) -> Result<f64> {
    VqeProblem::new(mi, *spec, ansatz)?.energy(theta, kappa)
}

/// Stage 1 optimizes `theta` at `kappa = 0` from zero angles; stage 2 optimizes
/// `(theta, kappa)` jointly from the stage-1 angles.
pub fn optimize(
    mi: &MolecularIntegrals,
    spec: &ActiveSpaceSpec,
    ansatz: &Ansatz,
    start: StartOrbitals,
    opts: &VqeOptions,
) -> Result<VqeResult> {
    let (start_mi, start_transform) = match start {
        StartOrbitals::AsGiven => (mi.clone(), DMatrix::identity(mi.n_spatial(), mi.n_spatial())),
        StartOrbitals::Mp2Natural => {
            let no = mp2_natural_orbitals(mi)?;
            (no.integrals, no.transform)
        }
    };
    let p = VqeProblem::new(&start_mi, *spec, ansatz)?;
    let zero = p.zero_rotation();

    log::info!("vqe stage 1: {} parameters", ansatz.n_parameters);
    let obj = ThetaObjective {
        p: &p,
        h: p.hamiltonian(&zero)?,
    };
    let s1 = minimize(&obj, &vec![0.0; ansatz.n_parameters], &opts.bfgs)?;
    let mut trace = s1.trace.clone();
    let n_kappa = spec.kappa_pairs().len();

    let (theta, kappa, energy, gnorm, iterations, converged) = if n_kappa == 0 || opts.freeze_orbitals {
        (s1.x.clone(), zero, s1.value, s1.gradient_inf_norm, s1.iterations, s1.converged)
    } else {
        log::info!("vqe stage 2: {} + {} parameters", ansatz.n_parameters, n_kappa);
        let joint = JointObjective {
            p: &p,
            step: opts.kappa_fd_step,
        };
        let mut x0 = s1.x.clone();
        x0.extend(std::iter::repeat_n(0.0, n_kappa));
        let s2 = minimize(&joint, &x0, &opts.bfgs)?;
        let off = s1.iterations;
        trace.extend(s2.trace.iter().skip(1).map(|t| TracePoint {
            iteration: t.iteration + off,
            ..t.clone()
        }));
        let (t, k) = s2.x.split_at(ansatz.n_parameters);
        (
            t.to_vec(),
            p.rotation(k)?,
            s2.value,
            inf_norm(&s2.gradient),
            off + s2.iterations,
            s2.converged,
        )
    };
    if !converged {
        log::warn!("vqe not converged: |g| = {:.3e} after {} iterations", gnorm, iterations);
    }
    let orbitals = kappa.unitary() * &start_transform;
    let integrals = start_mi.rotate(&kappa)?;
    let state = p.state(&theta)?;
    Ok(VqeResult {
        theta_opt: theta,
        kappa_opt: kappa,
        energy,
        stage1_energy: s1.value,
        gradient_inf_norm: gnorm,
        iterations,
        converged,
        trace,
        start_transform,
        orbitals,
        integrals,
        state,
    })
}
