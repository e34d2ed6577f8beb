//! Ingest, oo-VQE, qEOM, properties and spectrum in one call.

use std::time::Instant;

use crate::active_space::{full_hamiltonian, ActiveSpaceSpec};
use crate::ansatz::build_uccsd_ansatz;
use crate::error::Result;
use crate::integrals::{MolecularIntegrals, PropertyIntegrals, PropertyKind};
use crate::properties::{oscillator_strength, rotational_strength, MomentVectors};
use crate::qeom::{build_basis, solve, EomMatrices, EomSolution, PauliContext};
use crate::spectrum::{convolve, GridSpec, Spectrum, HARTREE_TO_EV};
use crate::vqe::{optimize, StartOrbitals, VqeOptions, VqeResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpectrumKind {
    /// Sticks are oscillator strengths.
    Absorption,
    /// Sticks are rotational strengths.
    Ecd,
}

#[derive(Clone, Debug)]
pub struct PipelineOptions {
    pub active_electrons: usize,
    pub active_orbitals: usize,
    pub start: StartOrbitals,
    pub vqe: VqeOptions,
    pub linear_dep_tol: f64,
    pub broadening_ev: f64,
    pub grid: GridSpec,
    pub spectrum_kind: SpectrumKind,
}

#[derive(Clone, Debug)]
pub struct ExcitedState {
    /// 1-based singlet index (`S1`, `S2`, ...).
    pub index: usize,
    pub energy: f64,
    pub energy_ev: f64,
    pub oscillator_strength: f64,
    pub rotational_strength: f64,
    pub electric: [f64; 3],
    pub magnetic: [f64; 3],
    pub norm_denominator: f64,
    /// Basis operator with the largest `|Z_I|`.
    pub dominant: String,
    /// `|Z_dom|^2 / sum_I |Z_I|^2`.
    pub dominant_weight: f64,
}

#[derive(Clone, Debug)]
pub struct EomDiagnostics {
    pub dim: usize,
    pub n_q: usize,
    pub n_discarded: usize,
    pub pairing_error: f64,
    pub a_hermiticity: f64,
    pub b_symmetry: f64,
    pub b_raw_asymmetry: f64,
    pub sigma_hermiticity: f64,
    pub delta_max: f64,
    pub sigma_qg_max: f64,
    /// `|<[H, O_I]>|` per basis operator.
    pub gradient: Vec<f64>,
    pub gradient_max: f64,
    /// Set when `gradient_max` exceeds ten times the VQE gradient tolerance.
    pub gradient_flagged: bool,
    pub max_moment_imaginary: f64,
}

#[derive(Clone, Debug)]
pub struct PipelineOutput {
    pub spec: ActiveSpaceSpec,
    pub n_parameters: usize,
    pub vqe: VqeResult,
    pub labels: Vec<String>,
    pub matrices: EomMatrices,
    pub solution: EomSolution,
    pub diagnostics: EomDiagnostics,
    pub states: Vec<ExcitedState>,
    pub spectrum: Spectrum,
    /// `(stage, seconds)`.
    pub wall_times: Vec<(&'static str, f64)>,
}

/// Property integrals default to zero when absent.
pub fn run_pipeline(
    mi: &MolecularIntegrals,
    dipole: Option<&PropertyIntegrals>,
    magnetic: Option<&PropertyIntegrals>,
    opts: &PipelineOptions,
) -> Result<PipelineOutput> {
    let mut wall = Vec::new();
    let n = mi.n_spatial();
    let spec = ActiveSpaceSpec::from_counts(n, mi.n_electrons, opts.active_electrons, opts.active_orbitals)
        .map_err(|e| e.at_stage("active space"))?;

    let t = Instant::now();
    let ansatz = build_uccsd_ansatz(&spec).map_err(|e| e.at_stage("ansatz"))?;
    let vqe = optimize(mi, &spec, &ansatz, opts.start, &opts.vqe).map_err(|e| e.at_stage("vqe"))?;
    wall.push(("vqe", t.elapsed().as_secs_f64()));
    log::info!("vqe energy {:.10} (converged: {})", vqe.energy, vqe.converged);

    let t = Instant::now();
    let eom = |e: crate::Error| e.at_stage("qeom");
    let basis = build_basis(&spec).map_err(eom)?;
    let h = full_hamiltonian(&vqe.integrals).map_err(eom)?;
    let ctx = PauliContext::new(&basis, &h, vqe.state.clone());
    let matrices = ctx.matrices();
    let gradient = ctx.gradient_diagnostic();
    let solution = solve(&matrices, opts.linear_dep_tol).map_err(eom)?;
    wall.push(("qeom", t.elapsed().as_secs_f64()));
    log::info!("qeom: {} operators, {} states", basis.len(), solution.states.len());

    let t = Instant::now();
    let prop = |p: Option<&PropertyIntegrals>, kind| -> Result<PropertyIntegrals> {
        match p {
            Some(p) => p.transform(&vqe.orbitals),
            None => Ok(PropertyIntegrals::zeros(kind, n)),
        }
    };
    let pe = |e: crate::Error| e.at_stage("properties");
    let dip = prop(dipole, PropertyKind::ElectricDipole).map_err(pe)?;
    let mag = prop(magnetic, PropertyKind::MagneticDipole).map_err(pe)?;
    let mv = MomentVectors::new(&ctx, &dip, &mag).map_err(pe)?;
    let labels = basis.labels();
    let mut states = Vec::with_capacity(solution.states.len());
    let mut max_im = 0.0f64;
    for (k, st) in solution.states.iter().enumerate() {
        let tm = mv.moments(&matrices, st).map_err(pe)?;
        max_im = max_im.max(tm.max_imaginary);
        let (dom, w) = st
            .z
            .iter()
            .enumerate()
            .fold((0, 0.0), |a, (i, z)| if z.norm() > a.1 { (i, z.norm()) } else { a });
        states.push(ExcitedState {
            index: k + 1,
            energy: st.energy,
            energy_ev: st.energy * HARTREE_TO_EV,
            oscillator_strength: oscillator_strength(st.energy, &tm.electric),
            rotational_strength: rotational_strength(&tm.electric, &tm.magnetic),
            electric: tm.electric,
            magnetic: tm.magnetic,
            norm_denominator: tm.norm_denominator,
            dominant: labels[dom].clone(),
            dominant_weight: w * w / st.z.iter().map(|z| z.norm_sqr()).sum::<f64>(),
        });
    }
    wall.push(("properties", t.elapsed().as_secs_f64()));

    let sticks: Vec<(f64, f64)> = states
        .iter()
        .map(|s| {
            let v = match opts.spectrum_kind {
                SpectrumKind::Absorption => s.oscillator_strength,
                SpectrumKind::Ecd => s.rotational_strength,
            };
            (s.energy_ev, v)
        })
        .collect();
    let spectrum = convolve(&sticks, opts.broadening_ev, &opts.grid).map_err(|e| e.at_stage("spectrum"))?;

    let gradient_max = gradient.iter().copied().fold(0.0, f64::max);
    let gradient_flagged = gradient_max > 10.0 * opts.vqe.bfgs.gtol;
    if gradient_flagged {
        log::warn!("qeom gradient diagnostic {:.3e} exceeds ten times the VQE tolerance", gradient_max);
    }
    let diagnostics = EomDiagnostics {
        dim: matrices.dim(),
        n_q: matrices.n_q,
        n_discarded: solution.n_discarded,
        pairing_error: solution.pairing_error,
        a_hermiticity: matrices.a_hermiticity(),
        b_symmetry: matrices.b_symmetry(),
        b_raw_asymmetry: matrices.b_raw_asymmetry,
        sigma_hermiticity: matrices.sigma_hermiticity(),
        delta_max: matrices.delta_max(),
        sigma_qg_max: matrices.sigma_qg_max(),
        gradient,
        gradient_max,
        gradient_flagged,
        max_moment_imaginary: max_im,
    };
    Ok(PipelineOutput {
        spec,
        n_parameters: ansatz.n_parameters,
        vqe,
        labels,
        matrices,
        solution,
        diagnostics,
        states,
        spectrum,
        wall_times: wall,
    })
}
