//! `results.json` and `manifest.json` bodies.

use serde_json::{json, Value};

use super::config::RunConfig;
use crate::pipeline::PipelineOutput;
use crate::spectrum::HARTREE_TO_EV;

/// Bumped on any change to the layout of `results.json`.
pub const SCHEMA_VERSION: u32 = 1;

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values always serialize");
    s.push('\n');
    s
}

/// Deterministic: depends only on the pipeline numbers, never on timing.
pub fn results_json(out: &PipelineOutput) -> String {
    let v = &out.vqe;
    let d = &out.diagnostics;
    let spec = &out.spec;
    let states: Vec<Value> = out
        .states
        .iter()
        .map(|s| {
            json!({
                "label": format!("S{}", s.index),
                "energy_hartree": s.energy,
                "energy_ev": s.energy_ev,
                "oscillator_strength": s.oscillator_strength,
                "rotational_strength": s.rotational_strength,
                "transition_dipole": s.electric,
                "magnetic_transition_dipole": s.magnetic,
                "norm_denominator": s.norm_denominator,
                "dominant_operator": s.dominant,
                "dominant_weight": s.dominant_weight,
            })
        })
        .collect();
    let trace: Vec<Value> = v
        .trace
        .iter()
        .map(|t| json!({"iteration": t.iteration, "energy": t.value, "gradient_inf_norm": t.gradient_inf_norm}))
        .collect();
    let gradient: Vec<Value> = out
        .labels
        .iter()
        .zip(&d.gradient)
        .map(|(l, g)| json!({"operator": l, "value": g}))
        .collect();
    let body = json!({
        "schema_version": SCHEMA_VERSION,
        "units": {"energy": "hartree", "energy_ev_factor": HARTREE_TO_EV, "moments": "atomic"},
        "active_space": {
            "inactive": spec.n_inactive,
            "active": spec.n_active,
            "virtual": spec.n_virtual,
            "active_electrons": spec.n_active_electrons,
            "qubits": spec.n_qubits(),
            "active_qubits": spec.n_active_qubits(),
        },
        "ground_state": {
            "energy_hartree": v.energy,
            "stage1_energy_hartree": v.stage1_energy,
            "converged": v.converged,
            "iterations": v.iterations,
            "gradient_inf_norm": v.gradient_inf_norm,
            "n_theta": out.n_parameters,
            "n_kappa": v.kappa_opt.free_pairs().len(),
            "theta": v.theta_opt,
            "kappa": v.kappa_opt.parameters(),
            "trace": trace,
        },
        "qeom": {
            "dimension": d.dim,
            "n_q": d.n_q,
            "operators": out.labels,
            "n_discarded": d.n_discarded,
            "pairing_error": d.pairing_error,
            "a_hermiticity": d.a_hermiticity,
            "b_symmetry": d.b_symmetry,
            "b_raw_asymmetry": d.b_raw_asymmetry,
            "sigma_hermiticity": d.sigma_hermiticity,
            "delta_max": d.delta_max,
            "sigma_qg_max": d.sigma_qg_max,
            "max_moment_imaginary": d.max_moment_imaginary,
            "gradient_max": d.gradient_max,
            "gradient_flagged": d.gradient_flagged,
            "gradient": gradient,
        },
        "states": states,
        "spectrum": {
            "sticks": out.spectrum.sticks.iter().map(|(e, s)| json!([e, s])).collect::<Vec<_>>(),
        },
    });
    pretty(&body)
}

/// Config echo, versions, checksums, convergence and wall times.
pub fn manifest_json(cfg: &RunConfig, inputs: &[(String, String)], outputs: &[(String, String)], out: &PipelineOutput) -> String {
    let files = |v: &[(String, String)]| -> Vec<Value> { v.iter().map(|(p, h)| json!({"path": p, "sha256": h})).collect() };
    let wall: serde_json::Map<String, Value> = out.wall_times.iter().map(|(k, t)| (k.to_string(), json!(t))).collect();
    let body = json!({
        "schema_version": SCHEMA_VERSION,
        "software": {"name": env!("CARGO_PKG_NAME"), "version": env!("CARGO_PKG_VERSION")},
        "config": serde_json::to_value(cfg).expect("config serializes"),
        "inputs": files(inputs),
        "outputs": files(outputs),
        "convergence": {
            "vqe_converged": out.vqe.converged,
            "vqe_iterations": out.vqe.iterations,
            "vqe_gradient_inf_norm": out.vqe.gradient_inf_norm,
            "qeom_gradient_max": out.diagnostics.gradient_max,
            "qeom_gradient_flagged": out.diagnostics.gradient_flagged,
        },
        "threads": rayon::current_num_threads(),
        "wall_times_s": wall,
    });
    pretty(&body)
}
