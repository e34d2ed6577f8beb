//! Acceptance suite. Each test prints `criterion N: PASS|FAIL ...` straight to
//! stdout, so the lines show up even when the harness captures output.

mod common;

use std::io::Write;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use ooqeom::active_space::{full_hamiltonian, ActiveSpaceSpec};
use ooqeom::ansatz::build_uccsd_ansatz;
use ooqeom::driver::{self, RunConfig, MANIFEST_FILE, RESULTS_FILE, SPECTRUM_FILE};
use ooqeom::oracle::{casci, dense_eom_matrices};
use ooqeom::pipeline::PipelineOutput;
use ooqeom::qeom::{build_basis, PauliContext};
use ooqeom::spectrum::{convolve, GridSpec, HARTREE_TO_EV};
use ooqeom::vqe::{StartOrbitals, VqeProblem};

const SYSTEMS: [&str; 6] = ["h2_sto3g", "h2_631g", "lih_sto3g", "h4_twisted_sto3g", "beh2_sto3g", "beh2_631g"];

fn report(n: u32, ok: bool, detail: &str) {
    let line = format!("criterion {n}: {} {detail}\n", if ok { "PASS" } else { "FAIL" });
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(line.as_bytes());
    let _ = out.flush();
}

struct Run {
    name: &'static str,
    out: PipelineOutput,
    elapsed: Duration,
}

/// Every shipped config through the pipeline, once per process.
fn runs() -> &'static [Run] {
    static RUNS: OnceLock<Vec<Run>> = OnceLock::new();
    RUNS.get_or_init(|| {
        SYSTEMS
            .iter()
            .map(|&name| {
                let t = Instant::now();
                let out = common::pipeline(name);
                Run { name, out, elapsed: t.elapsed() }
            })
            .collect()
    })
}

fn run(name: &str) -> &'static Run {
    runs().iter().find(|r| r.name == name).unwrap()
}

fn cmax(m: &nalgebra::DMatrix<Complex64>) -> f64 {
    m.iter().fold(0.0f64, |a, v| a.max(v.norm()))
}

#[test]
fn criterion_1_h2_ground_state() {
    let r = run("h2_sto3g");
    let fci = casci(&r.out.vqe.integrals, 0, 2, 2).energies[0];
    let diff = (r.out.vqe.energy - fci).abs();
    let ok = diff <= 1e-8 && r.elapsed < Duration::from_secs(5);
    report(1, ok, &format!("H2/STO-3G |E_vqe - E_fci| = {diff:.2e} Ha (<= 1e-8), full run {:.2?} (< 5 s)", r.elapsed));
    assert!(ok);
}

#[test]
fn criterion_2_h2_excitations() {
    let r = run("h2_sto3g");
    let ci = casci(&r.out.vqe.integrals, 0, 2, 2);
    let s = ci.singlets(1e-6);
    let exact: Vec<f64> = s[1..].iter().map(|&k| ci.energies[k] - ci.energies[s[0]]).collect();
    let got: Vec<f64> = r.out.states.iter().map(|st| st.energy).collect();
    let worst = got.iter().zip(&exact).map(|(a, b)| (a - b).abs()).fold(0.0f64, f64::max);
    let ok = got.len() == exact.len() && worst <= 1e-6 && r.elapsed < Duration::from_secs(10);
    report(
        2,
        ok,
        &format!("H2/STO-3G {} qEOM vs {} CI singlets, max error {worst:.2e} Ha (<= 1e-6), {:.2?} (< 10 s)", got.len(), exact.len(), r.elapsed),
    );
    assert!(ok);
}

#[test]
fn criterion_3_h4_matrix_paths() {
    let r = run("h4_twisted_sto3g");
    let spec = r.out.spec;
    let t = Instant::now();
    let basis = build_basis(&spec).unwrap();
    let pauli = PauliContext::new(&basis, &full_hamiltonian(&r.out.vqe.integrals).unwrap(), r.out.vqe.state.clone()).matrices();
    let dense = dense_eom_matrices(&basis, &r.out.vqe.integrals, r.out.vqe.state.amplitudes());
    let elapsed = t.elapsed();
    let diff = [
        cmax(&(&pauli.a - &dense.a)),
        cmax(&(&pauli.b - &dense.b)),
        cmax(&(&pauli.sigma - &dense.sigma)),
        cmax(&(&pauli.delta - &dense.delta)),
    ];
    let worst = diff.iter().cloned().fold(0.0f64, f64::max);

    // the full space has no q operators, so Sigma^{qG} is also checked where it exists
    let lih = &run("lih_sto3g").out.matrices;
    let zero = [pauli.delta_max(), pauli.sigma_qg_max(), lih.delta_max(), lih.sigma_qg_max()];
    let structural = zero.iter().all(|&v| v <= 1e-12);
    let ok = worst <= 1e-10 && structural && elapsed < Duration::from_secs(120);
    report(
        3,
        ok,
        &format!(
            "H4 dim {} max|pauli - dense| (A, B, Sigma, Delta) = [{:.1e}, {:.1e}, {:.1e}, {:.1e}]; |Delta| {:.1e}, |Sigma_qG| {:.1e} (LiH: {:.1e}, {:.1e}, n_q {}); {elapsed:.2?}",
            pauli.dim(),
            diff[0],
            diff[1],
            diff[2],
            diff[3],
            zero[0],
            zero[1],
            zero[2],
            zero[3],
            lih.n_q
        ),
    );
    assert!(ok);
}

#[test]
fn criterion_4_structure_invariants() {
    let mut ok = true;
    let mut parts = Vec::new();
    for r in runs() {
        let d = &r.out.diagnostics;
        let good = d.a_hermiticity <= 1e-9 && d.b_symmetry <= 1e-9 && d.sigma_hermiticity <= 1e-9 && d.pairing_error <= 1e-8;
        ok &= good;
        parts.push(format!(
            "{} [A {:.0e} B {:.0e} S {:.0e} pair {:.0e}]",
            r.name, d.a_hermiticity, d.b_symmetry, d.sigma_hermiticity, d.pairing_error
        ));
    }
    report(4, ok, &parts.join(" "));
    assert!(ok);
}

/// `log10(dE(1e-3) / dE(1e-4))` per coordinate, around the converged angles.
fn stationarity_exponents(r: &Run) -> Vec<f64> {
    let v = &r.out.vqe;
    let ansatz = build_uccsd_ansatz(&r.out.spec).unwrap();
    let problem = VqeProblem::new(&v.integrals, r.out.spec, &ansatz).unwrap();
    let k0 = problem.zero_rotation();
    let e0 = problem.energy(&v.theta_opt, &k0).unwrap();
    (0..v.theta_opt.len())
        .map(|i| {
            let de = |d: f64| {
                let mut t = v.theta_opt.clone();
                t[i] += d;
                (problem.energy(&t, &k0).unwrap() - e0).abs()
            };
            (de(1e-3) / de(1e-4)).log10()
        })
        .collect()
}

#[test]
fn criterion_5_stationarity() {
    let mut ok = true;
    let mut parts = Vec::new();
    for name in ["h2_sto3g", "h4_twisted_sto3g"] {
        let ex = stationarity_exponents(run(name));
        let worst = ex.iter().cloned().fold(f64::INFINITY, f64::min);
        ok &= worst >= 1.9;
        parts.push(format!("{name} min exponent {worst:.3} over {} directions", ex.len()));
    }
    report(5, ok, &format!("{} (>= 1.9)", parts.join(", ")));
    assert!(ok);
}

#[test]
fn criterion_6_gradient_diagnostic() {
    let mut ok = true;
    let mut parts = Vec::new();
    for r in runs() {
        let g = r.out.diagnostics.gradient_max;
        ok &= g <= 1e-3 && r.out.vqe.converged;
        parts.push(format!("{} {:.1e}", r.name, g));
    }
    report(6, ok, &format!("max |E_I^[1]| (<= 1e-3 at grad_tol 1e-4): {}", parts.join(", ")));
    assert!(ok);
}

#[test]
fn criterion_7_beh2_s8() {
    let s8 = |name: &str| {
        let st = &run(name).out.states[7];
        assert_eq!(st.index, 8);
        (st.energy_ev, st.oscillator_strength)
    };
    let (e_min, f_min) = s8("beh2_sto3g");
    let (e_ext, f_ext) = s8("beh2_631g");
    let change = (f_ext - f_min).abs() / f_min;
    let ok_min = (e_min - 27.8).abs() <= 0.15;
    let ok_ext = (e_ext - 14.4).abs() <= 0.15;
    let ok_f = change <= 0.2;
    let ok = ok_min && ok_ext && ok_f;
    report(
        7,
        ok,
        &format!(
            "BeH2 S8 STO-3G {e_min:.3} eV vs 27.8 ({}), 6-31G {e_ext:.3} eV vs 14.4 ({}), f {f_min:.4} -> {f_ext:.4} change {:.1}% ({})",
            if ok_min { "ok" } else { "off by more than 0.15" },
            if ok_ext { "ok" } else { "off by more than 0.15" },
            100.0 * change,
            if ok_f { "ok" } else { "over 20%" }
        ),
    );
    assert!(ok);
}

#[test]
fn criterion_8_spectrum() {
    let (e0, s, sigma) = (7.3137, 0.8, 0.4);
    let g = GridSpec::new(0.0, 20.0, 20001).unwrap();
    let sp = convolve(&[(e0, s)], sigma, &g).unwrap();
    let imax = (0..sp.intensity.len()).max_by(|&a, &b| sp.intensity[a].total_cmp(&sp.intensity[b])).unwrap();
    let nearest = (0..sp.grid.len()).min_by(|&a, &b| (sp.grid[a] - e0).abs().total_cmp(&(sp.grid[b] - e0).abs())).unwrap();
    let height = (sp.intensity[imax] - s).abs() / s;
    let h = sp.grid[1] - sp.grid[0];
    let area = sp.intensity.iter().sum::<f64>() * h;
    let want = s * sigma * (2.0 * std::f64::consts::PI).sqrt();
    let area_err = (area - want).abs() / want;

    // the product spectrum is the sum of its sticks
    let r = &run("h2_sto3g").out;
    let rebuilt = convolve(&r.spectrum.sticks, sigma, &GridSpec::new(0.0, 40.0, 801).unwrap()).unwrap();
    let same = rebuilt.intensity == r.spectrum.intensity;
    let sticks_ok = r.spectrum.sticks.iter().zip(&r.states).all(|(st, x)| st.0 == x.energy * HARTREE_TO_EV && st.1 == x.oscillator_strength);

    let ok = imax == nearest && height <= 1e-3 && area_err <= 1e-3 && same && sticks_ok;
    report(
        8,
        ok,
        &format!("peak at nearest grid point {}, height rel err {height:.1e}, area rel err {area_err:.1e} (<= 1e-3), H2 spectrum rebuilt from sticks {}", imax == nearest, same && sticks_ok),
    );
    assert!(ok);
}

fn without_wall_times(bytes: &[u8]) -> serde_json::Value {
    let mut v: serde_json::Value = serde_json::from_slice(bytes).unwrap();
    v.as_object_mut().unwrap().remove("wall_times_s");
    v
}

#[test]
fn criterion_9_determinism() {
    let mut cfg = RunConfig::load(&common::config_path("h4_twisted_sto3g")).unwrap();
    let dir = tempfile::tempdir().unwrap();
    cfg.output_dir = dir.path().to_path_buf();
    let read = |f: &str| std::fs::read(dir.path().join(f)).unwrap();

    let a = driver::run(&cfg).unwrap();
    let first = [read(RESULTS_FILE), read(SPECTRUM_FILE), read(MANIFEST_FILE)];
    let b = driver::run(&cfg).unwrap();
    let second = [read(RESULTS_FILE), read(SPECTRUM_FILE), read(MANIFEST_FILE)];

    let results = first[0] == second[0];
    let spectrum = first[1] == second[1];
    // the manifest records wall-clock times; everything else must match
    let manifest = without_wall_times(&first[2]) == without_wall_times(&second[2]);
    let ok = results && spectrum && manifest && a.exit_code == 0 && b.exit_code == 0;
    report(
        9,
        ok,
        &format!("H4 two runs: results.json identical {results}, spectrum.csv identical {spectrum}, manifest identical apart from wall_times_s {manifest}"),
    );
    assert!(ok);
}

#[test]
fn start_orbitals_are_mp2_natural_in_every_config() {
    for r in runs() {
        let cfg = RunConfig::load(&common::config_path(r.name)).unwrap();
        assert_eq!(cfg.pipeline_options().unwrap().start, StartOrbitals::Mp2Natural, "{}", r.name);
    }
}

/// Exact in (2e, 2o); in (4e, 4o) the single-step UCCSD state sits slightly above CASSCF.
#[test]
fn oo_vqe_matches_casscf_references() {
    for (name, tol) in [("lih_sto3g", 1e-6), ("beh2_sto3g", 1e-4), ("beh2_631g", 1e-4)] {
        let e = run(name).out.vqe.energy;
        let want = common::reference(name, "casscf_energy_mp2_start");
        assert!(e >= want - 1e-7 && e - want < tol, "{name}: {e} vs {want}");
    }
    let spec = run("beh2_631g").out.spec;
    assert_eq!(spec, ActiveSpaceSpec::from_counts(13, 6, 4, 4).unwrap());
}
