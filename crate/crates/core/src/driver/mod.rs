//! `run`, `validate` and `oracle` commands behind the binary.

mod config;
mod report;

pub use config::{ActiveSection, InputSection, KindName, Manifold, OptimizerSection, OrbitalSection, QeomSection, RunConfig, SpectrumSection, StartKind};
pub use report::{manifest_json, results_json, SCHEMA_VERSION};

use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::active_space::ActiveSpaceSpec;
use crate::error::{Error, Result};
use crate::integrals::{parse_fcidump, MolecularIntegrals, PropertyIntegrals, PropertyKind};
use crate::oracle::casci;
use crate::pipeline::{run_pipeline, PipelineOutput};
use crate::properties::oscillator_strength;
use crate::spectrum::HARTREE_TO_EV;

/// Environment variable holding the worker-thread count.
pub const THREADS_ENV: &str = "OOQEOM_THREADS";

pub mod exit {
    pub const OK: i32 = 0;
    pub const OTHER: i32 = 1;
    pub const INPUT: i32 = 2;
    pub const NOT_CONVERGED: i32 = 3;
    pub const INSTABILITY: i32 = 4;
}

/// Process exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e.root() {
        Error::Parse { .. }
        | Error::Io { .. }
        | Error::Config(_)
        | Error::InvalidIntegrals(_)
        | Error::InvalidActiveSpace(_)
        | Error::OpenShell(_)
        | Error::DimensionMismatch { .. } => exit::INPUT,
        Error::Instability { .. } => exit::INSTABILITY,
        _ => exit::OTHER,
    }
}

/// Size the global worker pool from `OOQEOM_THREADS`; unset leaves rayon's default.
pub fn configure_threads() -> Result<Option<usize>> {
    let Ok(v) = std::env::var(THREADS_ENV) else {
        return Ok(None);
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::Config(format!("{THREADS_ENV} must be a positive integer, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    Ok(Some(n))
}

/// Everything read from disk for one configuration.
pub struct Inputs {
    pub integrals: MolecularIntegrals,
    pub dipole: Option<PropertyIntegrals>,
    pub magnetic: Option<PropertyIntegrals>,
    /// `(path, sha256)` in the order read.
    pub checksums: Vec<(String, String)>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        source: e,
    })
}

fn in_file(path: &Path, e: Error) -> Error {
    match e {
        Error::Parse { line, message } => Error::Parse {
            line,
            message: format!("{}: {}", path.display(), message),
        },
        other => other,
    }
}

pub fn load_inputs(cfg: &RunConfig) -> Result<Inputs> {
    let mut checksums = Vec::new();
    let text = read(&cfg.input.fcidump)?;
    checksums.push((cfg.input.fcidump.display().to_string(), sha256_hex(text.as_bytes())));
    let integrals = parse_fcidump(&text).map_err(|e| in_file(&cfg.input.fcidump, e))?;
    if let Some(issue) = integrals.issues().into_iter().next() {
        return Err(Error::InvalidIntegrals(issue));
    }
    let mut dipole = None;
    let mut magnetic = None;
    for p in &cfg.input.properties {
        let text = read(p)?;
        checksums.push((p.display().to_string(), sha256_hex(text.as_bytes())));
        let prop = PropertyIntegrals::parse(&text).map_err(|e| in_file(p, e))?;
        if prop.n_spatial() != integrals.n_spatial() {
            return Err(Error::DimensionMismatch {
                expected: integrals.n_spatial(),
                got: prop.n_spatial(),
            });
        }
        let slot = match prop.kind {
            PropertyKind::ElectricDipole => &mut dipole,
            PropertyKind::MagneticDipole => &mut magnetic,
        };
        if slot.is_some() {
            return Err(Error::Config(format!("more than one {} file", prop.kind.label())));
        }
        *slot = Some(prop);
    }
    ActiveSpaceSpec::from_counts(integrals.n_spatial(), integrals.n_electrons, cfg.active_space.electrons, cfg.active_space.orbitals)?;
    Ok(Inputs {
        integrals,
        dipole,
        magnetic,
        checksums,
    })
}

fn compute(cfg: &RunConfig) -> Result<(Inputs, PipelineOutput)> {
    let inputs = load_inputs(cfg)?;
    let out = run_pipeline(&inputs.integrals, inputs.dipole.as_ref(), inputs.magnetic.as_ref(), &cfg.pipeline_options()?)?;
    Ok((inputs, out))
}

/// Files written by `run`.
pub const RESULTS_FILE: &str = "results.json";
pub const SPECTRUM_FILE: &str = "spectrum.csv";
pub const MANIFEST_FILE: &str = "manifest.json";

#[derive(Debug)]
pub struct RunSummary {
    pub output: PipelineOutput,
    pub files: Vec<PathBuf>,
    pub exit_code: i32,
}

fn write_atomic(path: &Path, body: &str) -> Result<()> {
    let tmp = path.with_extension("tmp");
    let io = |e| Error::Io {
        path: path.display().to_string(),
        source: e,
    };
    std::fs::write(&tmp, body).map_err(io)?;
    std::fs::rename(&tmp, path).map_err(io)
}

/// Full pipeline. Nothing is written unless every stage succeeds; a
/// non-converged optimization still writes results but reports exit code 3.
pub fn run(cfg: &RunConfig) -> Result<RunSummary> {
    let (inputs, out) = compute(cfg)?;
    let results = results_json(&out);
    let spectrum = out.spectrum.to_csv();
    let outputs = vec![
        (RESULTS_FILE.to_string(), sha256_hex(results.as_bytes())),
        (SPECTRUM_FILE.to_string(), sha256_hex(spectrum.as_bytes())),
    ];
    let manifest = manifest_json(cfg, &inputs.checksums, &outputs, &out);

    let dir = &cfg.output_dir;
    std::fs::create_dir_all(dir).map_err(|e| Error::Io {
        path: dir.display().to_string(),
        source: e,
    })?;
    let mut files = Vec::new();
    for (name, body) in [(RESULTS_FILE, &results), (SPECTRUM_FILE, &spectrum), (MANIFEST_FILE, &manifest)] {
        let p = dir.join(name);
        write_atomic(&p, body)?;
        files.push(p);
    }
    let exit_code = if out.vqe.converged { exit::OK } else { exit::NOT_CONVERGED };
    Ok(RunSummary {
        output: out,
        files,
        exit_code,
    })
}

/// Input checks without running anything; an empty list means valid.
pub fn validate(cfg: &RunConfig) -> Vec<String> {
    let mut issues = Vec::new();
    let mi = match read(&cfg.input.fcidump).and_then(|t| parse_fcidump(&t).map_err(|e| in_file(&cfg.input.fcidump, e))) {
        Ok(mi) => {
            issues.extend(mi.issues());
            Some(mi)
        }
        Err(e) => {
            issues.push(e.to_string());
            None
        }
    };
    for p in &cfg.input.properties {
        match read(p).and_then(|t| PropertyIntegrals::parse(&t).map_err(|e| in_file(p, e))) {
            Ok(prop) => {
                if let Some(mi) = &mi {
                    if prop.n_spatial() != mi.n_spatial() {
                        issues.push(format!(
                            "{}: {} orbitals but the FCIDUMP has {}",
                            p.display(),
                            prop.n_spatial(),
                            mi.n_spatial()
                        ));
                    }
                }
            }
            Err(e) => issues.push(e.to_string()),
        }
    }
    if let Some(mi) = &mi {
        if let Err(e) = ActiveSpaceSpec::from_counts(mi.n_spatial(), mi.n_electrons, cfg.active_space.electrons, cfg.active_space.orbitals) {
            issues.push(e.to_string());
        }
    }
    issues
}

#[derive(Clone, Debug)]
pub struct OracleRow {
    pub index: usize,
    pub qeom_ev: f64,
    pub oracle_ev: Option<f64>,
    pub qeom_f: f64,
    pub oracle_f: Option<f64>,
}

#[derive(Clone, Debug)]
pub struct OracleReport {
    pub vqe_energy: f64,
    pub ci_energy: f64,
    pub rows: Vec<OracleRow>,
    /// qEOM states whose operators leave the active space have no CI partner.
    pub full_space: bool,
}

impl OracleReport {
    pub fn table(&self) -> String {
        use std::fmt::Write as _;
        let mut s = String::new();
        let _ = writeln!(s, "ground state: vqe {:.10}  casci {:.10}  diff {:.3e}", self.vqe_energy, self.ci_energy, self.vqe_energy - self.ci_energy);
        if !self.full_space {
            let _ = writeln!(s, "note: active space is not the full space; CASCI roots within 1 eV are matched to qEOM states closest pair first");
        }
        let _ = writeln!(s, "{:>5} {:>12} {:>12} {:>11} {:>10} {:>10}", "state", "qeom_eV", "oracle_eV", "diff_meV", "qeom_f", "oracle_f");
        let opt = |v: Option<f64>, w: usize, p: usize| v.map_or_else(|| format!("{:>w$}", "-"), |x| format!("{:>w$.p$}", x));
        for r in &self.rows {
            let diff = r.oracle_ev.map(|o| (r.qeom_ev - o) * 1000.0);
            let _ = writeln!(
                s,
                "{:>5} {:>12.6} {} {} {:>10.6} {}",
                format!("S{}", r.index),
                r.qeom_ev,
                opt(r.oracle_ev, 12, 6),
                opt(diff, 11, 4),
                r.qeom_f,
                opt(r.oracle_f, 10, 6)
            );
        }
        s
    }
}

/// Largest qEOM/CASCI gap paired in a partial active space.
pub const ORACLE_MATCH_WINDOW_EV: f64 = 1.0;

/// Runs the pipeline, then CASCI in the optimized orbitals on the same active space.
pub fn oracle(cfg: &RunConfig) -> Result<OracleReport> {
    let (inputs, out) = compute(cfg)?;
    let spec = out.spec;
    let ci = casci(&out.vqe.integrals, spec.n_inactive, spec.n_active, spec.n_active_electrons);
    let singlets = ci.singlets(1e-6);
    let dip = match &inputs.dipole {
        Some(d) => Some(d.transform(&out.vqe.orbitals)?),
        None => None,
    };
    let g = singlets[0];
    let full_space = spec.n_inactive == 0 && spec.n_virtual == 0;
    // CI partner of each qEOM state: by index in the full space, otherwise
    // closest pairs first
    let mut partner: Vec<Option<usize>> = vec![None; out.states.len()];
    if full_space {
        for (k, p) in partner.iter_mut().enumerate() {
            *p = singlets.get(k + 1).copied();
        }
    } else {
        let mut pairs: Vec<(f64, usize, usize)> = Vec::new();
        for &c in &singlets[1..] {
            let de = ci.energies[c] - ci.energies[g];
            for (k, st) in out.states.iter().enumerate() {
                pairs.push(((st.energy - de).abs(), c, k));
            }
        }
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
        let mut used = std::collections::HashSet::new();
        for (d, c, k) in pairs {
            if d * HARTREE_TO_EV > ORACLE_MATCH_WINDOW_EV {
                break;
            }
            if partner[k].is_none() && used.insert(c) {
                partner[k] = Some(c);
            }
        }
    }
    let rows = out
        .states
        .iter()
        .zip(&partner)
        .map(|(st, partner)| {
            let oracle_ev = partner.map(|p| (ci.energies[p] - ci.energies[g]) * HARTREE_TO_EV);
            let oracle_f = match (partner, &dip) {
                (Some(p), Some(d)) => {
                    let mu: [f64; 3] = std::array::from_fn(|c| -ci.one_body_transition(g, *p, &d.components[c]));
                    Some(oscillator_strength(ci.energies[*p] - ci.energies[g], &mu))
                }
                (Some(_), None) => Some(0.0),
                _ => None,
            };
            OracleRow {
                index: st.index,
                qeom_ev: st.energy_ev,
                oracle_ev,
                qeom_f: st.oscillator_strength,
                oracle_f,
            }
        })
        .collect();
    Ok(OracleReport {
        vqe_energy: out.vqe.energy,
        ci_energy: ci.energies[g],
        rows,
        full_space,
    })
}
