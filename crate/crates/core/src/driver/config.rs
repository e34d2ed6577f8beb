//! Run configuration (TOML).

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::optimizer::BfgsOptions;
use crate::pipeline::{PipelineOptions, SpectrumKind};
use crate::qeom::LINEAR_DEP_TOL;
use crate::spectrum::{GridSpec, DEFAULT_BROADENING_EV};
use crate::vqe::{StartOrbitals, VqeOptions, KAPPA_FD_STEP};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub input: InputSection,
    pub active_space: ActiveSection,
    #[serde(default)]
    pub orbitals: OrbitalSection,
    #[serde(default)]
    pub optimizer: OptimizerSection,
    #[serde(default)]
    pub qeom: QeomSection,
    #[serde(default)]
    pub spectrum: SpectrumSection,
    pub output_dir: PathBuf,
    /// Reserved; nothing in the pipeline is random.
    #[serde(default)]
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputSection {
    pub fcidump: PathBuf,
    /// `PROPINTS` files; the kind is read from each header.
    #[serde(default)]
    pub properties: Vec<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActiveSection {
    pub electrons: usize,
    pub orbitals: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StartKind {
    AsGiven,
    Mp2Natural,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrbitalSection {
    #[serde(default = "default_start")]
    pub start: StartKind,
    /// Skip orbital optimization.
    #[serde(default)]
    pub freeze: bool,
}

fn default_start() -> StartKind {
    StartKind::Mp2Natural
}

impl Default for OrbitalSection {
    fn default() -> Self {
        OrbitalSection {
            start: default_start(),
            freeze: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptimizerSection {
    #[serde(default = "default_max_iter")]
    pub max_iter: usize,
    #[serde(default = "default_grad_tol")]
    pub grad_tol: f64,
}

fn default_max_iter() -> usize {
    BfgsOptions::default().max_iter
}

fn default_grad_tol() -> f64 {
    BfgsOptions::default().gtol
}

impl Default for OptimizerSection {
    fn default() -> Self {
        OptimizerSection {
            max_iter: default_max_iter(),
            grad_tol: default_grad_tol(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Manifold {
    SinglesDoubles,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QeomSection {
    #[serde(default = "default_lin_dep")]
    pub linear_dep_tol: f64,
    #[serde(default = "default_manifold")]
    pub manifold: Manifold,
}

fn default_lin_dep() -> f64 {
    LINEAR_DEP_TOL
}

fn default_manifold() -> Manifold {
    Manifold::SinglesDoubles
}

impl Default for QeomSection {
    fn default() -> Self {
        QeomSection {
            linear_dep_tol: default_lin_dep(),
            manifold: default_manifold(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KindName {
    Absorption,
    Ecd,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrumSection {
    /// Gaussian sigma in eV.
    #[serde(default = "default_broadening")]
    pub broadening_ev: f64,
    #[serde(default)]
    pub grid_min_ev: f64,
    #[serde(default = "default_grid_max")]
    pub grid_max_ev: f64,
    #[serde(default = "default_grid_points")]
    pub grid_points: usize,
    #[serde(default = "default_kind")]
    pub kind: KindName,
}

fn default_broadening() -> f64 {
    DEFAULT_BROADENING_EV
}
fn default_grid_max() -> f64 {
    40.0
}
fn default_grid_points() -> usize {
    801
}
fn default_kind() -> KindName {
    KindName::Absorption
}

impl Default for SpectrumSection {
    fn default() -> Self {
        SpectrumSection {
            broadening_ev: default_broadening(),
            grid_min_ev: 0.0,
            grid_max_ev: default_grid_max(),
            grid_points: default_grid_points(),
            kind: default_kind(),
        }
    }
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let c: RunConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        c.check()?;
        Ok(c)
    }

    /// Reads `path`; relative paths inside are taken relative to its directory.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
            path: path.display().to_string(),
            source: e,
        })?;
        let mut c = Self::parse(&text)?;
        let base = path.parent().unwrap_or(Path::new("."));
        let fix = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        };
        fix(&mut c.input.fcidump);
        c.input.properties.iter_mut().for_each(fix);
        fix(&mut c.output_dir);
        Ok(c)
    }

    fn check(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if !(self.optimizer.grad_tol > 0.0) {
            return bad(format!("optimizer.grad_tol must be positive, got {}", self.optimizer.grad_tol));
        }
        if self.optimizer.max_iter == 0 {
            return bad("optimizer.max_iter must be at least 1".into());
        }
        if !(self.qeom.linear_dep_tol > 0.0) {
            return bad(format!("qeom.linear_dep_tol must be positive, got {}", self.qeom.linear_dep_tol));
        }
        if !(self.spectrum.broadening_ev > 0.0) {
            return bad(format!("spectrum.broadening_ev must be positive, got {}", self.spectrum.broadening_ev));
        }
        self.grid()?;
        Ok(())
    }

    pub fn grid(&self) -> Result<GridSpec> {
        GridSpec::new(self.spectrum.grid_min_ev, self.spectrum.grid_max_ev, self.spectrum.grid_points)
    }

    pub fn pipeline_options(&self) -> Result<PipelineOptions> {
        Ok(PipelineOptions {
            active_electrons: self.active_space.electrons,
            active_orbitals: self.active_space.orbitals,
            start: match self.orbitals.start {
                StartKind::AsGiven => StartOrbitals::AsGiven,
                StartKind::Mp2Natural => StartOrbitals::Mp2Natural,
            },
            vqe: VqeOptions {
                bfgs: BfgsOptions {
                    gtol: self.optimizer.grad_tol,
                    max_iter: self.optimizer.max_iter,
                    ..BfgsOptions::default()
                },
                kappa_fd_step: KAPPA_FD_STEP,
                freeze_orbitals: self.orbitals.freeze,
            },
            linear_dep_tol: self.qeom.linear_dep_tol,
            broadening_ev: self.spectrum.broadening_ev,
            grid: self.grid()?,
            spectrum_kind: match self.spectrum.kind {
                KindName::Absorption => SpectrumKind::Absorption,
                KindName::Ecd => SpectrumKind::Ecd,
            },
        })
    }
}
