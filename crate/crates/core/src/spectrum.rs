//! Gaussian-broadened stick spectra.

use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Hartree to electronvolt (CODATA 2018).
pub const HARTREE_TO_EV: f64 = 27.211386245988;

/// Default Gaussian width in eV.
pub const DEFAULT_BROADENING_EV: f64 = 0.4;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    pub min_ev: f64,
    pub max_ev: f64,
    pub points: usize,
}

impl GridSpec {
    pub fn new(min_ev: f64, max_ev: f64, points: usize) -> Result<Self> {
        if !(min_ev.is_finite() && max_ev.is_finite()) || max_ev <= min_ev || points < 2 {
            return Err(Error::Config(format!(
                "spectrum grid needs min < max and at least 2 points, got [{min_ev}, {max_ev}] with {points}"
            )));
        }
        Ok(GridSpec { min_ev, max_ev, points })
    }

    pub fn energies(&self) -> Vec<f64> {
        let step = (self.max_ev - self.min_ev) / (self.points - 1) as f64;
        (0..self.points).map(|k| self.min_ev + step * k as f64).collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    pub grid: Vec<f64>,
    pub intensity: Vec<f64>,
    /// `(energy eV, strength)`.
    pub sticks: Vec<(f64, f64)>,
}

impl Spectrum {
    /// `energy_eV,intensity` rows with a header.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("energy_eV,intensity\n");
        for (e, i) in self.grid.iter().zip(&self.intensity) {
            let _ = writeln!(s, "{:.6},{:.12e}", e, i);
        }
        s
    }
}

/// `I(E) = sum_k s_k exp(-(E - E_k)^2 / (2 sigma^2))`, with `sigma` in eV.
pub fn convolve(sticks: &[(f64, f64)], sigma_ev: f64, grid: &GridSpec) -> Result<Spectrum> {
    if !(sigma_ev > 0.0 && sigma_ev.is_finite()) {
        return Err(Error::Config(format!("broadening must be positive, got {sigma_ev}")));
    }
    if sticks.is_empty() {
        log::warn!("no excitations to convolve; spectrum is empty");
    }
    let grid_e = grid.energies();
    let two_s2 = 2.0 * sigma_ev * sigma_ev;
    let intensity = grid_e
        .iter()
        .map(|e| sticks.iter().map(|(ek, s)| s * (-(e - ek).powi(2) / two_s2).exp()).sum())
        .collect();
    Ok(Spectrum {
        grid: grid_e,
        intensity,
        sticks: sticks.to_vec(),
    })
}
