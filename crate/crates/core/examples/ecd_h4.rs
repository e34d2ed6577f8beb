//! Absorption and ECD spectra of the twisted H4 chain. Mirroring the geometry
//! flips the magnetic integrals and with them every rotational strength.

use ooqeom::integrals::{read_fcidump, read_property, PropertyIntegrals, PropertyKind};
use ooqeom::pipeline::{run_pipeline, PipelineOptions, SpectrumKind};
use ooqeom::spectrum::{convolve, GridSpec};
use ooqeom::vqe::{StartOrbitals, VqeOptions};

fn main() -> ooqeom::Result<()> {
    let data = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data");
    let mi = read_fcidump(format!("{data}/h4_twisted_sto3g.fcidump").as_ref())?;
    let dip = read_property(format!("{data}/h4_twisted_sto3g.dipole").as_ref())?;
    let mag = read_property(format!("{data}/h4_twisted_sto3g.magnetic").as_ref())?;
    let grid = GridSpec::new(15.0, 40.0, 26)?;
    let opts = PipelineOptions {
        active_electrons: 4,
        active_orbitals: 4,
        start: StartOrbitals::AsGiven,
        vqe: VqeOptions::default(),
        linear_dep_tol: 1e-8,
        broadening_ev: 0.4,
        grid,
        spectrum_kind: SpectrumKind::Ecd,
    };
    let out = run_pipeline(&mi, Some(&dip), Some(&mag), &opts)?;
    let mirrored = PropertyIntegrals::new(PropertyKind::MagneticDipole, mag.components.clone().map(|m| -m), mag.gauge_origin)?;
    let flip = run_pipeline(&mi, Some(&dip), Some(&mirrored), &opts)?;

    let abs: Vec<(f64, f64)> = out.states.iter().map(|s| (s.energy_ev, s.oscillator_strength)).collect();
    let absorption = convolve(&abs, 0.4, &grid)?;
    println!("{:>8} {:>12} {:>12} {:>12}", "eV", "absorption", "ECD", "ECD mirror");
    for k in 0..grid.points {
        println!(
            "{:>8.2} {:>12.5} {:>+12.5} {:>+12.5}",
            absorption.grid[k], absorption.intensity[k], out.spectrum.intensity[k], flip.spectrum.intensity[k]
        );
    }
    Ok(())
}
