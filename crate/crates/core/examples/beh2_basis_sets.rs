//! BeH2 (4e, 4o) in STO-3G and 6-31G: the bright S8 state moves down while its
//! oscillator strength barely changes.

use ooqeom::integrals::{read_fcidump, read_property};
use ooqeom::pipeline::{run_pipeline, PipelineOptions, SpectrumKind};
use ooqeom::spectrum::GridSpec;
use ooqeom::vqe::{StartOrbitals, VqeOptions};

fn main() -> ooqeom::Result<()> {
    env_logger::init();
    let data = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data");
    let opts = PipelineOptions {
        active_electrons: 4,
        active_orbitals: 4,
        start: StartOrbitals::Mp2Natural,
        vqe: VqeOptions::default(),
        linear_dep_tol: 1e-8,
        broadening_ev: 0.4,
        grid: GridSpec::new(0.0, 40.0, 801)?,
        spectrum_kind: SpectrumKind::Absorption,
    };
    let mut s8 = Vec::new();
    for basis in ["sto3g", "631g"] {
        let f = |ext: &str| format!("{data}/beh2_{basis}.{ext}");
        let mi = read_fcidump(f("fcidump").as_ref())?;
        let dip = read_property(f("dipole").as_ref())?;
        let mag = read_property(f("magnetic").as_ref())?;
        let out = run_pipeline(&mi, Some(&dip), Some(&mag), &opts)?;
        println!("BeH2/{basis}: E0 = {:.8}, {} states, wall {:?}", out.vqe.energy, out.states.len(), out.wall_times);
        for s in out.states.iter().take(10) {
            println!("  S{:<2} {:>8.3} eV  f {:.4}  {}", s.index, s.energy_ev, s.oscillator_strength, s.dominant);
        }
        let s = &out.states[7];
        s8.push((s.energy_ev, s.oscillator_strength));
    }
    println!("S8: {:.2} eV -> {:.2} eV, f {:.4} -> {:.4} ({:+.1}%)", s8[0].0, s8[1].0, s8[0].1, s8[1].1, 100.0 * (s8[1].1 / s8[0].1 - 1.0));
    Ok(())
}
