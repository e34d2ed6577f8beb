//! Orbital-optimized VQE for LiH in a (2e, 2o) active space.

use ooqeom::active_space::ActiveSpaceSpec;
use ooqeom::ansatz::build_uccsd_ansatz;
use ooqeom::integrals::read_fcidump;
use ooqeom::vqe::{optimize, StartOrbitals, VqeOptions};

fn main() -> ooqeom::Result<()> {
    env_logger::init();
    let mi = read_fcidump(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/lih_sto3g.fcidump").as_ref())?;
    let spec = ActiveSpaceSpec::from_counts(mi.n_spatial(), mi.n_electrons, 2, 2)?;
    let ansatz = build_uccsd_ansatz(&spec)?;
    println!("theta: {}  kappa: {}", ansatz.n_parameters, spec.kappa_pairs().len());

    let frozen = optimize(&mi, &spec, &ansatz, StartOrbitals::AsGiven, &VqeOptions { freeze_orbitals: true, ..Default::default() })?;
    let oo = optimize(&mi, &spec, &ansatz, StartOrbitals::Mp2Natural, &VqeOptions::default())?;
    println!("VQE in HF orbitals   {:.10}", frozen.energy);
    println!("oo-VQE (MP2 start)   {:.10}  ({} iterations, |g| {:.1e})", oo.energy, oo.iterations, oo.gradient_inf_norm);
    println!("orbital relaxation   {:.3e}", oo.energy - frozen.energy);
    println!("largest |kappa|      {:.4}", oo.kappa_opt.parameters().iter().fold(0.0f64, |a, k| a.max(k.abs())));
    Ok(())
}
