//! UCCSD-VQE on H2/STO-3G against exact diagonalization.

use ooqeom::active_space::ActiveSpaceSpec;
use ooqeom::ansatz::build_uccsd_ansatz;
use ooqeom::integrals::read_fcidump;
use ooqeom::oracle::casci;
use ooqeom::vqe::{optimize, StartOrbitals, VqeOptions};

fn main() -> ooqeom::Result<()> {
    let mi = read_fcidump(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/h2_sto3g.fcidump").as_ref())?;
    let spec = ActiveSpaceSpec::from_counts(2, 2, 2, 2)?;
    let ansatz = build_uccsd_ansatz(&spec)?;
    println!("{} parameters, {} rotations", ansatz.n_parameters, ansatz.generators.len());
    let r = optimize(&mi, &spec, &ansatz, StartOrbitals::AsGiven, &VqeOptions::default())?;
    for t in &r.trace {
        println!("  iter {:>2}  E = {:.12}  |g| = {:.2e}", t.iteration, t.value, t.gradient_inf_norm);
    }
    let fci = casci(&mi, 0, 2, 2).energies[0];
    println!("VQE {:.12}\nFCI {:.12}\ndiff {:.2e}", r.energy, fci, r.energy - fci);
    Ok(())
}
