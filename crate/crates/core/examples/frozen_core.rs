//! LiH with the 1s pair frozen: the projected active Hamiltonian reproduces the
//! full-space energy of every determinant that keeps the core doubly occupied.

use ooqeom::active_space::{active_hamiltonian, full_hamiltonian, project, ActiveSpaceSpec};
use ooqeom::integrals::{hf_energy, read_fcidump};
use ooqeom::statevector::prepare_reference;

fn main() -> ooqeom::Result<()> {
    let mi = read_fcidump(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/lih_sto3g.fcidump").as_ref())?;
    let spec = ActiveSpaceSpec::from_counts(mi.n_spatial(), mi.n_electrons, 2, 3)?;
    println!(
        "inactive {} active {} virtual {}  ({} active qubits of {})",
        spec.n_inactive,
        spec.n_active,
        spec.n_virtual,
        spec.n_active_qubits(),
        spec.n_qubits()
    );
    let direct = active_hamiltonian(&mi, &spec)?;
    let projected = project(&full_hamiltonian(&mi)?, &spec)?;
    println!("direct and projected agree: {}", direct.approx_eq(&projected, 1e-10));
    let e = prepare_reference(&spec).expectation_real(&direct)?;
    println!("<HF|H_active|HF> = {:.10}\nE(HF)           = {:.10}", e, hf_energy(&mi));
    Ok(())
}
