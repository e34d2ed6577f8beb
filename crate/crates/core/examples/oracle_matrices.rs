//! The Pauli-expectation path and the dense Fock-space path build the same
//! qEOM matrices. Twisted H4, (4e, 4o), 8 qubits.

use num_complex::Complex64;
use ooqeom::active_space::{full_hamiltonian, ActiveSpaceSpec};
use ooqeom::ansatz::build_uccsd_ansatz;
use ooqeom::integrals::read_fcidump;
use ooqeom::oracle::dense_eom_matrices;
use ooqeom::qeom::{build_basis, PauliContext};
use ooqeom::vqe::{optimize, StartOrbitals, VqeOptions};

fn main() -> ooqeom::Result<()> {
    let mi = read_fcidump(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/h4_twisted_sto3g.fcidump").as_ref())?;
    let spec = ActiveSpaceSpec::from_counts(4, 4, 4, 4)?;
    let gs = optimize(&mi, &spec, &build_uccsd_ansatz(&spec)?, StartOrbitals::AsGiven, &VqeOptions::default())?;
    let basis = build_basis(&spec)?;

    let t = std::time::Instant::now();
    let pauli = PauliContext::new(&basis, &full_hamiltonian(&gs.integrals)?, gs.state.clone()).matrices();
    let tp = t.elapsed();
    let t = std::time::Instant::now();
    let dense = dense_eom_matrices(&basis, &gs.integrals, gs.state.amplitudes());
    let td = t.elapsed();

    let diff = |a: &nalgebra::DMatrix<Complex64>, b: &nalgebra::DMatrix<Complex64>| (a - b).iter().fold(0.0f64, |m, v| m.max(v.norm()));
    println!("dimension {}  (pauli {:.2?}, dense {:.2?})", pauli.dim(), tp, td);
    println!("max |A - A_dense|         {:.2e}", diff(&pauli.a, &dense.a));
    println!("max |B - B_dense|         {:.2e}", diff(&pauli.b, &dense.b));
    println!("max |Sigma - Sigma_dense| {:.2e}", diff(&pauli.sigma, &dense.sigma));
    println!("max |Delta - Delta_dense| {:.2e}", diff(&pauli.delta, &dense.delta));
    println!("|Delta|max {:.1e}", pauli.delta_max());
    Ok(())
}
