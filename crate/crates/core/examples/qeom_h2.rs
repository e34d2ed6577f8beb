//! qEOM excitation energies of H2 in 6-31G (2e, 4o) against CI.

use ooqeom::active_space::{full_hamiltonian, ActiveSpaceSpec};
use ooqeom::ansatz::build_uccsd_ansatz;
use ooqeom::integrals::read_fcidump;
use ooqeom::oracle::casci;
use ooqeom::qeom::{build_basis, solve, PauliContext, LINEAR_DEP_TOL};
use ooqeom::spectrum::HARTREE_TO_EV;
use ooqeom::vqe::{optimize, StartOrbitals, VqeOptions};

fn main() -> ooqeom::Result<()> {
    let mi = read_fcidump(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/h2_631g.fcidump").as_ref())?;
    let spec = ActiveSpaceSpec::from_counts(4, 2, 2, 4)?;
    let ansatz = build_uccsd_ansatz(&spec)?;
    let gs = optimize(&mi, &spec, &ansatz, StartOrbitals::AsGiven, &VqeOptions::default())?;

    let basis = build_basis(&spec)?;
    let ctx = PauliContext::new(&basis, &full_hamiltonian(&gs.integrals)?, gs.state.clone());
    let m = ctx.matrices();
    println!("{} operators; |Delta| {:.1e}, A herm {:.1e}, B sym {:.1e}", basis.len(), m.delta_max(), m.a_hermiticity(), m.b_symmetry());
    let sol = solve(&m, LINEAR_DEP_TOL)?;

    let ci = casci(&gs.integrals, 0, 4, 2);
    let s = ci.singlets(1e-6);
    println!("{:>4} {:>12} {:>12}", "", "qEOM eV", "CI eV");
    for (k, st) in sol.states.iter().enumerate() {
        let exact = s.get(k + 1).map(|&i| (ci.energies[i] - ci.energies[s[0]]) * HARTREE_TO_EV);
        println!("S{:<3} {:>12.6} {:>12.6}", k + 1, st.energy * HARTREE_TO_EV, exact.unwrap_or(f64::NAN));
    }
    Ok(())
}
