//! H2 Hamiltonian under Jordan-Wigner, plus a few operator identities.

use num_complex::Complex64;
use ooqeom::fermion::{jordan_wigner, FermionOperator};
use ooqeom::integrals::{build_hamiltonian, read_fcidump};

fn main() -> ooqeom::Result<()> {
    let mi = read_fcidump(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/h2_sto3g.fcidump").as_ref())?;
    let h = jordan_wigner(&build_hamiltonian(&mi), 4)?;
    println!("H2/STO-3G: {} Pauli terms on 4 qubits", h.len());
    let mut terms: Vec<_> = h.iter().collect();
    terms.sort_by(|a, b| b.1.norm().total_cmp(&a.1.norm()));
    for (p, c) in terms.iter().take(8) {
        println!("  {:>+.8}  {}", c.re, p);
    }

    // number operator commutes with H
    let n = jordan_wigner(&FermionOperator::number(4), 4)?;
    println!("|[H, N]|max = {:.1e}", h.commutator(&n)?.max_abs());

    // {a_0, a_0^dag} = 1
    let a = jordan_wigner(&FermionOperator::annihilation(0), 4)?;
    let ad = a.adjoint();
    let anti = a.mul(&ad)?.add(&ad.mul(&a)?)?;
    let one = ooqeom::pauli::PauliSum::identity(4, Complex64::new(1.0, 0.0));
    println!("{{a0, a0+}} == 1: {}", anti.approx_eq(&one, 1e-14));
    Ok(())
}
