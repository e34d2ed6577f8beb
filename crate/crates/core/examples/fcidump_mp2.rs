//! Read an FCIDUMP, report HF and MP2 numbers, and round-trip the file.

use ooqeom::integrals::{hf_energy, mp2_natural_orbitals, parse_fcidump, read_fcidump, write_fcidump};

fn main() -> ooqeom::Result<()> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/beh2_sto3g.fcidump").into());
    let mi = read_fcidump(path.as_ref())?;
    println!("{}: {} orbitals, {} electrons", path, mi.n_spatial(), mi.n_electrons);
    println!("E(HF)  = {:.10}", hf_energy(&mi));

    let no = mp2_natural_orbitals(&mi)?;
    println!("E(MP2) = {:.10}  (correlation {:.10})", hf_energy(&mi) + no.mp2_energy, no.mp2_energy);
    println!("natural occupations:");
    for (k, n) in no.occupations.iter().enumerate() {
        println!("  {:>2}  {:.8}", k + 1, n);
    }

    let back = parse_fcidump(&write_fcidump(&mi))?;
    let dh = (&back.h - &mi.h).amax();
    println!("round trip: max |dh| = {:.1e}, e_nuc equal: {}", dh, back.e_nuc == mi.e_nuc);
    Ok(())
}
