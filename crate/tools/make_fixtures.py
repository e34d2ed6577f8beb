#!/usr/bin/env python3
"""Regenerate the integral fixtures under crates/core/tests/data.

Requires pyscf. Every system is run as closed-shell RHF; the FCIDUMP holds the
integrals in the canonical RHF MO basis and the PROPINTS files hold property
integrals in the same MO basis with the gauge origin at (0, 0, 0).

Magnetic integrals are stored as M = -1/2 <p| r x nabla |q>, so that the
rotational strength is the plain dot product of the electric and magnetic
transition moment vectors.

references.json collects independent numbers (FCI, CASSCF, MP2) used by the
test suite.
"""
import json
import os

import numpy as np
from pyscf import fci, gto, mcscf, mp, scf
from pyscf.tools import fcidump

OUT = os.path.join(os.path.dirname(__file__), "..", "crates", "core", "tests", "data")

SYSTEMS = {
    "h2_sto3g": dict(atom="H 0 0 0; H 0 0 0.7414", basis="sto-3g"),
    "h2_631g": dict(atom="H 0 0 0; H 0 0 0.7414", basis="6-31g"),
    "lih_sto3g": dict(atom="Li 0 0 0; H 0 0 1.5949", basis="sto-3g"),
    # chain H1-H2-H3-H4 with a 120 degree dihedral around the H2-H3 axis
    "h4_twisted_sto3g": dict(
        atom="H 0.75 0 0; H 0 0 0; H 0 0 1.5; H %.10f %.10f 1.5"
        % (0.75 * np.cos(np.radians(120.0)), 0.75 * np.sin(np.radians(120.0))),
        basis="sto-3g",
    ),
    "beh2_sto3g": dict(atom="Be 0 0 0; H 0 0 1.3264; H 0 0 -1.3264", basis="sto-3g"),
    "beh2_631g": dict(atom="Be 0 0 0; H 0 0 1.3264; H 0 0 -1.3264", basis="6-31g"),
}

# (n_active_electrons, n_active_orbitals) for CASSCF references
CAS = {"lih_sto3g": (2, 2), "beh2_sto3g": (4, 4), "beh2_631g": (4, 4)}


def write_props(path, kind, mats, antisym):
    n = mats[0].shape[0]
    with open(path, "w") as f:
        f.write("PROPINTS %s NORB=%d ORIGIN=0.0 0.0 0.0\n" % (kind, n))
        for comp, m in zip("xyz", mats):
            for i in range(n):
                for j in range(n):
                    if not antisym and j > i:
                        continue
                    if abs(m[i, j]) < 1e-15:
                        continue
                    f.write("%s %d %d %.16e\n" % (comp, i + 1, j + 1, m[i, j]))


def main():
    os.makedirs(OUT, exist_ok=True)
    refs = {}
    for name, spec in SYSTEMS.items():
        mol = gto.M(atom=spec["atom"], basis=spec["basis"], unit="Angstrom", verbose=0)
        mf = scf.RHF(mol)
        mf.conv_tol = 1e-12
        mf.kernel()
        c = mf.mo_coeff
        fcidump.from_scf(mf, os.path.join(OUT, name + ".fcidump"), tol=1e-15)

        with mol.with_common_orig((0.0, 0.0, 0.0)):
            r = mol.intor("int1e_r", comp=3)
            rxnabla = mol.intor("int1e_cg_irxp", comp=3, hermi=2)
        dip = [c.T @ r[k] @ c for k in range(3)]
        mag = [-0.5 * (c.T @ rxnabla[k] @ c) for k in range(3)]
        write_props(os.path.join(OUT, name + ".dipole"), "electric_dipole", dip, False)
        write_props(os.path.join(OUT, name + ".magnetic"), "magnetic_dipole", mag, True)

        ref = {"hf_energy": mf.e_tot, "norb": mol.nao_nr(), "nelec": mol.nelectron}
        pt = mp.MP2(mf).run(verbose=0)
        ref["mp2_correlation"] = pt.e_corr
        occ = np.linalg.eigvalsh(pt.make_rdm1())[::-1]
        ref["mp2_natural_occupations"] = occ.tolist()
        if mol.nao_nr() <= 7:
            cis = fci.FCI(mf)
            cis.nroots = 12
            e, v = cis.kernel()
            ss = [cis.spin_square(vi, mol.nao_nr(), mol.nelectron)[0] for vi in v]
            ref["fci_energy"] = float(e[0])
            ref["fci_singlet_energies"] = [float(x) for x, s in zip(e, ss) if abs(s) < 1e-6]
        if name in CAS:
            ne, no = CAS[name]
            mc = mcscf.CASSCF(mf, no, ne)
            mc.conv_tol = 1e-11
            mc.verbose = 0
            mc.kernel()
            ref["casscf_energy"] = mc.e_tot
            # same CAS started from MP2 natural orbitals; can reach a lower minimum
            dm = pt.make_rdm1()
            w, u = np.linalg.eigh(dm)
            nat = c @ u[:, np.argsort(-w)]
            mc2 = mcscf.CASSCF(mf, no, ne)
            mc2.conv_tol = 1e-11
            mc2.verbose = 0
            mc2.kernel(nat)
            ref["casscf_energy_mp2_start"] = mc2.e_tot
            ref["cas"] = [ne, no]
        refs[name] = ref
        print(name, ref["hf_energy"], ref.get("fci_energy"), ref.get("casscf_energy"))

    with open(os.path.join(OUT, "references.json"), "w") as f:
        json.dump(refs, f, indent=2, sort_keys=True)
        f.write("\n")


if __name__ == "__main__":
    main()
