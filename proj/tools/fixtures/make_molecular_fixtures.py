#!/usr/bin/env python3
"""Regenerate the molecular FCIDUMP fixtures and their reference energies.

Requires pyscf. Writes <name>.fcidump files and manifest.json into the
output directory (default: tests/data next to this repository root).
"""
import argparse
import json
import os

from pyscf import fci, gto, mcscf, scf
from pyscf.tools import fcidump


def chain(n, spacing):
    return [("H", (0.0, 0.0, i * spacing)) for i in range(n)]


FIXTURES = {
    "h2_sto3g": dict(atom=chain(2, 0.7414), basis="sto-3g"),
    "h2_stretched": dict(atom=chain(2, 1.8), basis="sto-3g"),
    "h4_chain": dict(atom=chain(4, 1.0), basis="sto-3g"),
    "h4_stretched": dict(atom=chain(4, 1.5), basis="sto-3g"),
    "h4_alternating": dict(
        atom=[("H", (0, 0, 0.0)), ("H", (0, 0, 1.0)),
              ("H", (0, 0, 2.5)), ("H", (0, 0, 3.5))],
        basis="sto-3g"),
    "h6_chain": dict(atom=chain(6, 1.0), basis="sto-3g"),
    "lih_sto3g_fc": dict(atom=[("Li", (0, 0, 0)), ("H", (0, 0, 1.6))],
                         basis="sto-3g", frozen=1),
}


def build(name, spec, outdir):
    mol = gto.M(atom=spec["atom"], basis=spec["basis"], unit="Angstrom",
                verbose=0)
    mf = scf.RHF(mol)
    mf.conv_tol = 1e-13
    mf.kernel()
    assert mf.converged, name
    frozen = spec.get("frozen", 0)
    norb = mol.nao - frozen
    nelec = mol.nelectron - 2 * frozen
    cas = mcscf.CASCI(mf, norb, nelec)
    h1, ecore = cas.get_h1eff()
    eri = cas.get_h2eff()
    path = os.path.join(outdir, name + ".fcidump")
    fcidump.from_integrals(path, h1, eri, norb, nelec, nuc=ecore, ms=0,
                           tol=1e-15, float_format=" %.17e")
    e_fci, _ = fci.direct_spin1.kernel(h1, eri, norb, nelec, ecore=ecore,
                                       conv_tol=1e-13)
    return {
        "file": name + ".fcidump",
        "n_spatial": norb,
        "n_electrons": nelec,
        "frozen": frozen,
        "e_hf": float(mf.e_tot),
        "e_fci": float(e_fci),
        "basis": spec["basis"],
    }


def main():
    here = os.path.dirname(os.path.abspath(__file__))
    parser = argparse.ArgumentParser()
    parser.add_argument("--out", default=os.path.join(here, "..", "..",
                                                      "tests", "data"))
    args = parser.parse_args()
    os.makedirs(args.out, exist_ok=True)
    manifest = {"schema": 1, "generator": "pyscf", "fixtures": {}}
    for name, spec in FIXTURES.items():
        manifest["fixtures"][name] = build(name, spec, args.out)
        print(name, manifest["fixtures"][name])
    with open(os.path.join(args.out, "manifest.json"), "w") as f:
        json.dump(manifest, f, indent=2, sort_keys=True)
        f.write("\n")


if __name__ == "__main__":
    main()
