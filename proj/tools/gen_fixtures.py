#!/usr/bin/env python3
# Copyright 2026 The qas-sim Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates the committed integral fixtures under data/ with PySCF.

Integrals are expressed in the RHF canonical molecular-orbital basis. The
FCIDUMP holds h_pq (kinetic + nuclear attraction), the chemists'-notation
two-electron tensor (pq|rs) and the nuclear repulsion. The sidecar holds the
kinetic and nuclear-attraction parts of h_pq separately.

Usage: python3 tools/gen_fixtures.py [outdir]
"""
import sys

import numpy as np
from pyscf import ao2mo, gto, scf

TOL = 1e-14


def write_fixture(mol, stem, outdir):
    mf = scf.RHF(mol)
    mf.conv_tol = 1e-13
    mf.kernel()
    c = mf.mo_coeff
    norb = c.shape[1]
    t = c.T @ mol.intor("int1e_kin") @ c
    v = c.T @ mol.intor("int1e_nuc") @ c
    h = t + v
    eri = ao2mo.restore(1, ao2mo.kernel(mol, c), norb)
    nelec = mol.nelectron

    with open(f"{outdir}/{stem}.fcidump", "w") as f:
        f.write(f" &FCI NORB={norb:d},NELEC={nelec:d},MS2={mol.spin:d},\n")
        f.write("  ORBSYM=" + "1," * norb + "\n")
        f.write("  ISYM=1,\n &END\n")
        for p in range(norb):
            for q in range(p + 1):
                for r in range(norb):
                    for s in range(r + 1):
                        if p * (p + 1) // 2 + q < r * (r + 1) // 2 + s:
                            continue
                        val = eri[p, q, r, s]
                        if abs(val) > TOL:
                            f.write(f"{val: .16e} {p+1:4d} {q+1:4d} {r+1:4d} {s+1:4d}\n")
        for p in range(norb):
            for q in range(p + 1):
                if abs(h[p, q]) > TOL:
                    f.write(f"{h[p, q]: .16e} {p+1:4d} {q+1:4d}    0    0\n")
        f.write(f"{mol.energy_nuc(): .16e}    0    0    0    0\n")

    with open(f"{outdir}/{stem}.split", "w") as f:
        for name, m in (("KINETIC", t), ("POTENTIAL", v)):
            f.write(f"&{name}\n")
            for p in range(norb):
                for q in range(p + 1):
                    if abs(m[p, q]) > TOL:
                        f.write(f"{m[p, q]: .16e} {p+1:4d} {q+1:4d}\n")
            f.write("&END\n")

    print(f"{stem}: norb={norb} e_hf={mf.e_tot:.10f} e_nuc={mol.energy_nuc():.10f}")


def main():
    outdir = sys.argv[1] if len(sys.argv) > 1 else "data"
    he = gto.M(atom="He 0 0 0", basis="6-31g", unit="Bohr", verbose=0)
    write_fixture(he, "he_631g", outdir)
    h2 = gto.M(atom="H 0 0 0; H 0 0 1.4", basis="6-31g", unit="Bohr", verbose=0)
    write_fixture(h2, "h2_631g", outdir)


if __name__ == "__main__":
    main()
