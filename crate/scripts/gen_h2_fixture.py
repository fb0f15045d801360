"""Generate the H2 (0.735 A, STO-3G) fermionic term list used by the test suite.

Modes are block-ordered by spin: spatial orbital i maps to mode i (alpha)
and mode i + n_orb (beta). The Hamiltonian is

    H = sum_pq h_pq a+_p a_q + 1/2 sum_pqrs (pq|rs) a+_p a+_r a_s a_q

with the nuclear repulsion constant omitted.

Usage: python scripts/gen_h2_fixture.py > crates/core/tests/data/h2_sto3g.json
"""

import json

import numpy as np
from pyscf import ao2mo, gto, scf

TOL = 1e-10


def main():
    mol = gto.M(atom="H 0 0 0; H 0 0 0.735", basis="sto-3g", unit="Angstrom")
    mf = scf.RHF(mol).run(verbose=0)
    c = mf.mo_coeff
    h1 = c.T @ mf.get_hcore() @ c
    norb = h1.shape[0]
    h2 = ao2mo.restore(1, ao2mo.kernel(mol, c), norb)

    n = 2 * norb
    terms = []

    def spin(m):
        return m // norb

    def orb(m):
        return m % norb

    for p in range(n):
        for q in range(n):
            if spin(p) != spin(q):
                continue
            v = h1[orb(p), orb(q)]
            if abs(v) > TOL:
                terms.append({"coeff": [float(v), 0.0], "ops": [["c", p], ["a", q]]})

    for p in range(n):
        for q in range(n):
            for r in range(n):
                for s in range(n):
                    if spin(p) != spin(q) or spin(r) != spin(s):
                        continue
                    if p == r or q == s:
                        continue
                    v = 0.5 * h2[orb(p), orb(q), orb(r), orb(s)]
                    if abs(v) > TOL:
                        terms.append(
                            {
                                "coeff": [float(v), 0.0],
                                "ops": [["c", p], ["c", r], ["a", s], ["a", q]],
                            }
                        )

    print(json.dumps({"n_modes": n, "hermitian": True, "terms": terms}, indent=1))


if __name__ == "__main__":
    np.set_printoptions(precision=12)
    main()
