"""Regenerate the Hamiltonian fixtures in this directory.

Requires pyscf and numpy. Builds STO-3G molecular Hamiltonians, maps them to
qubits (parity with Z2 two-qubit reduction, parity without reduction, or
Jordan-Wigner with symmetry tapering), decomposes them into Pauli strings
and writes one JSON file per (system, distance).

Qubit labels are big-endian: the leftmost letter of a Pauli string acts on
qubit 0, which is the most significant bit of a basis-state index.
"""

import itertools
import json
import pathlib

import numpy as np
from pyscf import ao2mo, gto, scf

OUT = pathlib.Path(__file__).resolve().parent
DISTANCES = [0.5, 0.735, 1.0, 1.5, 2.0, 2.5]
PRUNE = 1e-12

PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.diag([1.0, -1.0]).astype(complex),
}


def integrals(atoms, spin):
    mol = gto.M(atom=atoms, basis="sto-3g", spin=spin, unit="Angstrom", verbose=0)
    mf = scf.ROHF(mol) if spin else scf.RHF(mol)
    mf.conv_tol = 1e-12
    mf.kernel()
    if not mf.converged:
        raise RuntimeError(f"SCF did not converge for {atoms}")
    c = mf.mo_coeff
    h1 = c.T @ mf.get_hcore() @ c
    m = c.shape[1]
    eri = ao2mo.restore(1, ao2mo.kernel(mol, c), m)
    return mol, c, h1, eri, mol.energy_nuc()


def fock_matrix(h1, eri):
    """Dense second-quantized Hamiltonian in the occupation basis.

    Spin orbitals are ordered alpha block then beta block; orbital j is
    qubit j (bit n-1-j of the index). Jordan-Wigner sign convention.
    """
    m = h1.shape[0]
    n = 2 * m
    dim = 1 << n

    def occ(state, j):
        return (state >> (n - 1 - j)) & 1

    def annihilate(state, j):
        if state is None or not occ(state, j):
            return None, 0
        sign = (-1) ** sum(occ(state, k) for k in range(j))
        return state ^ (1 << (n - 1 - j)), sign

    def create(state, j):
        if state is None or occ(state, j):
            return None, 0
        sign = (-1) ** sum(occ(state, k) for k in range(j))
        return state ^ (1 << (n - 1 - j)), sign

    def spatial(j):
        return j % m, j // m

    hmat = np.zeros((dim, dim))
    for ket in range(dim):
        for p in range(n):
            for q in range(n):
                (pp, sp), (qq, sq) = spatial(p), spatial(q)
                if sp != sq or abs(h1[pp, qq]) < 1e-15:
                    continue
                s1, a = annihilate(ket, q)
                s2, b = create(s1, p)
                if s2 is not None:
                    hmat[s2, ket] += h1[pp, qq] * a * b
        # 1/2 sum (pq|rs) a+_p a+_r a_s a_q
        for p, q, r, s in itertools.product(range(n), repeat=4):
            (pp, sp), (qq, sq), (rr, sr), (ss, ssp) = map(spatial, (p, q, r, s))
            if sp != sq or sr != ssp:
                continue
            v = eri[pp, qq, rr, ss]
            if abs(v) < 1e-15:
                continue
            st, sign = ket, 1
            for op, j in (("a", q), ("a", s), ("c", r), ("c", p)):
                st, f = (annihilate if op == "a" else create)(st, j)
                if st is None:
                    break
                sign *= f
            if st is not None:
                hmat[st, ket] += 0.5 * v * sign
    return hmat


def parity_permutation(n):
    perm = np.zeros(1 << n, dtype=int)
    for state in range(1 << n):
        bits = [(state >> (n - 1 - j)) & 1 for j in range(n)]
        par = np.cumsum(bits) % 2
        perm[state] = int("".join(map(str, par)), 2)
    return perm


def restrict(hmat, n, keep, fixed):
    """Sector restriction: `keep` lists full-register qubits that become the
    reduced qubits (in order); every other qubit is a function of the kept ones
    given by `fixed(bits) -> full bit list`."""
    k = len(keep)
    index = []
    for r in range(1 << k):
        kept = [(r >> (k - 1 - i)) & 1 for i in range(k)]
        full = fixed(kept)
        index.append(int("".join(map(str, full)), 2))
    index = np.array(index)
    return hmat[np.ix_(index, index)]


def pauli_decompose(mat):
    k = int(round(np.log2(mat.shape[0])))
    terms = []
    for letters in itertools.product("IXYZ", repeat=k):
        p = np.array([[1.0 + 0j]])
        for l in letters:
            p = np.kron(p, PAULI[l])
        c = np.trace(p @ mat).real / mat.shape[0]
        if abs(c) >= PRUNE:
            terms.append(("".join(letters), c))
    return terms


def write_fixture(name, hmat, enuc, meta):
    terms = pauli_decompose(hmat)
    k = len(terms[0][0])
    ident = "I" * k
    constant = enuc + sum(c for s, c in terms if s == ident)
    terms = [{"pauli": s, "coeff": c} for s, c in terms if s != ident]
    exact = float(np.linalg.eigvalsh(hmat)[0] + enuc)
    doc = {
        "n_qubits": k,
        "terms": terms,
        "constant": constant,
        "exact_energy": exact,
        "meta": meta,
    }
    path = OUT / f"{name}.json"
    path.write_text(json.dumps(doc, indent=2) + "\n")
    print(f"{path.name}: {len(terms)} terms, exact {exact:.10f}")


def h2_two_qubit(d):
    _, _, h1, eri, enuc = integrals(f"H 0 0 0; H 0 0 {d}", 0)
    full = fock_matrix(h1, eri)
    perm = parity_permutation(4)
    par = np.zeros_like(full)
    par[np.ix_(perm, perm)] = full
    # parity qubits b1 (alpha number parity) = 1 and b3 (total parity) = 0;
    # reduced qubit 0 is b2, reduced qubit 1 is b0 so Hartree-Fock is |01>.
    red = restrict(par, 4, [2, 0], lambda kb: [kb[1], 1, kb[0], 0])
    return red, enuc


def h2_four_qubit(d):
    _, _, h1, eri, enuc = integrals(f"H 0 0 0; H 0 0 {d}", 0)
    full = fock_matrix(h1, eri)
    perm = parity_permutation(4)
    par = np.zeros_like(full)
    par[np.ix_(perm, perm)] = full
    return par, enuc


def h3_three_qubit(d):
    mol, c, h1, eri, enuc = integrals(f"H 0 0 0; H 0 0 {d}; H 0 0 {2 * d}", 1)
    # inversion parity of each molecular orbital (atoms 0 and 2 exchange)
    ungerade = [bool(np.sign(c[0, j]) == -np.sign(c[2, j]) and abs(c[0, j]) > 1e-8) for j in range(3)]
    assert ungerade == [False, True, False], ungerade
    full = fock_matrix(h1, eri)
    # qubits: a0 a1 a2 b0 b1 b2. Sector: alpha parity even, beta parity odd,
    # ungerade occupation (a1 + b1) odd, matching Hartree-Fock a0 a1 b0.
    # Reduced qubits are (a2, a1, b2) so Hartree-Fock is |010>.
    def fill(kb):
        a2, a1, b2 = kb
        a0 = (a1 + a2) % 2
        b1 = (1 + a1) % 2
        b0 = (1 + b1 + b2) % 2
        return [a0, a1, a2, b0, b1, b2]

    red = restrict(full, 6, [2, 1, 5], fill)
    return red, enuc


def main():
    for d in DISTANCES:
        tag = f"{d:.3f}".rstrip("0").rstrip(".").replace(".", "p")
        red, enuc = h2_two_qubit(d)
        write_fixture(
            f"h2_2q_{tag}",
            red,
            enuc,
            {"molecule": "H2", "distance_angstrom": d, "mapping": "parity, Z2 two-qubit reduction", "basis": "sto-3g"},
        )
        par, enuc = h3_three_qubit(d)
        write_fixture(
            f"h3_3q_{tag}",
            par,
            enuc,
            {"molecule": "H3 linear chain", "distance_angstrom": d, "mapping": "jordan-wigner, Z2 symmetry tapering", "basis": "sto-3g"},
        )
        par, enuc = h2_four_qubit(d)
        write_fixture(
            f"h2_4q_{tag}",
            par,
            enuc,
            {"molecule": "H2", "distance_angstrom": d, "mapping": "parity, no reduction", "basis": "sto-3g"},
        )


if __name__ == "__main__":
    main()
