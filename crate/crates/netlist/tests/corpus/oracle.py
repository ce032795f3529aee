"""Independent numpy evaluation of the valid corpus.

Writes `<name>.expect` next to every `valid/*.qlnet`: one `re im` pair per
basis state, most-significant qubit first. Matrices are built from
matrix exponentials of Pauli generators rather than closed forms.

    python3 oracle.py
"""

import pathlib
import numpy as np
from scipy.linalg import expm

S1 = np.array([[0, 1], [1, 0]], dtype=complex)
S2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
S3 = np.array([[1, 0], [0, -1]], dtype=complex)


def segment(kind, L, db, p):
    h = L * db / 2
    if kind == "linear":
        g = S3
    elif kind == "rotlinear":
        g = np.cos(2 * p) * S3 + np.sin(2 * p) * S1
    elif kind == "rotaxis":
        return expm(1j * (L * db / 2 * S3 + L * p * S2))
    elif kind == "circular":
        g = S2
    elif kind == "combined":
        f, gg = (1 - p * p) / (1 + p * p), 2 * p / (1 + p * p)
        g = -f * S3 + gg * S2
    return expm(1j * h * g)


def u2(a, t, b):
    return expm(1j * a / 2 * S3) @ expm(1j * t / 2 * S1) @ expm(1j * b / 2 * S3)


def embed(u, targets, n):
    """Full 2^n matrix of `u` acting on `targets` (targets[0] = gate MSB)."""
    k = len(targets)
    dim = 1 << n
    out = np.zeros((dim, dim), dtype=complex)
    for col in range(dim):
        bits = [(col >> (n - 1 - q)) & 1 for q in range(n)]
        sub = 0
        for t in targets:
            sub = sub * 2 + bits[t]
        for r in range(1 << k):
            if u[r, sub] == 0:
                continue
            nb = list(bits)
            for i, t in enumerate(targets):
                nb[t] = (r >> (k - 1 - i)) & 1
            row = 0
            for b in nb:
                row = row * 2 + b
            out[row, col] += u[r, sub]
    return out


def qft(k):
    N = 1 << k
    j = np.arange(N)
    return np.exp(2j * np.pi * np.outer(j, j) / N) / np.sqrt(N)


def oracle(table, m, nout):
    dim = 1 << (m + nout)
    P = np.zeros((dim, dim))
    for x in range(1 << m):
        for y in range(1 << nout):
            P[(x << nout) | (y ^ table[x]), (x << nout) | y] = 1
    return P


def qubit_list(tok):
    if ".." in tok:
        a, b = tok.split("..")
        return list(range(int(a[1:]), int(b[1:]) + 1))
    return [int(q[1:]) for q in tok.split(",")]


def evaluate(path):
    n, psi, init = None, None, None
    for raw in path.read_text().splitlines():
        if raw.startswith("#! input"):
            init = raw.split()[2]
        toks = raw.split("#")[0].split()
        if not toks or toks[0] == "qlnet":
            continue
        kv = dict(t.split("=", 1) for t in toks if "=" in t)
        if toks[0] == "qubits":
            n = int(toks[1])
            psi = np.zeros(1 << n, dtype=complex)
            psi[int(init, 2) if init else 0] = 1
        elif toks[0] == "seg":
            p = float(kv.get("axis", kv.get("xi", kv.get("alpha", 0))))
            u = segment(toks[2], float(kv["L"]), float(kv["dbeta"]), p)
            psi = embed(u, qubit_list(toks[1]), n) @ psi
        elif toks[0] == "gate" and toks[2] == "u2":
            u = u2(float(kv["alpha"]), float(kv["theta"]), float(kv["beta"]))
            psi = embed(u, qubit_list(toks[1]), n) @ psi
        elif toks[0] == "gate" and toks[2] == "cphase":
            u = np.diag([1, 1, 1, np.exp(1j * float(kv["theta"]))])
            psi = embed(u, qubit_list(toks[1]), n) @ psi
        elif toks[0] == "qft":
            qs = qubit_list(toks[1])
            psi = embed(qft(len(qs)), qs, n) @ psi
        elif toks[0] == "oracle":
            rows = [l.split("#")[0].strip() for l in (path.parent / kv["table"]).read_text().splitlines()]
            rows = [r for r in rows if r]
            m, nout = int(np.log2(len(rows))), len(rows[0])
            qs = qubit_list(toks[1])
            psi = embed(oracle([int(r, 2) for r in rows], m, nout), qs, n) @ psi
    return psi


if __name__ == "__main__":
    for f in sorted((pathlib.Path(__file__).parent / "valid").glob("*.qlnet")):
        psi = evaluate(f)
        lines = [f"{a.real:.17e} {a.imag:.17e}" for a in psi]
        f.with_suffix(".expect").write_text("\n".join(lines) + "\n")
        print(f.name, np.round(np.abs(psi) ** 2, 4))
