"""Dense-matrix reference semantics for small circuits and path-sums.

Basis ordering: qubit 0 (the first signature coordinate) is the most
significant bit of the row/column index.
"""
from __future__ import annotations

import numpy as np

from .circuit import Circuit, Gate
from .errors import ShapeMismatch, TooLarge
from .pathsum import Const, PathSum

MAX_QUBITS = 12
MAX_PATH_VARS = 22

_SQ2 = 1 / np.sqrt(2)


def gate_matrix(g: Gate) -> np.ndarray:
    """Matrix of a gate on its own operands (first operand most significant)."""
    name = g.name
    if name == "H":
        return np.array([[1, 1], [1, -1]], dtype=complex) * _SQ2
    if name == "X":
        return np.array([[0, 1], [1, 0]], dtype=complex)
    if name == "Y":
        return np.array([[0, -1j], [1j, 0]], dtype=complex)
    phases = {"Z": 0.5, "S": 0.25, "Sdg": -0.25, "T": 0.125, "Tdg": -0.125}
    if name in phases or name in ("Rk", "Rkdg"):
        t = phases.get(name)
        if t is None:
            t = 2.0 ** -g.k * (1 if name == "Rk" else -1)
        return np.diag([1, np.exp(2j * np.pi * t)])
    if name == "CNOT":
        return np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)
    if name == "CZ":
        return np.diag([1, 1, 1, -1]).astype(complex)
    if name == "SWAP":
        return np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex)
    if name == "TOF":
        k = len(g.qubits)
        d = 1 << k
        u = np.eye(d, dtype=complex)
        u[[d - 2, d - 1]] = u[[d - 1, d - 2]]
        return u
    raise ValueError(name)


def _apply(state: np.ndarray, g: Gate, n: int) -> np.ndarray:
    """Apply a gate to every column of a (2,)*n + (cols,) tensor."""
    k = len(g.qubits)
    u = gate_matrix(g).reshape((2,) * (2 * k))
    out = np.tensordot(u, state, axes=(list(range(k, 2 * k)), list(g.qubits)))
    # tensordot puts the gate's output axes first; move them back into place
    rest = [i for i in range(n) if i not in g.qubits]
    order = list(g.qubits) + rest + [n]
    return np.moveaxis(out, list(range(n + 1)), order)


def circuit_to_matrix(c: Circuit) -> np.ndarray:
    """Unitary of the circuit (ancilla initialization is ignored here)."""
    n = c.n
    if n > MAX_QUBITS:
        raise TooLarge(f"{n} qubits exceeds {MAX_QUBITS}")
    dim = 1 << n
    state = np.eye(dim, dtype=complex).reshape((2,) * n + (dim,))
    for g in c.gates:
        state = _apply(state, g, n)
    return state.reshape(dim, dim)


def circuit_to_isometry(c: Circuit) -> np.ndarray:
    """Unitary with columns outside the ancilla-zero subspace zeroed."""
    u = circuit_to_matrix(c)
    mask = _domain_mask([None if f else 0 for f in c.input_flags()])
    return u * mask[None, :]


def _domain_mask(fixed) -> np.ndarray:
    n = len(fixed)
    idx = np.arange(1 << n)
    ok = np.ones(1 << n, dtype=bool)
    for i, b in enumerate(fixed):
        if b is not None:
            ok &= ((idx >> (n - 1 - i)) & 1) == b
    return ok


def pathsum_to_matrix(xi: PathSum) -> np.ndarray:
    """Evaluate the associated operator by brute-force summation over paths.

    Columns whose bits disagree with constant signature entries are zero.
    """
    n = xi.n
    free = [e for e in xi.signature if not isinstance(e, Const)]
    if n > MAX_QUBITS or len(free) > MAX_QUBITS:
        raise TooLarge(f"{n} qubits exceeds {MAX_QUBITS}")
    if xi.m > MAX_PATH_VARS:
        raise TooLarge(f"{xi.m} path variables exceeds {MAX_PATH_VARS}")
    nvars = len(free) + xi.m
    allvars = list(free) + list(xi.path_vars)
    pos = {v: i for i, v in enumerate(allvars)}
    dim = 1 << n
    mat = np.zeros((dim, dim), dtype=complex)
    # enumerate inputs x paths in chunks to bound memory
    total = 1 << nvars
    chunk = 1 << 18
    scale = 2.0 ** (-xi.amp / 2)
    phase_terms = [(list(m), float(c)) for m, c in xi.phase.terms.items()]
    out_terms = [[list(m) for m in f.monomials] for f in xi.outputs]
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        bits = {v: ((idx >> (nvars - 1 - i)) & 1).astype(np.int8) for v, i in pos.items()}
        ones = np.ones(len(idx), dtype=np.int8)

        def mono(m):
            r = ones
            for v in m:
                r = r & bits[v]
            return r

        ph = np.zeros(len(idx))
        for m, c in phase_terms:
            ph += c * mono(m)
        row = np.zeros(len(idx), dtype=np.int64)
        for f in out_terms:
            b = np.zeros(len(idx), dtype=np.int8)
            for m in f:
                b ^= mono(m)
            row = (row << 1) | b
        col = np.zeros(len(idx), dtype=np.int64)
        for e in xi.signature:
            b = np.full(len(idx), e.bit, dtype=np.int8) if isinstance(e, Const) else bits[e]
            col = (col << 1) | b
        np.add.at(mat, (row, col), scale * np.exp(2j * np.pi * ph))
    return mat


def approx_equal(a: np.ndarray, b: np.ndarray, tol: float = 1e-9,
                 up_to_global_phase: bool = False) -> bool:
    if a.shape != b.shape:
        raise ShapeMismatch(f"{a.shape} vs {b.shape}")
    if up_to_global_phase:
        i = np.unravel_index(np.argmax(np.abs(a)), a.shape)
        if abs(a[i]) > tol:
            if abs(b[i]) <= tol:
                return False
            a = a * (b[i] / a[i]) / abs(b[i] / a[i])
    return bool(np.max(np.abs(a - b), initial=0.0) <= tol)


def identity_on_domain(xi: PathSum) -> np.ndarray:
    """The identity restricted to the sum's constant-signature subspace."""
    fixed = [e.bit if isinstance(e, Const) else None for e in xi.signature]
    return np.diag(_domain_mask(fixed).astype(complex))
