"""Benchmark circuit families with their path-sum specifications.

All generators are deterministic in their arguments; randomized families
draw from ``random.Random(seed)``.
"""
from __future__ import annotations

import random
from typing import List, Tuple

from .circuit import (CNOT, CZ, SWAP, Circuit, Gate, H, Rk, Rkdg, S, Sdg, T, Tdg, X, Z,
                      ccz_gates, toffoli_gates)
from .errors import EmptyCircuit, InvalidSize, SpecBlowup
from .pathsum import Const, PathSum
from .polynomial import BoolPoly, Dyadic, PhasePoly, xvar, yvar

#: monomial cap on a single carry polynomial of the adder specification
ADDER_SPEC_CAP = 1 << 16


def _spec(sig, outputs, path_vars=(), amp=0, phase=None) -> PathSum:
    pv = tuple(path_vars)
    return PathSum(tuple(sig), pv, amp, phase or PhasePoly(), tuple(outputs),
                   next_path=len(pv) + 1)


def gen_toffoli_n(n: int) -> Tuple[Circuit, PathSum]:
    """NOT on ``x_n`` controlled by ``x_1..x_{n-1}``, built from 2(n-3)+1 Toffolis
    and n-3 clean ancillas, each Toffoli expanded to Clifford+T."""
    if n < 3:
        raise InvalidSize("Toffoli_n needs n >= 3")
    k = n - 3
    names = [f"x{i + 1}" for i in range(n)] + [f"a{i + 1}" for i in range(k)]
    ctrl = list(range(n - 1))
    anc = list(range(n, n + k))
    chain: List[Tuple[int, int, int]] = []
    if k:
        chain.append((ctrl[0], ctrl[1], anc[0]))
        for i in range(1, k):
            chain.append((ctrl[i + 1], anc[i - 1], anc[i]))
        middle = (ctrl[-1], anc[-1], n - 1)
    else:
        middle = (0, 1, 2)
    gates: List[Gate] = []
    for t in chain + [middle] + chain[::-1]:
        gates.extend(toffoli_gates(*t))
    circ = Circuit(tuple(names), tuple(names[:n]), tuple(gates))
    xs = [xvar(i + 1) for i in range(n)]
    outs = [BoolPoly.var(v) for v in xs]
    outs[-1] = outs[-1] + BoolPoly((frozenset(xs[:-1]),))
    spec = _spec(xs + [Const(0)] * k, outs + [BoolPoly()] * k)
    return circ, spec


def _adder_outputs(n: int, cap: int) -> List[BoolPoly]:
    xs = [BoolPoly.var(xvar(i + 1)) for i in range(n)]
    ys = [BoolPoly.var(xvar(n + i + 1)) for i in range(n)]
    carry = BoolPoly()
    out = []
    for i in range(n):
        out.append(xs[i] + ys[i] + carry)
        if i + 1 < n:
            carry = xs[i] * ys[i] + xs[i] * carry + ys[i] * carry
            if len(carry) > cap:
                raise SpecBlowup(f"carry {i + 1} has {len(carry)} monomials (cap {cap})")
    return out


def gen_adder_n(n: int, cap: int = ADDER_SPEC_CAP) -> Tuple[Circuit, PathSum]:
    """Out-of-place ripple-carry adder on 5n qubits with 4(n-1) Toffolis.

    Layout: x (n), y (n), carries c0..c_{n-1} with c0 a zero carry-in, a
    scratch register holding x_i + y_i (n), and the output register (n).
    The output is ``x + y mod 2^n``; carries and scratch are restored to 0.
    """
    if n < 1:
        raise InvalidSize("Adder_n needs n >= 1")
    x = list(range(n))
    y = list(range(n, 2 * n))
    c = list(range(2 * n, 3 * n))
    t = list(range(3 * n, 4 * n))
    o = list(range(4 * n, 5 * n))
    names = ([f"x{i}" for i in range(n)] + [f"y{i}" for i in range(n)]
             + [f"c{i}" for i in range(n)] + [f"t{i}" for i in range(n)]
             + [f"s{i}" for i in range(n)])
    parity = [g for i in range(n) for g in (CNOT(x[i], t[i]), CNOT(y[i], t[i]))]
    carry: List[Gate] = []
    for i in range(n - 1):
        # c_{i+1} = x_i y_i + (x_i + y_i) c_i
        carry += toffoli_gates(x[i], y[i], c[i + 1])
        carry += toffoli_gates(t[i], c[i], c[i + 1])
    copy = [CNOT(t[i], o[i]) for i in range(n)] + [CNOT(c[i], o[i]) for i in range(n)]
    undo = [g.inverse() for g in reversed(carry)]
    gates = parity + carry + copy + undo + parity
    circ = Circuit(tuple(names), tuple(names[:2 * n]), tuple(gates))
    sig = [xvar(i + 1) for i in range(2 * n)] + [Const(0)] * (3 * n)
    outs = ([BoolPoly.var(v) for v in sig[:2 * n]] + [BoolPoly()] * (2 * n)
            + _adder_outputs(n, cap))
    return circ, _spec(sig, outs)


def controlled_rk(k: int, a: int, b: int) -> List[Gate]:
    """Controlled-R_k from R_{k+1} rotations and two CNOTs."""
    return [Rk(k + 1, a), Rk(k + 1, b), CNOT(a, b), Rkdg(k + 1, b), CNOT(a, b)]


def qft_spec(n: int) -> PathSum:
    """``|x> -> 2^(-n/2) sum_y e^{2 pi i x y / 2^n} |y>`` with ``x1``, ``y1`` least significant."""
    terms = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            e = n + 2 - i - j
            if e >= 1:
                terms[frozenset((xvar(i), yvar(j)))] = Dyadic(1, e)
    ys = [yvar(j) for j in range(1, n + 1)]
    return _spec([xvar(i) for i in range(1, n + 1)], [BoolPoly.var(v) for v in ys],
                  ys, n, PhasePoly(terms))


def gen_qft_n(n: int) -> Tuple[Circuit, PathSum]:
    """Hadamard/controlled-rotation ladder followed by a qubit reversal.

    Qubit ``i`` carries the bit of weight ``2^i``, so the ladder starts at
    the most significant qubit.
    """
    if n < 1:
        raise InvalidSize("QFT_n needs n >= 1")
    p = [n - 1 - j for j in range(n)]
    gates: List[Gate] = []
    for j in range(n):
        gates.append(H(p[j]))
        for k in range(j + 1, n):
            gates += controlled_rk(k - j + 1, p[k], p[j])
    for j in range(n // 2):
        gates.append(SWAP(p[j], p[n - 1 - j]))
    names = tuple(f"q{i + 1}" for i in range(n))
    return Circuit(names, names, tuple(gates)), qft_spec(n)


def _random_g(h: int, rounds: int, per_round: int, rng: random.Random):
    """Gate list for ``g``: each round is ``per_round`` random Z/CZ gates then one CCZ."""
    out = []
    for _ in range(rounds):
        for _ in range(per_round):
            if h >= 2 and rng.random() < 0.5:
                out.append(("CZ", tuple(rng.sample(range(h), 2))))
            else:
                out.append(("Z", (rng.randrange(h),)))
        if h >= 3:
            out.append(("CCZ", tuple(rng.sample(range(h), 3))))
    return out


def _oracle_g(gs, offset: int) -> List[Gate]:
    gates: List[Gate] = []
    for name, qs in gs:
        qs = [q + offset for q in qs]
        if name == "Z":
            gates.append(Z(qs[0]))
        elif name == "CZ":
            gates.append(CZ(*qs))
        else:
            gates += ccz_gates(*qs)
    return gates


def gen_hidden_shift(n: int, A: int, seed: int, symbolic: bool = False,
                     gates_per_round: int = 200) -> Tuple[Circuit, PathSum]:
    """Hidden-shift circuit for a Maiorana-McFarland bent function ``g(x) + x.y``.

    ``g`` is the function computed by the random Z/CZ/CCZ oracle.  The fixed
    variant applies the shift with X gates and maps ``|0>`` to ``|s>``; the
    symbolic variant reads the shift from an extra n-qubit register.
    """
    if n < 2 or n % 2:
        raise InvalidSize("hidden shift needs an even n >= 2")
    if A < 1:
        raise InvalidSize("hidden shift needs A >= 1")
    rng = random.Random(seed)
    h = n // 2
    gs = _random_g(h, A, gates_per_round, rng)
    s = [rng.randrange(2) for _ in range(n)]
    main = list(range(n))
    if symbolic:
        shift = [CNOT(n + i, i) for i in main]
    else:
        shift = [X(i) for i in main if s[i]]
    had = [H(i) for i in main]
    inner = [CZ(i, h + i) for i in range(h)]
    gates = (had + shift + inner + _oracle_g(gs, 0) + shift + had
             + inner + _oracle_g(gs, h) + had)
    names = [f"q{i + 1}" for i in main]
    if symbolic:
        names += [f"s{i + 1}" for i in main]
        circ = Circuit(tuple(names), tuple(names[n:]), tuple(gates))
        reg = [xvar(n + i + 1) for i in main]
        outs = [BoolPoly.var(v) for v in reg]
        spec = _spec([Const(0)] * n + reg, outs + outs)
    else:
        circ = Circuit(tuple(names), (), tuple(gates))
        spec = _spec([Const(0)] * n, [BoolPoly.const(b) for b in s])
    return circ, spec


_CLIFFORD_1Q = (H, S, Sdg, X, Z)
_CLIFFORD_2Q = (CNOT, CZ)


def gen_random_clifford(n: int, depth: int, seed: int) -> Circuit:
    """``depth`` gates drawn uniformly from H, S, S*, CNOT, CZ, X, Z."""
    return _random_circuit(n, depth, seed, _CLIFFORD_1Q)


def gen_random_clifford_t(n: int, depth: int, t_count: int, seed: int) -> Circuit:
    """A random Clifford circuit of ``depth`` gates with ``t_count`` T/T* gates
    inserted at random positions."""
    rng = random.Random(seed)
    gates = list(_random_circuit(n, depth, rng.randrange(1 << 30), _CLIFFORD_1Q).gates)
    for _ in range(t_count):
        g = rng.choice((T, Tdg))(rng.randrange(n))
        gates.insert(rng.randint(0, len(gates)), g)
    return Circuit.on(n, gates)


def _random_circuit(n: int, depth: int, seed: int, one_qubit) -> Circuit:
    if n < 1:
        raise InvalidSize("need at least one qubit")
    rng = random.Random(seed)
    pool = list(one_qubit) + (list(_CLIFFORD_2Q) if n >= 2 else [])
    gates = []
    for _ in range(depth):
        ctor = rng.choice(pool)
        if ctor in _CLIFFORD_2Q:
            gates.append(ctor(*rng.sample(range(n), 2)))
        else:
            gates.append(ctor(rng.randrange(n)))
    return Circuit.on(n, gates)


def mutate(c: Circuit, seed: int) -> Circuit:
    """Delete one uniformly chosen gate."""
    if not c.gates:
        raise EmptyCircuit("cannot mutate an empty circuit")
    i = random.Random(seed).randrange(len(c.gates))
    return c.with_gates(c.gates[:i] + c.gates[i + 1:])
