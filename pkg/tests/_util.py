"""Shared random generators and golden circuits for the test suite."""
import random
from itertools import product

import numpy as np

from pathsums.circuit import (CNOT, CZ, SWAP, TOF, Circuit, H, Rk, Rkdg, S, Sdg, T, Tdg, X, Y, Z,
                              toffoli_gates)
from pathsums.oracle import circuit_to_isometry, pathsum_to_matrix
from pathsums.pathsum import Const
from pathsums.polynomial import BoolPoly, Dyadic, PhasePoly, xvar, yvar

ONE_Q = (H, X, Y, Z, S, Sdg, T, Tdg)


def random_gate(rng, n, clifford_t_only=False):
    choices = ["1q", "1q", "1q", "cnot"]
    if not clifford_t_only:
        choices += ["rk", "cz", "swap", "tof"]
    kind = rng.choice(choices)
    if n < 2 and kind not in ("1q", "rk"):
        kind = "1q"
    if kind == "1q":
        return rng.choice(ONE_Q)(rng.randrange(n))
    if kind == "rk":
        return rng.choice((Rk, Rkdg))(rng.randint(1, 5), rng.randrange(n))
    if kind == "tof":
        k = rng.randint(2, min(3, n))
        return TOF(*rng.sample(range(n), k))
    ctor = {"cnot": CNOT, "cz": CZ, "swap": SWAP}[kind]
    return ctor(*rng.sample(range(n), 2))


def random_circuit(rng, n, ngates, ancillas=(), clifford_t_only=False):
    return Circuit.on(n, [random_gate(rng, n, clifford_t_only) for _ in range(ngates)], ancillas)


def random_boolpoly(rng, variables, nmonos, const=True):
    monos = []
    for _ in range(nmonos):
        k = rng.randint(0 if const else 1, min(3, len(variables)))
        monos.append(frozenset(rng.sample(list(variables), k)))
    return BoolPoly.from_counts(monos)


def random_phasepoly(rng, variables, nterms, max_exp=3, max_deg=3):
    terms = {}
    for _ in range(nterms):
        k = rng.randint(0, min(max_deg, len(variables)))
        m = frozenset(rng.sample(list(variables), k))
        e = rng.randint(1, max_exp)
        terms[m] = terms.get(m, Dyadic()) + Dyadic(rng.randrange(1, 1 << e), e)
    return PhasePoly(terms)


def assignments(variables):
    variables = list(variables)
    for bits in product((0, 1), repeat=len(variables)):
        yield dict(zip(variables, bits))


def close(a, b, tol=1e-9):
    return a.shape == b.shape and np.max(np.abs(a - b), initial=0.0) <= tol


def same_operator(xi, c):
    """Path-sum matrix vs. the circuit's isometry on the same domain."""
    return close(pathsum_to_matrix(xi), circuit_to_isometry(c))


# Golden circuits.

def toffoli_circuit():
    return Circuit.on(3, toffoli_gates(0, 1, 2))


def controlled_t_circuit():
    """Controlled-T on qubits 0, 1 with a clean ancilla on qubit 2."""
    a, b, c = 0, 1, 2
    cols = [[CNOT(a, b), H(c)], [Sdg(a), CNOT(b, c)], [CNOT(c, a)], [T(a), Tdg(c)],
            [CNOT(b, a)], [CNOT(b, c)], [T(a), Tdg(c)], [CNOT(a, c)], [H(a)], [T(a)], [H(a)],
            [CNOT(a, c)], [Tdg(a), T(c)], [CNOT(b, c)], [CNOT(b, a), T(c)], [Tdg(a)],
            [CNOT(c, a)], [S(a), CNOT(b, c)], [CNOT(a, b), H(c)]]
    return Circuit.on(3, [g for col in cols for g in col], ancillas=[2])


def sh3_circuit():
    return Circuit.on(1, [S(0), H(0)] * 3)


def full_adder_circuit():
    """One-bit full adder |a b c t> -> |a, a+b, a+b+c, maj(a,b,c)+t>."""
    g = [H(3), S(0), S(1), S(2), S(3), CNOT(0, 1), CNOT(2, 0), T(0), T(1), T(3),
         CNOT(0, 1), CNOT(3, 0), CNOT(1, 3), T(0), T(1), T(3), CNOT(1, 0), T(0), CNOT(2, 0),
         S(0), CNOT(3, 0), CNOT(1, 3), CNOT(2, 1), CNOT(0, 1), CNOT(1, 2), H(3)]
    return Circuit.on(4, g)


def bs16_circuit():
    a, b = 0, 1
    rep = [CNOT(a, b), X(a), T(b), H(b), T(b), H(b), Tdg(b), CNOT(a, b), X(a), T(b), H(b),
           Tdg(b), H(b), Tdg(b)]
    return Circuit.on(2, rep * 2)


def x(i):
    return BoolPoly.var(xvar(i))


def y(j):
    return BoolPoly.var(yvar(j))


def const_sig(bits):
    return tuple(Const(b) for b in bits)


def seeded(seed):
    return random.Random(seed)
