import random

import numpy as np
import pytest

from pathsums.circuit import CNOT, CZ, SWAP, TOF, Circuit, Gate, H, Rk, Rkdg, S, T, X, Y, Z
from pathsums.errors import ArityMismatch, IncompatibleSignature, InvalidGate
from pathsums.oracle import circuit_to_isometry, circuit_to_matrix, pathsum_to_matrix
from pathsums.pathsum import (Const, PathSum, canonicalize, compose, embed, from_circuit,
                              from_circuit_by_composition, gate_sum, identity_sum, internal_vars,
                              pretty, tensor)
from pathsums.polynomial import BoolPoly, Dyadic, PhasePoly, order, xvar, yvar

from _util import close, random_circuit, sh3_circuit, toffoli_circuit, x, y

X1, X2, X3 = xvar(1), xvar(2), xvar(3)
Y1, Y2, Y3 = yvar(1), yvar(2), yvar(3)


def ps(sig, paths, amp, phase, outs):
    return PathSum(tuple(sig), tuple(paths), amp, PhasePoly(phase), tuple(outs),
                   next_path=len(paths) + 1)


def m(*vs):
    return frozenset(vs)


class TestIdentity:
    def test_one_qubit(self):
        assert identity_sum(1) == ps([X1], [], 0, {}, [x(1)])

    def test_empty(self):
        e = identity_sum(0)
        assert e.n == 0 and e.m == 0 and np.allclose(pathsum_to_matrix(e), [[1]])

    def test_unit_law(self):
        xi = from_circuit(Circuit.on(2, [H(0), CNOT(0, 1), T(1)]))
        assert compose(xi, identity_sum(2)) == xi
        assert canonicalize(compose(identity_sum(2), xi)) == canonicalize(xi)


class TestGateSum:
    def test_t(self):
        assert gate_sum(T(0)) == ps([X1], [], 0, {m(X1): Dyadic(1, 3)}, [x(1)])
        assert np.allclose(pathsum_to_matrix(gate_sum(T(0))), np.diag([1, np.exp(1j * np.pi / 4)]))

    def test_h(self):
        assert gate_sum(H(0)) == ps([X1], [Y1], 1, {m(X1, Y1): Dyadic(1, 1)}, [y(1)])

    def test_y(self):
        assert gate_sum(Y(0)) == ps([X1], [], 0, {m(): Dyadic(1, 2), m(X1): Dyadic(1, 1)},
                                    [x(1) + BoolPoly.const(1)])
        assert np.allclose(pathsum_to_matrix(gate_sum(Y(0))), [[0, -1j], [1j, 0]])

    def test_rotations(self):
        assert gate_sum(Rk(5, 0)).phase == PhasePoly({m(X1): Dyadic(1, 5)})
        assert gate_sum(Rkdg(3, 0)).phase == PhasePoly({m(X1): Dyadic(7, 3)})
        assert gate_sum(Z(0)).phase == gate_sum(Rk(1, 0)).phase
        assert gate_sum(S(0)).phase == gate_sum(Rk(2, 0)).phase

    def test_multi_qubit(self):
        assert gate_sum(CNOT(0, 1)).outputs == (x(1), x(1) + x(2))
        assert gate_sum(CZ(0, 1)).phase == PhasePoly({m(X1, X2): Dyadic(1, 1)})
        assert gate_sum(SWAP(0, 1)).outputs == (x(2), x(1))
        assert gate_sum(TOF(0, 1, 2, 3)).outputs[3] == x(4) + BoolPoly((m(X1, X2, X3),))

    @pytest.mark.parametrize("g", [H(0), X(0), Y(0), Z(0), S(0), T(0), Rk(4, 0), Rkdg(6, 0),
                                   Gate("Sdg", (0,)), Gate("Tdg", (0,)), CNOT(0, 1), CNOT(1, 0),
                                   CZ(0, 1), SWAP(0, 1), TOF(0, 1, 2), TOF(2, 0, 1)])
    def test_matches_gate_matrix(self, g):
        n = max(g.qubits) + 1
        c = Circuit.on(n, [g])
        assert close(pathsum_to_matrix(from_circuit(c)), circuit_to_matrix(c))

    def test_invalid_k(self):
        with pytest.raises(InvalidGate):
            Rk(0, 0)


class TestCompose:
    def test_hh(self):
        hh = compose(gate_sum(H(0)), gate_sum(H(0)))
        want = ps([X1], [Y1, Y2], 2, {m(X1, Y1): Dyadic(1, 1), m(Y1, Y2): Dyadic(1, 1)}, [y(2)])
        assert hh == want
        assert close(pathsum_to_matrix(hh), np.eye(2))

    def test_cnot_substitution(self):
        first = ps([X1, X2, X3], [], 0, {}, [x(1), x(1) + x(2), x(3)])
        second = ps([X1, X2, X3], [], 0, {}, [x(1), x(2), x(2) + x(3)])
        got = compose(first, second)
        assert got.outputs == (x(1), x(1) + x(2), x(1) + x(2) + x(3))

    def test_arity(self):
        with pytest.raises(ArityMismatch):
            compose(identity_sum(1), identity_sum(2))

    def test_incompatible(self):
        anc = ps([Const(0)], [], 0, {}, [BoolPoly()])
        compose(identity_sum(1).replace(signature=(Const(0),), outputs=(BoolPoly(),)), anc)
        with pytest.raises(IncompatibleSignature) as e:
            compose(identity_sum(1), anc)
        assert e.value.index == 0

    def test_matrix_product_200(self):
        rng = random.Random(3)
        for _ in range(200):
            n = rng.randint(1, 4)
            a = from_circuit(random_circuit(rng, n, rng.randint(0, 8)))
            b = from_circuit(random_circuit(rng, n, rng.randint(0, 8)))
            got = pathsum_to_matrix(compose(a, b))
            assert close(got, pathsum_to_matrix(b) @ pathsum_to_matrix(a))

    def test_associativity(self):
        rng = random.Random(4)
        for _ in range(50):
            n = rng.randint(1, 3)
            a, b, c = (from_circuit(random_circuit(rng, n, 5)) for _ in range(3))
            assert canonicalize(compose(compose(a, b), c)) == canonicalize(compose(a, compose(b, c)))


class TestTensor:
    def test_unit(self):
        xi = gate_sum(H(0))
        assert tensor(xi, identity_sum(0)) == xi

    def test_kron(self):
        rng = random.Random(5)
        for _ in range(50):
            a = from_circuit(random_circuit(rng, rng.randint(1, 2), 4))
            b = from_circuit(random_circuit(rng, rng.randint(1, 2), 4))
            got = pathsum_to_matrix(tensor(a, b))
            assert close(got, np.kron(pathsum_to_matrix(a), pathsum_to_matrix(b)))

    def test_h_on_second(self):
        t = tensor(identity_sum(1), gate_sum(H(0)))
        assert canonicalize(t) == canonicalize(embed(gate_sum(H(0)), [1], 2))


class TestFromCircuit:
    def test_toffoli(self):
        got = from_circuit(toffoli_circuit())
        want = ps([X1, X2, X3], [Y1, Y2], 2,
                  {m(X3, Y1): Dyadic(1, 1), m(X1, X2, Y1): Dyadic(1, 1), m(Y1, Y2): Dyadic(1, 1)},
                  [x(1), x(2), y(2)])
        assert got == want

    def test_sh3(self):
        got = from_circuit(sh3_circuit())
        assert got.m == 3 and got.amp == 3 and got.outputs == (y(3),)
        assert close(pathsum_to_matrix(got), circuit_to_matrix(sh3_circuit()))

    def test_empty(self):
        assert from_circuit(Circuit.on(3)) == identity_sum(3)
        anc = from_circuit(Circuit.on(2, ancillas=[1]))
        assert anc.signature == (X1, Const(0)) and anc.outputs == (x(1), BoolPoly())

    def test_semantics_200(self):
        rng = random.Random(6)
        for _ in range(200):
            n = rng.randint(1, 6)
            anc = [q for q in range(n) if rng.random() < 0.2]
            c = random_circuit(rng, n, rng.randint(0, 30), anc)
            assert close(pathsum_to_matrix(from_circuit(c)), circuit_to_isometry(c))

    def test_m_equals_s(self):
        rng = random.Random(7)
        for _ in range(100):
            c = random_circuit(rng, 3, 20)
            xi = from_circuit(c)
            assert xi.m == xi.amp == c.h_count()
            xi.check()

    def test_fast_path_matches_composition(self):
        rng = random.Random(8)
        for _ in range(100):
            c = random_circuit(rng, rng.randint(1, 4), 15)
            assert from_circuit(c) == from_circuit_by_composition(c)

    def test_eager(self):
        rng = random.Random(9)
        for _ in range(50):
            c = random_circuit(rng, 3, 20)
            assert close(pathsum_to_matrix(from_circuit(c, reduce_eagerly=True)),
                         circuit_to_matrix(c))

    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    def test_canonical_clifford_rk_shape(self, k):
        # H alone already has an order-2 term, so the bound is max(k, 2)
        rng = random.Random(k)
        for _ in range(50):
            n = rng.randint(1, 4)
            gates = []
            for _ in range(20):
                r = rng.random()
                if r < 0.3:
                    gates.append(H(rng.randrange(n)))
                elif r < 0.6 or n < 2:
                    gates.append(rng.choice((Rk, Rkdg))(rng.randint(1, k), rng.randrange(n)))
                else:
                    gates.append(CNOT(*rng.sample(range(n), 2)))
            xi = from_circuit(Circuit.on(n, gates))
            assert all(f.is_linear() for f in xi.outputs)
            assert order(xi.phase) <= max(k, 2)
            assert xi.phase.max_exponent() <= k


class TestCanonicalize:
    def test_idempotent(self):
        rng = random.Random(10)
        for _ in range(50):
            xi = from_circuit(random_circuit(rng, 3, 15))
            c = canonicalize(xi)
            assert canonicalize(c) == c
            assert close(pathsum_to_matrix(c), pathsum_to_matrix(xi))

    def test_single_var(self):
        xi = ps([X1], [yvar(5)], 1, {m(X1, yvar(5)): Dyadic(1, 1)}, [BoolPoly.var(yvar(5))])
        assert canonicalize(xi) == gate_sum(H(0))

    def test_interleavings(self):
        f, g = H(0), T(1)
        a = canonicalize(from_circuit(Circuit.on(2, [f, g])))
        b = canonicalize(from_circuit(Circuit.on(2, [g, f])))
        assert a == b


class TestInternal:
    def test_examples(self):
        hh = compose(gate_sum(H(0)), gate_sum(H(0)))
        assert internal_vars(hh) == {Y1}
        assert internal_vars(identity_sum(3)) == frozenset()
        assert internal_vars(gate_sum(H(0))) == frozenset()


def test_pretty():
    assert pretty(from_circuit(toffoli_circuit())) == (
        "|x1 x2 x3> -> 1/sqrt(2^2) sum[y1 y2] e^{2pi i (1/2*x3*y1 + 1/2*y1*y2 + 1/2*x1*x2*y1)}"
        " |x1 x2 y2>")
