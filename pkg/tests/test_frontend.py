import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pathsums.circuit import TOF, Circuit, Rk
from pathsums.errors import DuplicateQubit, ParseError, UndeclaredQubit
from pathsums.frontend import (parse_circuit, parse_pathsum_spec, print_circuit,
                               print_pathsum_spec)
from pathsums.generators import gen_adder_n, gen_qft_n, gen_toffoli_n, qft_spec
from pathsums.oracle import circuit_to_matrix
from pathsums.pathsum import Const, from_circuit
from pathsums.polynomial import BoolPoly, Dyadic, xvar, yvar

from _util import random_boolpoly, random_circuit, random_phasepoly

EXAMPLE = """\
.v a b c
.i a b
BEGIN
H c
tof a b c
T* b
END
"""

SPEC = """\
qubits: 3
inputs: x1 x2 0
paths: y1
amp: 1
phase: 1/2*x1*y1
out: x1, x2, y1
"""


class TestCircuit:
    def test_example(self):
        c = parse_circuit(EXAMPLE)
        assert c.qubits == ("a", "b", "c") and c.inputs == ("a", "b")
        assert [g.name for g in c.gates] == ["H", "TOF", "Tdg"]
        assert c.gates[1] == TOF(0, 1, 2)

    def test_ancilla_signature(self):
        xi = from_circuit(parse_circuit(EXAMPLE))
        assert xi.signature == (xvar(1), xvar(2), Const(0))

    def test_rk(self):
        c = parse_circuit(".v a\nBEGIN\nRk(4) a\nRk*(2) a\nEND\n")
        assert c.gates[0] == Rk(4, 0) and c.gates[1].name == "Rkdg"
        got = circuit_to_matrix(c.with_gates(c.gates[:1]))
        assert np.allclose(got, np.diag([1, np.exp(2j * np.pi / 16)]))

    def test_inputs_default_to_all(self):
        assert parse_circuit(".v p q\nBEGIN\nEND\n").inputs == ("p", "q")

    def test_comments_and_case(self):
        c = parse_circuit("# hi\n.v a b  # two\nbegin\nCNOT a b # x\nend\n\n# tail\n")
        assert c.gates[0].name == "CNOT"

    @pytest.mark.parametrize("text,err,line", [
        (".v a a\nBEGIN\nEND\n", DuplicateQubit, 1),
        (".v a\n.i b\nBEGIN\nEND\n", UndeclaredQubit, 2),
        (".v a\nBEGIN\nH b\nEND\n", UndeclaredQubit, 3),
        (".v a\nBEGIN\nfoo a\nEND\n", ParseError, 3),
        (".v a\nBEGIN\nH a\n", ParseError, None),
        (".v a\nBEGIN\nEND\nH a\n", ParseError, 4),
        (".v a b\nBEGIN\ncnot a\nEND\n", ParseError, 3),
        (".v a\nBEGIN\nRk(0) a\nEND\n", ParseError, 3),
        ("BEGIN\nEND\n", ParseError, 1),
    ])
    def test_errors(self, text, err, line):
        with pytest.raises(err) as e:
            parse_circuit(text)
        assert e.value.line == line

    def test_error_column(self):
        with pytest.raises(UndeclaredQubit) as e:
            parse_circuit(".v a\nBEGIN\ncnot a zz\nEND\n")
        assert (e.value.line, e.value.column) == (3, 8)

    def test_empty_roundtrip(self):
        c = Circuit.on(0)
        assert parse_circuit(print_circuit(c)) == c
        c = Circuit.on(3, ancillas=[0, 1, 2])
        assert parse_circuit(print_circuit(c)) == c

    def test_random_roundtrip(self):
        rng = random.Random(1)
        for _ in range(200):
            n = rng.randint(1, 5)
            anc = [q for q in range(n) if rng.random() < 0.3]
            c = random_circuit(rng, n, rng.randint(0, 20), anc)
            text = print_circuit(c)
            assert parse_circuit(text) == c
            assert print_circuit(parse_circuit(text)) == text


class TestSpec:
    def test_example(self):
        xi = parse_pathsum_spec(SPEC)
        assert xi.signature == (xvar(1), xvar(2), Const(0))
        assert xi.path_vars == (yvar(1),) and xi.amp == 1
        assert str(xi.phase) == "1/2*x1*y1"
        assert xi.outputs[2] == BoolPoly.var(yvar(1))

    def test_toffoli_roundtrip(self):
        text = "qubits: 3\ninputs: x1 x2 x3\nout: x1, x2, x3 + x1*x2\n"
        xi = parse_pathsum_spec(text)
        _, spec = gen_toffoli_n(3)
        assert xi == spec
        assert parse_pathsum_spec(print_pathsum_spec(xi)) == xi

    def test_qft4(self):
        text = ("qubits: 4\ninputs: x1 x2 x3 x4\npaths: y1 y2 y3 y4\namp: 4\n"
                "phase: 1/16*(x1+2*x2+4*x3+8*x4)*(y1+2*y2+4*y3+8*y4)\n"
                "out: y1, y2, y3, y4\n")
        xi = parse_pathsum_spec(text)
        assert xi == qft_spec(4)
        assert xi.phase.terms[frozenset((xvar(1), yvar(1)))] == Dyadic(1, 4)
        assert frozenset((xvar(4), yvar(4))) not in xi.phase.terms
        assert parse_pathsum_spec(print_pathsum_spec(xi)) == xi

    def test_phase_mod_one_and_outputs_mod_two(self):
        xi = parse_pathsum_spec("qubits: 1\ninputs: x1\nphase: 5/4 + 3*x1/2\nout: 3*x1 + 2\n")
        assert str(xi.phase) == "1/4 + 1/2*x1"
        assert xi.outputs[0] == BoolPoly.var(xvar(1))

    def test_zero_qubits(self):
        xi = parse_pathsum_spec("qubits: 0\ninputs:\nphase: 1/8\nout:\n")
        assert xi.n == 0 and parse_pathsum_spec(print_pathsum_spec(xi)) == xi

    @pytest.mark.parametrize("text", [
        "qubits: 1\ninputs: x1\nout: x2\n",
        "qubits: 1\ninputs: x1\nphase: 1/3*x1\nout: x1\n",
        "qubits: 1\ninputs: x1\nout: x1/2\n",
        "qubits: 2\ninputs: x1\nout: x1, 0\n",
        "qubits: 1\ninputs: y1\nout: 0\n",
        "qubits: 1\ninputs: x1\nout: x1, x1\n",
        "qubits: 1\ninputs: x1\nwat: 3\nout: x1\n",
        "qubits: one\ninputs: x1\nout: x1\n",
        "qubits: 1\ninputs: x1\nout: x1 +\n",
        "qubits: 1\ninputs: x1\nout: x1 ^ x1\n",
        "qubits: 1\ninputs: x1\nout: __import__('os')\n",
        "qubits: 1\ninputs: x1\nout: x1**100000\n",
        "inputs: x1\nout: x1\n",
    ])
    def test_errors(self, text):
        with pytest.raises(ParseError):
            parse_pathsum_spec(text)

    def test_random_roundtrip(self):
        rng = random.Random(2)
        for _ in range(200):
            n = rng.randint(0, 4)
            sig = [xvar(i + 1) if rng.random() < 0.7 else Const(rng.randrange(2)) for i in range(n)]
            ins = [e for e in sig if not isinstance(e, Const)]
            paths = sorted(rng.sample([yvar(j) for j in range(1, 8)], rng.randint(0, 3)))
            pool = ins + paths
            phase = random_phasepoly(rng, pool, rng.randint(0, 5), max_exp=6) if pool else \
                random_phasepoly(rng, [], 1)
            outs = [random_boolpoly(rng, pool, rng.randint(0, 3)) if pool else BoolPoly()
                    for _ in range(n)]
            text = print_pathsum_spec(from_circuit(Circuit.on(0)).replace(
                signature=tuple(sig), path_vars=tuple(paths), amp=rng.randint(0, 5),
                phase=phase, outputs=tuple(outs)))
            xi = parse_pathsum_spec(text)
            assert print_pathsum_spec(xi) == text

    def test_generated_specs_roundtrip(self):
        for spec in (gen_adder_n(3)[1], gen_qft_n(6)[1], qft_spec(32)):
            assert parse_pathsum_spec(print_pathsum_spec(spec)) == spec


LINES = st.sampled_from([".v a b", ".i a", ".i", "BEGIN", "END", "begin", "H a", "cnot a b",
                         "tof a b", "Rk(3) b", "Rk*(x) a", "T* c", "swap a a", "# c", "",
                         ".v", "S* b", "cz b a", "foo", "Rk(", "H"])
SPEC_LINES = st.sampled_from(["qubits: 2", "qubits: x", "inputs: x1 0", "inputs: x1 x1",
                              "paths: y1", "paths: x1", "amp: 3", "phase: 1/2*x1*y1",
                              "phase: (x1", "phase: 1/0", "out: x1, y1", "out: x1", "out:",
                              "out: 1/2", "phase: x1**-1", "phase: 2**70*x1", ": 3"])


@settings(max_examples=300, deadline=None)
@given(st.lists(LINES, max_size=8))
def test_circuit_parser_total(lines):
    try:
        parse_circuit("\n".join(lines))
    except ParseError as e:
        assert str(e)


@settings(max_examples=300, deadline=None)
@given(st.lists(SPEC_LINES, max_size=7))
def test_spec_parser_total(lines):
    try:
        parse_pathsum_spec("\n".join(lines))
    except ParseError as e:
        assert str(e)


@settings(max_examples=200, deadline=None)
@given(st.text(max_size=60))
def test_parsers_total_on_noise(text):
    for parse in (parse_circuit, parse_pathsum_spec):
        try:
            parse(text)
        except ParseError:
            pass
