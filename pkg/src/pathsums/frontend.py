"""Text formats: a small line-oriented circuit dialect and a path-sum spec format.

Circuit files::

    .v a b c        # qubits, in index order
    .i a b          # primary inputs; the rest start in |0>
    BEGIN
    H c
    tof a b c
    T* b
    END

Spec files have ``key: value`` lines for ``qubits``, ``inputs``, ``paths``,
``amp``, ``phase`` and ``out``.  Phase and output polynomials are ordinary
arithmetic over ``+ - * / **``, integers and variable names; the phase is
read modulo 1 and the outputs modulo 2.
"""
from __future__ import annotations

import ast
import re
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .circuit import Circuit, Gate
from .errors import DuplicateQubit, InvalidGate, ParseError, UndeclaredQubit
from .pathsum import Const, PathSum, SignatureEntry
from .polynomial import (BoolPoly, Dyadic, Monomial, PhasePoly, is_input, is_path,
                         var_index, var_name, xvar, yvar)

_MNEMONICS = {
    "h": "H", "x": "X", "y": "Y", "z": "Z", "s": "S", "s*": "Sdg", "t": "T", "t*": "Tdg",
    "cnot": "CNOT", "cz": "CZ", "swap": "SWAP", "tof": "TOF",
}
_PRINT = {"H": "H", "X": "X", "Y": "Y", "Z": "Z", "S": "S", "Sdg": "S*", "T": "T",
          "Tdg": "T*", "CNOT": "cnot", "CZ": "cz", "SWAP": "swap", "TOF": "tof"}
_RK = re.compile(r"^rk(\*?)\((\d+)\)$", re.IGNORECASE)


def _strip_comment(line: str) -> str:
    i = line.find("#")
    return line if i < 0 else line[:i]


def _tokens(line: str):
    """Whitespace-separated tokens with their 1-based columns."""
    return [(m.group(), m.start() + 1) for m in re.finditer(r"\S+", line)]


def parse_circuit(text: str) -> Circuit:
    qubits: Optional[List[str]] = None
    inputs: Optional[List[str]] = None
    gates: List[Gate] = []
    state = "header"
    index: Dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        toks = _tokens(_strip_comment(raw))
        if not toks:
            continue
        head, col = toks[0]
        if state == "done":
            raise ParseError("text after END", lineno, col)
        if state == "header":
            if head == ".v":
                if qubits is not None:
                    raise ParseError("duplicate .v line", lineno, col)
                qubits = []
                for name, c in toks[1:]:
                    if name in index:
                        raise DuplicateQubit(f"qubit {name!r} declared twice", lineno, c)
                    index[name] = len(qubits)
                    qubits.append(name)
            elif head == ".i":
                if qubits is None:
                    raise ParseError(".i before .v", lineno, col)
                if inputs is not None:
                    raise ParseError("duplicate .i line", lineno, col)
                inputs = []
                for name, c in toks[1:]:
                    if name not in index:
                        raise UndeclaredQubit(f"undeclared qubit {name!r}", lineno, c)
                    if name in inputs:
                        raise DuplicateQubit(f"input {name!r} listed twice", lineno, c)
                    inputs.append(name)
            elif head.upper() == "BEGIN" and len(toks) == 1:
                if qubits is None:
                    raise ParseError("BEGIN before .v", lineno, col)
                state = "body"
            else:
                raise ParseError(f"unexpected {head!r} in header", lineno, col)
            continue
        if head.upper() == "END" and len(toks) == 1:
            state = "done"
            continue
        gates.append(_parse_gate(toks, index, lineno))
    if state == "header":
        raise ParseError("missing BEGIN")
    if state == "body":
        raise ParseError("missing END")
    if inputs is None:
        inputs = list(qubits)
    ins = set(inputs)
    return Circuit(tuple(qubits), tuple(q for q in qubits if q in ins), tuple(gates))


def _parse_gate(toks, index: Dict[str, int], lineno: int) -> Gate:
    head, col = toks[0]
    k = None
    m = _RK.match(head)
    if m:
        name = "Rkdg" if m.group(1) else "Rk"
        k = int(m.group(2))
    else:
        name = _MNEMONICS.get(head.lower())
        if name is None:
            raise ParseError(f"unknown gate {head!r}", lineno, col)
    qs = []
    for q, c in toks[1:]:
        if q not in index:
            raise UndeclaredQubit(f"undeclared qubit {q!r}", lineno, c)
        qs.append(index[q])
    try:
        return Gate(name, tuple(qs), k)
    except InvalidGate as e:
        raise ParseError(str(e), lineno, col) from None


def print_circuit(c: Circuit) -> str:
    lines = [".v " + " ".join(c.qubits)]
    lines.append(".i " + " ".join(c.inputs) if c.inputs else ".i")
    lines.append("BEGIN")
    for g in c.gates:
        if g.name in ("Rk", "Rkdg"):
            head = f"Rk{'*' if g.name == 'Rkdg' else ''}({g.k})"
        else:
            head = _PRINT[g.name]
        lines.append(" ".join([head] + [c.qubits[q] for q in g.qubits]))
    lines.append("END")
    return "".join(line.rstrip() + "\n" for line in lines)


# ---------------------------------------------------------------------------
# Polynomial expressions

_VAR = re.compile(r"^([xy])([1-9]\d*)$")
RatPoly = Dict[Monomial, Fraction]


def _var_id(name: str) -> Optional[int]:
    m = _VAR.match(name)
    if not m:
        return None
    return (xvar if m.group(1) == "x" else yvar)(int(m.group(2)))


def _pmul(a: RatPoly, b: RatPoly) -> RatPoly:
    out: RatPoly = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = ma | mb
            v = out.get(m, 0) + ca * cb
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return out


class _Eval:
    """Evaluates an expression AST to a multilinear rational polynomial."""

    def __init__(self, allowed, lineno: int, col0: int):
        self.allowed = allowed
        self.lineno = lineno
        self.col0 = col0

    def fail(self, node, msg):
        raise ParseError(msg, self.lineno, self.col0 + getattr(node, "col_offset", 0))

    def __call__(self, node) -> RatPoly:
        if isinstance(node, ast.Expression):
            return self(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int) \
                and not isinstance(node.value, bool):
            return {frozenset(): Fraction(node.value)} if node.value else {}
        if isinstance(node, ast.Name):
            v = _var_id(node.id)
            if v is None:
                self.fail(node, f"bad variable name {node.id!r}")
            if v not in self.allowed:
                self.fail(node, f"undeclared variable {node.id!r}")
            return {frozenset((v,)): Fraction(1)}
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            p = self(node.operand)
            return p if isinstance(node.op, ast.UAdd) else {m: -c for m, c in p.items()}
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, (ast.Add, ast.Sub)):
                return self._sum(node)
            if isinstance(node.op, ast.Mult):
                return _pmul(self(node.left), self(node.right))
            if isinstance(node.op, ast.Div):
                den = self(node.right)
                if not den or any(den.keys() - {frozenset()}):
                    self.fail(node, "division by a non-constant or zero")
                d = den[frozenset()]
                return {m: c / d for m, c in self(node.left).items()}
            if isinstance(node.op, ast.Pow):
                e = node.right
                if not (isinstance(e, ast.Constant) and isinstance(e.value, int) and 0 <= e.value <= 4096):
                    self.fail(node, "exponent must be an integer in 0..4096")
                base = self(node.left)
                out: RatPoly = {frozenset(): Fraction(1)}
                for _ in range(e.value):
                    out = _pmul(out, base)
                return out
        self.fail(node, "unsupported syntax")

    def _sum(self, node) -> RatPoly:
        # long sums parse as left-nested chains; walk them without recursing
        terms = []
        while isinstance(node, ast.BinOp) and isinstance(node.op, (ast.Add, ast.Sub)):
            terms.append((1 if isinstance(node.op, ast.Add) else -1, node.right))
            node = node.left
        out = dict(self(node))
        for sign, t in reversed(terms):
            for m, c in self(t).items():
                v = out.get(m, 0) + sign * c
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return out


def parse_expression(text: str, allowed, lineno: int = 1, col0: int = 1) -> RatPoly:
    """Parse polynomial text into ``{monomial: Fraction}``."""
    src = text.strip()
    if not src:
        raise ParseError("empty expression", lineno, col0)
    lead = len(text) - len(text.lstrip())
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as e:
        raise ParseError(f"syntax error: {e.msg}", lineno, col0 + lead + (e.offset or 1) - 1) from None
    return _Eval(allowed, lineno, col0 + lead)(tree)


def _to_phase(p: RatPoly, lineno: int, col: int) -> PhasePoly:
    terms = {}
    for m, c in p.items():
        try:
            terms[m] = Dyadic.from_fraction(c)
        except ValueError:
            raise ParseError(f"coefficient {c} is not dyadic", lineno, col) from None
    return PhasePoly(terms)


def _to_bool(p: RatPoly, lineno: int, col: int) -> BoolPoly:
    monos = []
    for m, c in p.items():
        if c.denominator != 1:
            raise ParseError(f"coefficient {c} in a Boolean output is not an integer", lineno, col)
        if c.numerator % 2:
            monos.append(m)
    return BoolPoly(monos)


# ---------------------------------------------------------------------------
# Spec files

_KEYS = ("qubits", "inputs", "paths", "amp", "phase", "out")


def parse_pathsum_spec(text: str) -> PathSum:
    fields: Dict[str, Tuple[str, int, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip_comment(raw)
        if not line.strip():
            continue
        key, sep, value = line.partition(":")
        k = key.strip().lower()
        if not sep or k not in _KEYS:
            raise ParseError(f"expected one of {', '.join(_KEYS)} followed by ':'",
                             lineno, len(line) - len(line.lstrip()) + 1)
        if k in fields:
            raise ParseError(f"duplicate field {k!r}", lineno, 1)
        fields[k] = (value, lineno, len(key) + 2)
    for k in ("qubits", "inputs", "out"):
        if k not in fields:
            raise ParseError(f"missing field {k!r}")

    def integer(k):
        value, ln, col = fields[k]
        try:
            return int(value.strip())
        except ValueError:
            raise ParseError(f"{k} must be an integer", ln, col) from None

    n = integer("qubits")
    value, ln, col = fields["inputs"]
    sig: List[SignatureEntry] = []
    for tok, c in _tokens(value):
        if tok in ("0", "1"):
            sig.append(Const(int(tok)))
            continue
        v = _var_id(tok)
        if v is None or not is_input(v):
            raise ParseError(f"bad input entry {tok!r}", ln, col + c - 1)
        if v in sig:
            raise ParseError(f"input variable {tok!r} repeated", ln, col + c - 1)
        sig.append(v)
    if len(sig) != n:
        raise ParseError(f"{len(sig)} input entries for {n} qubits", ln, col)
    paths: List[int] = []
    if "paths" in fields:
        value, ln, col = fields["paths"]
        for tok, c in _tokens(value):
            v = _var_id(tok)
            if v is None or not is_path(v):
                raise ParseError(f"bad path variable {tok!r}", ln, col + c - 1)
            if v in paths:
                raise ParseError(f"path variable {tok!r} repeated", ln, col + c - 1)
            paths.append(v)
    amp = integer("amp") if "amp" in fields else len(paths)
    allowed = {e for e in sig if not isinstance(e, Const)} | set(paths)
    phase = PhasePoly()
    if "phase" in fields:
        value, ln, col = fields["phase"]
        phase = _to_phase(parse_expression(value, allowed, ln, col), ln, col)
    value, ln, col = fields["out"]
    outs = []
    pos = 0
    for part in (value.split(",") if value.strip() else []):
        outs.append(_to_bool(parse_expression(part, allowed, ln, col + pos), ln, col + pos))
        pos += len(part) + 1
    if len(outs) != n:
        raise ParseError(f"{len(outs)} outputs for {n} qubits", ln, col)
    nxt = max((var_index(v) for v in paths), default=0) + 1
    return PathSum(tuple(sig), tuple(sorted(paths)), amp, phase, tuple(outs), next_path=nxt)


def print_pathsum_spec(xi: PathSum) -> str:
    sig = " ".join(str(e) if isinstance(e, Const) else var_name(e) for e in xi.signature)
    lines = [
        f"qubits: {xi.n}",
        f"inputs: {sig}",
        f"paths: {' '.join(var_name(v) for v in xi.path_vars)}",
        f"amp: {xi.amp}",
        f"phase: {xi.phase}",
        f"out: {', '.join(str(f) for f in xi.outputs)}",
    ]
    return "".join(line.rstrip() + "\n" for line in lines)
