"""Path-sums: the data structure, gate semantics and composition.

A path-sum on ``n`` qubits denotes the partial linear map

    |sig> -> 2^(-s/2) * sum_{y in {0,1}^m} e^{2 pi i P(x, y)} |f(x, y)>

where ``sig`` is the input signature, ``P`` the phase polynomial and
``f`` the vector of Boolean output polynomials.  The amplitude exponent
``s`` is tracked separately from the number of path variables ``m``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from .circuit import Circuit, Gate
from .errors import ArityMismatch, IncompatibleSignature, InvalidGate
from .polynomial import (HALF, ONE, QUARTER, BoolPoly, Dyadic, Monomial, PhasePoly,
                         is_input, is_path, lift_scaled, subst_bool,
                         subst_phase, var_index, var_name, xvar, yvar)

_TEMP_BASE = 1 << 60


@dataclass(frozen=True)
class Const:
    bit: int

    def __str__(self) -> str:
        return str(self.bit)


SignatureEntry = Union[int, Const]


def entry_poly(entry: SignatureEntry) -> BoolPoly:
    if isinstance(entry, Const):
        return BoolPoly.const(entry.bit)
    return BoolPoly.var(entry)


@dataclass(frozen=True)
class PathSum:
    signature: Tuple[SignatureEntry, ...]
    path_vars: Tuple[int, ...]
    amp: int
    phase: PhasePoly
    outputs: Tuple[BoolPoly, ...]
    next_path: int = field(default=1, compare=False)

    @property
    def n(self) -> int:
        return len(self.signature)

    @property
    def m(self) -> int:
        return len(self.path_vars)

    def input_vars(self) -> Tuple[int, ...]:
        return tuple(e for e in self.signature if not isinstance(e, Const))

    def replace(self, **kw) -> "PathSum":
        d = dict(signature=self.signature, path_vars=self.path_vars, amp=self.amp,
                 phase=self.phase, outputs=self.outputs, next_path=self.next_path)
        d.update(kw)
        return PathSum(**d)

    def check(self) -> None:
        """Assert the structural invariants; used by tests."""
        assert len(self.outputs) == self.n
        ins = [e for e in self.signature if not isinstance(e, Const)]
        assert len(set(ins)) == len(ins), "signature variables must be distinct"
        assert all(is_input(v) for v in ins)
        assert all(is_path(v) for v in self.path_vars)
        assert list(self.path_vars) == sorted(set(self.path_vars))
        declared = set(ins) | set(self.path_vars)
        used = set(self.phase.variables())
        for f in self.outputs:
            used |= f.variables()
        assert used <= declared, f"undeclared variables {sorted(map(var_name, used - declared))}"
        assert all(var_index(v) < self.next_path for v in self.path_vars)

    def __str__(self) -> str:
        return pretty(self)


def identity_sum(n: int) -> PathSum:
    sig = tuple(xvar(i + 1) for i in range(n))
    return PathSum(sig, (), 0, PhasePoly(), tuple(BoolPoly.var(v) for v in sig))


# ---------------------------------------------------------------------------
# Gate semantics


def gate_sum(g: Gate) -> PathSum:
    """Primitive path-sum of a gate on its own operands (qubit ``i`` -> ``x{i+1}``)."""
    k = len(g.qubits)
    xs = [xvar(i + 1) for i in range(k)]
    sig = tuple(xs)
    outs = [BoolPoly.var(v) for v in xs]
    x = frozenset((xs[0],))
    name = g.name
    if name == "H":
        y = yvar(1)
        return PathSum(sig, (y,), 1, PhasePoly({x | {y}: HALF}), (BoolPoly.var(y),), 2)
    rot = {"Z": 1, "S": 2, "T": 3, "Sdg": -2, "Tdg": -3}
    if name in rot or name in ("Rk", "Rkdg"):
        level = rot.get(name) or (g.k if name == "Rk" else -g.k)
        if level > 0:
            c = Dyadic(1, level)
        else:
            c = Dyadic((1 << -level) - 1, -level)
        return PathSum(sig, (), 0, PhasePoly({x: c}), tuple(outs))
    if name == "X":
        return PathSum(sig, (), 0, PhasePoly(), (outs[0] + BoolPoly.const(1),))
    if name == "Y":
        return PathSum(sig, (), 0, PhasePoly({ONE: QUARTER, x: HALF}),
                       (outs[0] + BoolPoly.const(1),))
    if name == "CNOT":
        return PathSum(sig, (), 0, PhasePoly(), (outs[0], outs[0] + outs[1]))
    if name == "CZ":
        return PathSum(sig, (), 0, PhasePoly({frozenset(xs): HALF}), tuple(outs))
    if name == "SWAP":
        return PathSum(sig, (), 0, PhasePoly(), (outs[1], outs[0]))
    if name == "TOF":
        ctrl = BoolPoly((frozenset(xs[:-1]),))
        return PathSum(sig, (), 0, PhasePoly(), tuple(outs[:-1]) + (outs[-1] + ctrl,))
    raise InvalidGate(name)


def _rotation_coeff(g: Gate) -> Optional[Dyadic]:
    name = g.name
    if name == "Z":
        return HALF
    if name == "S":
        return QUARTER
    if name == "Sdg":
        return Dyadic(3, 2)
    if name == "T":
        return Dyadic(1, 3)
    if name == "Tdg":
        return Dyadic(7, 3)
    if name == "Rk":
        return Dyadic(1, g.k)
    if name == "Rkdg":
        return Dyadic(-1, g.k)
    return None


def _add_into(terms: Dict[Monomial, Dyadic], extra: Mapping[Monomial, Dyadic]) -> None:
    for m, c in extra.items():
        v = terms.get(m)
        v = c if v is None else v + c
        if v:
            terms[m] = v
        else:
            terms.pop(m, None)


def apply_gate(xi: PathSum, g: Gate) -> PathSum:
    """``gate ∘ xi``: same result as composing with the embedded :func:`gate_sum`,
    computed directly on the outputs."""
    if any(q >= xi.n for q in g.qubits):
        raise ArityMismatch(f"gate {g} on a {xi.n}-qubit sum")
    outs = list(xi.outputs)
    name = g.name
    q = g.qubits[0]
    if name == "H":
        y = yvar(xi.next_path)
        terms = dict(xi.phase.terms)
        _add_into(terms, {m | {y}: HALF for m in outs[q].monomials})
        outs[q] = BoolPoly.var(y)
        return PathSum(xi.signature, xi.path_vars + (y,), xi.amp + 1,
                       PhasePoly._trusted(terms), tuple(outs), xi.next_path + 1)
    c = _rotation_coeff(g)
    if c is not None:
        terms = dict(xi.phase.terms)
        _add_into(terms, lift_scaled(outs[q], c).terms)
        return xi.replace(phase=PhasePoly._trusted(terms))
    if name == "X":
        outs[q] = outs[q] + BoolPoly.const(1)
        return xi.replace(outputs=tuple(outs))
    if name == "Y":
        terms = dict(xi.phase.terms)
        extra = {m: HALF for m in outs[q].monomials}
        _add_into(terms, extra)
        _add_into(terms, {ONE: QUARTER})
        outs[q] = outs[q] + BoolPoly.const(1)
        return xi.replace(phase=PhasePoly._trusted(terms), outputs=tuple(outs))
    if name == "CNOT":
        c_, t = g.qubits
        outs[t] = outs[t] + outs[c_]
        return xi.replace(outputs=tuple(outs))
    if name == "CZ":
        a, b = g.qubits
        terms = dict(xi.phase.terms)
        _add_into(terms, {m: HALF for m in (outs[a] * outs[b]).monomials})
        return xi.replace(phase=PhasePoly._trusted(terms))
    if name == "SWAP":
        a, b = g.qubits
        outs[a], outs[b] = outs[b], outs[a]
        return xi.replace(outputs=tuple(outs))
    if name == "TOF":
        *ctrls, t = g.qubits
        prod = BoolPoly.const(1)
        for cq in ctrls:
            prod = prod * outs[cq]
        outs[t] = outs[t] + prod
        return xi.replace(outputs=tuple(outs))
    raise InvalidGate(name)


# ---------------------------------------------------------------------------
# Renaming and composition


def _rename_phase(p: PhasePoly, mapping: Mapping[int, int]) -> PhasePoly:
    get = mapping.get
    return PhasePoly._trusted({frozenset(get(v, v) for v in m): c for m, c in p.terms.items()})


def _rename_bool(p: BoolPoly, mapping: Mapping[int, int]) -> BoolPoly:
    get = mapping.get
    return BoolPoly(frozenset(get(v, v) for v in m) for m in p.monomials)


def rename(xi: PathSum, mapping: Mapping[int, int], next_path: Optional[int] = None) -> PathSum:
    """Apply an injective variable renaming everywhere."""
    sig = tuple(e if isinstance(e, Const) else mapping.get(e, e) for e in xi.signature)
    paths = tuple(sorted(mapping.get(v, v) for v in xi.path_vars))
    return PathSum(sig, paths, xi.amp, _rename_phase(xi.phase, mapping),
                   tuple(_rename_bool(f, mapping) for f in xi.outputs),
                   xi.next_path if next_path is None else next_path)


def embed(xi: PathSum, positions: Sequence[int], n: int) -> PathSum:
    """Place a k-qubit sum on coordinates ``positions`` of the n-qubit identity."""
    if len(positions) != xi.n:
        raise ArityMismatch(f"{xi.n}-qubit sum on {len(positions)} positions")
    base = identity_sum(n)
    mapping = {}
    for local, pos in enumerate(positions):
        e = xi.signature[local]
        if not isinstance(e, Const):
            mapping[e] = base.signature[pos]
    # move local inputs out of the way first so the renaming is simultaneous
    tmp = {v: _TEMP_BASE + v for v in mapping}
    moved = rename(xi, tmp)
    local = rename(moved, {_TEMP_BASE + v: w for v, w in mapping.items()})
    sig = list(base.signature)
    outs = list(base.outputs)
    for i, pos in enumerate(positions):
        sig[pos] = local.signature[i]
        outs[pos] = local.outputs[i]
    return PathSum(tuple(sig), local.path_vars, local.amp, local.phase, tuple(outs),
                   local.next_path)


def _max_input_index(xi: PathSum) -> int:
    return max((var_index(v) for v in xi.input_vars()), default=0)


def tensor(a: PathSum, b: PathSum) -> PathSum:
    """Parallel composition: ``a`` on the first qubits, ``b`` on the rest."""
    offset = max(a.n, _max_input_index(a))
    mapping: Dict[int, int] = {}
    for v in b.input_vars():
        mapping[v] = xvar(var_index(v) + offset)
    nxt = a.next_path
    for v in b.path_vars:
        mapping[v] = yvar(nxt)
        nxt += 1
    tmp = {v: _TEMP_BASE + v for v in mapping}
    rb = rename(rename(b, tmp), {_TEMP_BASE + v: w for v, w in mapping.items()})
    return PathSum(a.signature + rb.signature, tuple(sorted(a.path_vars + rb.path_vars)),
                   a.amp + b.amp, a.phase + rb.phase, a.outputs + rb.outputs, nxt)


def compose(first: PathSum, second: PathSum) -> PathSum:
    """Sequential composition: ``second ∘ first`` (``first`` acts first)."""
    if first.n != second.n:
        raise ArityMismatch(f"cannot compose {first.n}-qubit and {second.n}-qubit sums")
    mapping: Dict[int, int] = {}
    for e in second.signature:
        if not isinstance(e, Const):
            mapping[e] = _TEMP_BASE + e
    nxt = first.next_path
    for v in second.path_vars:
        mapping[v] = yvar(nxt)
        nxt += 1
    r = rename(second, mapping)
    phase = r.phase
    outs = list(r.outputs)
    for i, e in enumerate(second.signature):
        f = first.outputs[i]
        if isinstance(e, Const):
            if f != BoolPoly.const(e.bit):
                raise IncompatibleSignature(
                    i, f"coordinate {i}: output {f} feeds constant input {e.bit}")
            continue
        t = mapping[e]
        phase = subst_phase(phase, t, f)
        outs = [subst_bool(o, t, f) for o in outs]
    return PathSum(first.signature, tuple(sorted(first.path_vars + r.path_vars)),
                   first.amp + second.amp, first.phase + phase, tuple(outs), nxt)


def initial_sum(c: Circuit) -> PathSum:
    """Identity on the circuit's qubits, with non-input qubits fixed to 0."""
    sig: List[SignatureEntry] = []
    for i, is_in in enumerate(c.input_flags()):
        sig.append(xvar(i + 1) if is_in else Const(0))
    return PathSum(tuple(sig), (), 0, PhasePoly(), tuple(entry_poly(e) for e in sig))


def from_circuit(c: Circuit, reduce_eagerly: bool = False) -> PathSum:
    """Path-sum interpretation of a circuit, gate by gate."""
    xi = initial_sum(c)
    if reduce_eagerly:
        from .rewrite import normalize
    for g in c.gates:
        xi = apply_gate(xi, g)
        if reduce_eagerly:
            xi, _ = normalize(xi)
    return xi


def from_circuit_by_composition(c: Circuit) -> PathSum:
    """Same interpretation, literally folding :func:`compose` over embedded gate sums."""
    xi = initial_sum(c)
    for g in c.gates:
        xi = compose(xi, embed(gate_sum(g), g.qubits, c.n))
    return xi


# ---------------------------------------------------------------------------
# Canonical naming and queries


def internal_vars(xi: PathSum) -> frozenset:
    seen = set()
    for f in xi.outputs:
        seen |= f.variables()
    return frozenset(v for v in xi.path_vars if v not in seen)


def canonicalize(xi: PathSum) -> PathSum:
    """Renumber path variables ``y1..ym`` by first occurrence.

    Phase terms are scanned in canonical monomial order (with already
    numbered path variables ranked by their new number and unnumbered ones
    last, by old index), then the outputs left to right.
    """
    pending = set(xi.path_vars)
    rank: Dict[int, int] = {}
    terms = list(xi.phase.terms)
    big = 1 << 62

    def key(m):
        return (len(m), tuple(sorted(v if not is_path(v) else
                                     big + rank[v] if v in rank else 2 * big + v
                                     for v in m)))

    while pending:
        hit = None
        for m in sorted((m for m in terms if m & pending), key=key):
            hit = m
            break
        if hit is None:
            break
        for v in sorted(hit & pending):
            rank[v] = len(rank)
            pending.discard(v)
        terms = [m for m in terms if m & pending]
    for f in xi.outputs:
        for m in f:
            for v in sorted(m & pending):
                rank[v] = len(rank)
                pending.discard(v)
    for v in sorted(pending):
        rank[v] = len(rank)
    mapping = {v: yvar(r + 1) for v, r in rank.items()}
    tmp = {v: _TEMP_BASE + v for v in mapping}
    out = rename(rename(xi, tmp), {_TEMP_BASE + v: w for v, w in mapping.items()},
                 next_path=len(mapping) + 1)
    return out


def is_clifford_sum(xi: PathSum) -> bool:
    from .polynomial import order
    return order(xi.phase) <= 2 and all(f.is_linear() for f in xi.outputs)


# ---------------------------------------------------------------------------
# Printing


def _bool_str(f: BoolPoly) -> str:
    s = str(f)
    return f"({s})" if len(f) > 1 else s


def pretty(xi: PathSum) -> str:
    sig = " ".join(str(e) if isinstance(e, Const) else var_name(e) for e in xi.signature)
    parts = [f"|{sig}> ->"]
    if xi.amp:
        parts.append(f"1/sqrt(2^{xi.amp})")
    if xi.path_vars:
        parts.append(f"sum[{' '.join(var_name(v) for v in xi.path_vars)}]")
    if xi.phase:
        parts.append(f"e^{{2pi i ({xi.phase})}}")
    parts.append("|" + " ".join(_bool_str(f) for f in xi.outputs) + ">")
    return " ".join(parts)
