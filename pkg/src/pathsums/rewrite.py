"""Path-sum reduction rules, normalization and identity classification.

Every rule removes at least one path variable, so :func:`normalize` runs
at most ``m`` steps.  Matching is deterministic: Elim, then HH, then
Omega, then Case, each scanning candidate variables in ascending order.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from .errors import NotApplicable, PreconditionViolated
from .pathsum import PathSum, entry_poly, internal_vars
from .polynomial import (EIGHTH, HALF, ONE, QUARTER, THREE_QUARTERS, BoolPoly, Dyadic,
                         Monomial, PhasePoly, cofactor, is_input, is_path, lift_scaled,
                         monomial_key, order, subst_bool, subst_phase, var_name)

ELIM, HH, OMEGA, CASE, RESTRICT = "Elim", "HH", "Omega", "Case", "Restrict"


@dataclass(frozen=True)
class RuleApplication:
    rule: str
    eliminated: Tuple[int, ...]
    substitutions: Tuple[Tuple[int, BoolPoly], ...] = ()

    def __str__(self) -> str:
        s = " ".join([self.rule] + [var_name(v) for v in self.eliminated])
        for v, q in self.substitutions:
            s += f"; subst {var_name(v)} <- {str(q).replace(' ', '')}"
        return s


# ---------------------------------------------------------------------------
# Classifications


@dataclass(frozen=True)
class IdentityExact:
    pass


@dataclass(frozen=True)
class IdentityGlobalPhase:
    theta: Dyadic


@dataclass(frozen=True)
class NotIdentity:
    witness: Optional[Dict[int, int]] = None
    reason: str = ""


@dataclass(frozen=True)
class Inconclusive:
    residual: PathSum


Classification = Union[IdentityExact, IdentityGlobalPhase, NotIdentity, Inconclusive]


# ---------------------------------------------------------------------------
# Helpers


def _drop(xi: PathSum, dead: Sequence[int], **kw) -> PathSum:
    gone = set(dead)
    return xi.replace(path_vars=tuple(v for v in xi.path_vars if v not in gone), **kw)


def _all_half(c: PhasePoly) -> bool:
    return all(v == HALF for v in c.terms.values())


def _hh_target(quo: Mapping[Monomial, Dyadic]) -> Optional[Tuple[int, BoolPoly]]:
    """Least path variable ``yi`` with ``quo = 1/2 (yi + Q)`` and ``yi`` not in ``Q``."""
    if not all(v == HALF for v in quo.values()):
        return None
    singles = sorted(next(iter(m)) for m in quo if len(m) == 1 and is_path(next(iter(m))))
    for yi in singles:
        if sum(1 for m in quo if yi in m) == 1:
            return yi, BoolPoly(m for m in quo if m != frozenset((yi,)))
    return None


def _omega_q(quo: Mapping[Monomial, Dyadic]) -> Optional[BoolPoly]:
    """Q for ``quo = 1/4 + 1/2 Q``, folding a 3/4 constant into ``Q + 1``."""
    const = quo.get(ONE)
    if const != QUARTER and const != THREE_QUARTERS:
        return None
    rest = [m for m in quo if m]
    if not all(quo[m] == HALF for m in rest):
        return None
    q = BoolPoly(rest)
    if const == THREE_QUARTERS:
        q = q + BoolPoly.const(1)
    return q


def _split_half(quo: Dict[Monomial, Dyadic], adjust: Mapping[Monomial, Dyadic],
                forbidden: int) -> Optional[BoolPoly]:
    """Subtract ``adjust`` from ``quo``; the rest must be 1/2-coefficients without ``forbidden``."""
    rest = dict(quo)
    for m, c in adjust.items():
        v = rest.get(m, Dyadic()) - c
        if v:
            rest[m] = v
        else:
            rest.pop(m, None)
    if not all(c == HALF for c in rest.values()):
        return None
    if any(forbidden in m for m in rest):
        return None
    return BoolPoly(rest)


def _case_parts(xi: PathSum, yi: int, yj: int):
    """Return ``(x, Q, Q')`` if the Case pattern holds for (yi, yj), else None."""
    ci, _ = cofactor(xi.phase, yi)
    cj, _ = cofactor(xi.phase, yj)
    ci, cj = ci.terms, cj.terms
    if ci.get(frozenset((yj,))) != HALF:
        return None
    for m, c in sorted(ci.items(), key=lambda t: monomial_key(t[0])):
        if len(m) != 1 or (c != QUARTER and c != THREE_QUARTERS):
            continue
        (x,) = m
        if not is_input(x):
            continue
        q = _split_half(ci, {m: QUARTER, frozenset((yj,)): HALF}, yj)
        if q is None:
            continue
        qp = _split_half(cj, {ONE: QUARTER, m: -QUARTER, frozenset((yi,)): HALF}, yi)
        if qp is None:
            continue
        return x, q, qp
    return None


# ---------------------------------------------------------------------------
# Rules


def _require_internal(xi: PathSum, *vs: int) -> None:
    internal = internal_vars(xi)
    for v in vs:
        if v not in xi.path_vars:
            raise NotApplicable(f"{var_name(v)} is not a path variable")
        if v not in internal:
            raise NotApplicable(f"{var_name(v)} occurs in the outputs")


def apply_elim(xi: PathSum, y0: int) -> PathSum:
    """Drop a path variable that occurs nowhere; the amplitude exponent drops by 2."""
    if y0 not in xi.path_vars:
        raise NotApplicable(f"{var_name(y0)} is not a path variable")
    if y0 in xi.phase.variables():
        raise NotApplicable(f"{var_name(y0)} occurs in the phase")
    if any(y0 in f.variables() for f in xi.outputs):
        raise NotApplicable(f"{var_name(y0)} occurs in the outputs")
    if xi.amp < 2:
        raise NotApplicable("amplitude exponent below 2")
    return _drop(xi, [y0], amp=xi.amp - 2)


def apply_hh(xi: PathSum, y0: int, yi: int) -> PathSum:
    """Sum out ``y0`` whose quotient is ``1/2 (yi + Q)``; then ``yi <- Q``.

    Fused with the Elim of the leftover variable: both ``y0`` and ``yi``
    disappear and the amplitude exponent drops by 2.
    """
    _require_internal(xi, y0)
    quo, rem = cofactor(xi.phase, y0)
    if not _all_half(quo):
        raise NotApplicable(f"quotient of {var_name(y0)} has non-1/2 coefficients")
    if frozenset((yi,)) not in quo.terms or not is_path(yi):
        raise NotApplicable(f"{var_name(yi)} is not a linear path term of the quotient")
    if sum(1 for m in quo.terms if yi in m) != 1:
        raise NotApplicable(f"{var_name(yi)} occurs nonlinearly in the quotient")
    q = BoolPoly(m for m in quo.terms if m != frozenset((yi,)))
    phase = subst_phase(rem, yi, q)
    outs = tuple(subst_bool(f, yi, q) for f in xi.outputs)
    return _drop(xi, [y0, yi], amp=xi.amp - 2, phase=phase, outputs=outs)


def apply_omega(xi: PathSum, y0: int) -> PathSum:
    """Sum out ``y0`` with quotient ``1/4 + 1/2 Q``: phase gains ``1/8 + 3/4 lift(Q)``."""
    _require_internal(xi, y0)
    quo, rem = cofactor(xi.phase, y0)
    q = _omega_q(quo.terms)
    if q is None:
        raise NotApplicable(f"quotient of {var_name(y0)} is not 1/4 + 1/2 Q")
    phase = rem + PhasePoly.const(EIGHTH) + lift_scaled(q, THREE_QUARTERS)
    return _drop(xi, [y0], amp=xi.amp - 1, phase=phase)


def apply_case(xi: PathSum, yi: int, yj: int) -> PathSum:
    """Case split on an input ``x``: ``(1-x) R[yj <- Q] + x R'[yi <- Q']``."""
    if yi == yj:
        raise NotApplicable("Case needs two distinct variables")
    _require_internal(xi, yi, yj)
    parts = _case_parts(xi, yi, yj)
    if parts is None:
        raise NotApplicable(f"no Case pattern for {var_name(yi)}, {var_name(yj)}")
    x, q, qp = parts
    _, r = cofactor(xi.phase, yi)
    _, rp = cofactor(xi.phase, yj)
    a = subst_phase(r, yj, q)
    b = subst_phase(rp, yi, qp)
    phase = a + (b - a).times_monomial((x,))
    return _drop(xi, [yi, yj], amp=xi.amp - 2, phase=phase)


# ---------------------------------------------------------------------------
# Matching and normalization


def _occurrences(xi: PathSum):
    occ: Dict[int, Dict[Monomial, Dyadic]] = defaultdict(dict)
    for m, c in xi.phase.terms.items():
        for v in m:
            if is_path(v):
                occ[v][m - {v}] = c
    return occ


def find_match(xi: PathSum):
    """Return ``(rule, args)`` for the first applicable rule, or ``None``."""
    occ = _occurrences(xi)
    in_outputs = set()
    for f in xi.outputs:
        in_outputs |= f.variables()
    internal = [v for v in xi.path_vars if v not in in_outputs]
    if xi.amp >= 2:
        for v in internal:
            if v not in occ:
                return ELIM, (v,)
    for v in internal:
        hit = _hh_target(occ.get(v, {}))
        if hit is not None:
            return HH, (v, hit[0])
    for v in internal:
        quo = occ.get(v)
        if quo and _omega_q(quo) is not None:
            return OMEGA, (v,)
    internal_set = set(internal)
    for yi in internal:
        quo = occ.get(yi, {})
        partners = sorted(next(iter(m)) for m, c in quo.items()
                          if len(m) == 1 and c == HALF and next(iter(m)) in internal_set)
        if not any(len(m) == 1 and is_input(next(iter(m))) and c in (QUARTER, THREE_QUARTERS)
                   for m, c in quo.items()):
            continue
        for yj in partners:
            if yj != yi and _case_parts(xi, yi, yj) is not None:
                return CASE, (yi, yj)
    return None


def apply_rule(xi: PathSum, rule: str, args: Tuple[int, ...]) -> Tuple[PathSum, RuleApplication]:
    if rule == ELIM:
        return apply_elim(xi, *args), RuleApplication(ELIM, args)
    if rule == HH:
        y0, yi = args
        quo, _ = cofactor(xi.phase, y0)
        q = BoolPoly(m for m in quo.terms if m != frozenset((yi,)))
        return apply_hh(xi, y0, yi), RuleApplication(HH, args, ((yi, q),))
    if rule == OMEGA:
        return apply_omega(xi, *args), RuleApplication(OMEGA, args)
    if rule == CASE:
        yi, yj = args
        _, q, qp = _case_parts(xi, yi, yj)
        return apply_case(xi, yi, yj), RuleApplication(CASE, args, ((yj, q), (yi, qp)))
    raise ValueError(rule)


def normalize(xi: PathSum) -> Tuple[PathSum, List[RuleApplication]]:
    """Rewrite to a fixpoint; returns the irreducible sum and the rule trace."""
    trace: List[RuleApplication] = []
    while True:
        hit = find_match(xi)
        if hit is None:
            return xi, trace
        xi, app = apply_rule(xi, *hit)
        trace.append(app)


# ---------------------------------------------------------------------------
# Identity-checking heuristics


def _reifiable(f: BoolPoly) -> Optional[int]:
    singles = sorted(next(iter(m)) for m in f.monomials if len(m) == 1 and is_path(next(iter(m))))
    for y in singles:
        if sum(1 for m in f.monomials if y in m) == 1:
            return y
    return None


def restrict_to_identity(xi: PathSum) -> Tuple[PathSum, List[RuleApplication]]:
    """Keep only the paths whose outputs equal the inputs, where solvable.

    For each coordinate with output ``y + Q`` (``y`` not in ``Q``) the path
    variable is replaced by ``input + Q``.  Only sound for identity checks on
    well-formed sums; coordinates that cannot be solved are left alone.
    """
    trace: List[RuleApplication] = []
    changed = True
    while changed:
        changed = False
        for i, e in enumerate(xi.signature):
            f = xi.outputs[i]
            target = entry_poly(e)
            if f == target:
                continue
            y = _reifiable(f)
            if y is None:
                continue
            sub = target + (f + BoolPoly.var(y))
            phase = subst_phase(xi.phase, y, sub)
            outs = tuple(subst_bool(o, y, sub) for o in xi.outputs)
            xi = _drop(xi, [y], phase=phase, outputs=outs)
            trace.append(RuleApplication(RESTRICT, (y,), ((y, sub),)))
            changed = True
    return xi, trace


def _witness_for(q: BoolPoly, xi: PathSum) -> Dict[int, int]:
    """An input assignment with ``q = 1``: zeros if ``q`` has a constant term,
    else ones on an inclusion-minimal monomial."""
    w = {v: 0 for v in xi.input_vars()}
    if ONE in q.monomials:
        return w
    m = min(q.monomials, key=monomial_key)
    for v in m:
        w[v] = 1
    return w


def negativity_witness(xi: PathSum) -> Optional[Dict[int, int]]:
    """Input assignment on which the sum vanishes, from an internal ``y0`` whose
    quotient is ``1/2 Q`` with ``Q`` a non-zero polynomial of inputs only."""
    occ = _occurrences(xi)
    for y0 in sorted(internal_vars(xi)):
        quo = occ.get(y0)
        if not quo or not all(c == HALF for c in quo.values()):
            continue
        q = BoolPoly(quo)
        if all(is_input(v) for v in q.variables()):
            return _witness_for(q, xi)
    return None


def magnitude_witness(xi: PathSum) -> Optional[Dict[int, int]]:
    """Input assignment on which the sum has modulus below 1.

    Applies when ``2m <= s`` and some internal ``y0`` has a quotient ``C``
    over inputs only.  Summing out ``y0`` contributes ``|1 + e^{2 pi i C}|``,
    which is below 2 wherever ``C`` is non-zero mod 1, while the other
    ``m - 1`` variables contribute at most ``2^(m-1)``.
    """
    if 2 * xi.m > xi.amp:
        return None
    occ = _occurrences(xi)
    for y0 in sorted(internal_vars(xi)):
        quo = occ.get(y0)
        if quo and all(is_input(v) for m in quo for v in m):
            return _witness_for(BoolPoly(quo), xi)
    return None


def classify(xi: PathSum) -> Classification:
    """Decide whether a normalized sum is the identity, where the rules allow."""
    if xi.m == 0:
        for e, f in zip(xi.signature, xi.outputs):
            diff = f + entry_poly(e)
            if diff:
                return NotIdentity(_witness_for(diff, xi), "output mismatch")
        if xi.amp != 0:
            return NotIdentity({v: 0 for v in xi.input_vars()},
                               f"amplitude 2^(-{xi.amp}/2) with no path variables; "
                               "input is not an isometry")
        if not xi.phase:
            return IdentityExact()
        if xi.phase.is_constant():
            return IdentityGlobalPhase(xi.phase.constant())
        rest = PhasePoly({m: v for m, v in xi.phase.terms.items() if m})
        w = _witness_for(BoolPoly(rest.terms), xi)
        return NotIdentity(w, "input-dependent phase")
    w = negativity_witness(xi)
    if w is not None:
        return NotIdentity(w, "amplitude vanishes (negativity)")
    w = magnitude_witness(xi)
    if w is not None:
        return NotIdentity(w, "amplitude modulus below 1")
    return Inconclusive(xi)


def decide_clifford(xi: PathSum) -> Tuple[Classification, List[RuleApplication]]:
    """Complete identity check for Clifford sums (linear outputs, order <= 2).

    Solves ``outputs = inputs`` for the path variables by Gaussian
    elimination over GF(2), substitutes the solution, then normalizes.
    """
    if order(xi.phase) > 2:
        raise PreconditionViolated("phase polynomial has order above 2")
    if not all(f.is_linear() for f in xi.outputs):
        raise PreconditionViolated("outputs are not linear")
    paths = list(xi.path_vars)
    bit = {v: i for i, v in enumerate(paths)}
    rows = []
    for e, f in zip(xi.signature, xi.outputs):
        mask = 0
        aff = []
        for m in (f + entry_poly(e)).monomials:
            (v,) = m if m else (None,)
            if v is not None and is_path(v):
                mask ^= 1 << bit[v]
            else:
                aff.append(m)
        rows.append([mask, BoolPoly(aff)])
    pivots = []
    r = 0
    for col in range(len(paths)):
        sel = next((i for i in range(r, len(rows)) if rows[i][0] >> col & 1), None)
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][0] >> col & 1:
                rows[i][0] ^= rows[r][0]
                rows[i][1] = rows[i][1] + rows[r][1]
        pivots.append((col, r))
        r += 1
    for mask, aff in rows[r:]:
        if aff:
            return NotIdentity(_witness_for(aff, xi), "output equations unsolvable"), []
    trace: List[RuleApplication] = []
    for col, ri in pivots:
        mask, aff = rows[ri]
        y = paths[col]
        sub = aff
        for j in range(len(paths)):
            if j != col and mask >> j & 1:
                sub = sub + BoolPoly.var(paths[j])
        phase = subst_phase(xi.phase, y, sub)
        outs = tuple(subst_bool(o, y, sub) for o in xi.outputs)
        xi = _drop(xi, [y], phase=phase, outputs=outs)
        trace.append(RuleApplication(RESTRICT, (y,), ((y, sub),)))
    xi, steps = normalize(xi)
    trace.extend(steps)
    return classify(xi), trace
