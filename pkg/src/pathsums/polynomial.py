"""Multilinear polynomials over GF(2) and over the dyadic rationals mod 1.

Variables are plain integers.  Input variables ``x_i`` are the integers
``i`` and path variables ``y_j`` are ``PATH_BASE + j``, so the natural
integer order puts every input variable before every path variable and
then orders by index.  A monomial is a ``frozenset`` of variables; the
empty set is the constant monomial 1.
"""
from __future__ import annotations

from collections import Counter
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Dict, FrozenSet, Iterable, Mapping, Tuple

from .errors import LiftBlowup, SubstitutionCycle, UnboundVariable

PATH_BASE = 1 << 40

Monomial = FrozenSet[int]
ONE: Monomial = frozenset()

#: default cap on the number of monomials an exact lift will fold over
LIFT_CAP = 64
#: cap on the number of subset products a truncated lift may enumerate
LIFT_WORK_CAP = 2_000_000


def xvar(i: int) -> int:
    return i


def yvar(j: int) -> int:
    return PATH_BASE + j


def is_path(v: int) -> bool:
    return v >= PATH_BASE


def is_input(v: int) -> bool:
    return v < PATH_BASE


def var_index(v: int) -> int:
    return v - PATH_BASE if v >= PATH_BASE else v


def var_name(v: int) -> str:
    return f"y{v - PATH_BASE}" if v >= PATH_BASE else f"x{v}"


def parse_var(name: str) -> int:
    """Inverse of :func:`var_name`; raises ``ValueError`` on other names."""
    if len(name) < 2 or name[0] not in "xy" or not name[1:].isdigit():
        raise ValueError(f"not a variable name: {name!r}")
    idx = int(name[1:])
    return yvar(idx) if name[0] == "y" else xvar(idx)


def monomial_key(m: Monomial) -> Tuple[int, Tuple[int, ...]]:
    """Graded-lexicographic key: by size, then by the sorted variable list."""
    return (len(m), tuple(sorted(m)))


def monomial_str(m: Monomial) -> str:
    if not m:
        return "1"
    return "*".join(var_name(v) for v in sorted(m))


# ---------------------------------------------------------------------------
# Dyadic fractions mod 1


class Dyadic:
    """Exact ``numerator / 2**exponent`` reduced into ``[0, 1)``.

    Normalized so that the numerator is odd, or the value is ``0/2**0``.
    """

    __slots__ = ("num", "exp")

    def __init__(self, num: int = 0, exp: int = 0):
        if exp < 0:
            raise ValueError("negative exponent")
        num %= 1 << exp
        if num == 0:
            exp = 0
        else:
            tz = (num & -num).bit_length() - 1
            num >>= tz
            exp -= tz
        self.num = num
        self.exp = exp

    @classmethod
    def _raw(cls, num: int, exp: int) -> "Dyadic":
        d = object.__new__(cls)
        d.num = num
        d.exp = exp
        return d

    @classmethod
    def from_fraction(cls, value) -> "Dyadic":
        """Build from anything with numerator/denominator (``Fraction``, ``int``)."""
        num, den = value.numerator, value.denominator
        exp = den.bit_length() - 1
        if den != 1 << exp:
            raise ValueError(f"{value} is not a dyadic fraction")
        return cls(num, exp)

    def __bool__(self) -> bool:
        return self.num != 0

    def __eq__(self, other) -> bool:
        if isinstance(other, Dyadic):
            return self.num == other.num and self.exp == other.exp
        if isinstance(other, int):
            return self.num == 0 and other == 0
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.num, self.exp))

    def __add__(self, other: "Dyadic") -> "Dyadic":
        if isinstance(other, int):
            return self
        e = max(self.exp, other.exp)
        return Dyadic((self.num << (e - self.exp)) + (other.num << (e - other.exp)), e)

    __radd__ = __add__

    def __neg__(self) -> "Dyadic":
        return Dyadic(-self.num, self.exp)

    def __sub__(self, other: "Dyadic") -> "Dyadic":
        return self + (-other)

    def __mul__(self, k: int) -> "Dyadic":
        if not isinstance(k, int):
            return NotImplemented
        return Dyadic(self.num * k, self.exp)

    __rmul__ = __mul__

    def __float__(self) -> float:
        return float(Fraction(self.num, 1 << self.exp))

    def __repr__(self) -> str:
        return f"Dyadic({self})"

    def __str__(self) -> str:
        if self.exp == 0:
            return "0"
        return f"{self.num}/{1 << self.exp}"


HALF = Dyadic(1, 1)
QUARTER = Dyadic(1, 2)
THREE_QUARTERS = Dyadic(3, 2)
EIGHTH = Dyadic(1, 3)


# ---------------------------------------------------------------------------
# Boolean polynomials (ANF)


class BoolPoly:
    """XOR of a set of monomials.  Canonical: equal functions have equal sets."""

    __slots__ = ("monomials", "_hash")

    def __init__(self, monomials: Iterable[Monomial] = ()):
        self.monomials: FrozenSet[Monomial] = frozenset(monomials)
        self._hash = None

    @classmethod
    def from_counts(cls, monos: Iterable[Monomial]) -> "BoolPoly":
        """Build from a multiset of monomials, cancelling pairs."""
        c = Counter(monos)
        return cls(m for m, k in c.items() if k & 1)

    @classmethod
    def const(cls, bit: int) -> "BoolPoly":
        return cls((ONE,)) if bit & 1 else cls()

    @classmethod
    def var(cls, v: int) -> "BoolPoly":
        return cls((frozenset((v,)),))

    def __add__(self, other: "BoolPoly") -> "BoolPoly":
        return BoolPoly(self.monomials ^ other.monomials)

    __xor__ = __add__

    def __mul__(self, other: "BoolPoly") -> "BoolPoly":
        return bool_mul(self, other)

    def __eq__(self, other) -> bool:
        return isinstance(other, BoolPoly) and self.monomials == other.monomials

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.monomials)
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.monomials)

    def __len__(self) -> int:
        return len(self.monomials)

    def __iter__(self):
        return iter(sorted(self.monomials, key=monomial_key))

    def variables(self) -> FrozenSet[int]:
        return frozenset().union(*self.monomials) if self.monomials else frozenset()

    def degree(self) -> int:
        return max((len(m) for m in self.monomials), default=0)

    def is_linear(self) -> bool:
        """Affine really: every monomial has at most one variable."""
        return all(len(m) <= 1 for m in self.monomials)

    def is_constant(self) -> bool:
        return all(not m for m in self.monomials)

    def constant_bit(self) -> int:
        return 1 if ONE in self.monomials else 0

    def __repr__(self) -> str:
        return f"BoolPoly({self})"

    def __str__(self) -> str:
        if not self.monomials:
            return "0"
        return " + ".join(monomial_str(m) for m in self)


def bool_add(p: BoolPoly, q: BoolPoly) -> BoolPoly:
    return BoolPoly(p.monomials ^ q.monomials)


def bool_mul(p: BoolPoly, q: BoolPoly) -> BoolPoly:
    if not p.monomials or not q.monomials:
        return BoolPoly()
    if q.monomials == {ONE}:
        return p
    if p.monomials == {ONE}:
        return q
    acc = set()
    for a in p.monomials:
        for b in q.monomials:
            m = a | b
            if m in acc:
                acc.remove(m)
            else:
                acc.add(m)
    return BoolPoly(acc)


# ---------------------------------------------------------------------------
# Phase polynomials


class PhasePoly:
    """Map from monomial to non-zero :class:`Dyadic` coefficient."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Dyadic] | None = None):
        self.terms: Dict[Monomial, Dyadic] = (
            {m: c for m, c in terms.items() if c} if terms else {})
        self._hash = None

    @classmethod
    def _trusted(cls, terms: Dict[Monomial, Dyadic]) -> "PhasePoly":
        p = object.__new__(cls)
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c: Dyadic) -> "PhasePoly":
        return cls({ONE: c})

    @classmethod
    def monomial(cls, m: Iterable[int], c: Dyadic) -> "PhasePoly":
        return cls({frozenset(m): c})

    def __eq__(self, other) -> bool:
        return isinstance(other, PhasePoly) and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __add__(self, other: "PhasePoly") -> "PhasePoly":
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m)
            v = c if v is None else v + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return PhasePoly._trusted(out)

    def __neg__(self) -> "PhasePoly":
        return PhasePoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "PhasePoly") -> "PhasePoly":
        return self + (-other)

    def scale(self, k: int) -> "PhasePoly":
        return PhasePoly({m: c * k for m, c in self.terms.items()})

    def times_monomial(self, mono: Iterable[int]) -> "PhasePoly":
        mono = frozenset(mono)
        out: Dict[Monomial, Dyadic] = {}
        for m, c in self.terms.items():
            key = m | mono
            v = out.get(key)
            v = c if v is None else v + c
            if v:
                out[key] = v
            else:
                out.pop(key, None)
        return PhasePoly._trusted(out)

    def constant(self) -> Dyadic:
        return self.terms.get(ONE, Dyadic())

    def is_constant(self) -> bool:
        return all(not m for m in self.terms)

    def variables(self) -> FrozenSet[int]:
        return frozenset().union(*self.terms) if self.terms else frozenset()

    def max_exponent(self) -> int:
        return max((c.exp for c in self.terms.values()), default=0)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: monomial_key(t[0]))

    def __repr__(self) -> str:
        return f"PhasePoly({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            parts.append(str(c) if not m else f"{c}*{monomial_str(m)}")
        return " + ".join(parts)


# Hot-path helpers: coefficients as integer numerators over a common 2**E.

def _to_ints(terms: Mapping[Monomial, Dyadic], e: int) -> Dict[Monomial, int]:
    return {m: c.num << (e - c.exp) for m, c in terms.items()}


def _from_ints(acc: Mapping[Monomial, int], e: int) -> Dict[Monomial, Dyadic]:
    mask = (1 << e) - 1
    out: Dict[Monomial, Dyadic] = {}
    raw = Dyadic._raw
    for m, n in acc.items():
        n &= mask
        if n:
            tz = (n & -n).bit_length() - 1
            out[m] = raw(n >> tz, e - tz)
    return out


def _lift_mod(monos: Iterable[Monomial], e: int) -> Dict[Monomial, int]:
    """Integer lift of the XOR of ``monos`` reduced modulo ``2**e``.

    Uses the inclusion-exclusion form of XOR; subsets of size > e carry a
    factor ``2**e`` and vanish.
    """
    if e <= 0:
        return {}
    monos = sorted(set(monos), key=monomial_key)
    t = len(monos)
    top = min(e, t)
    work = sum(comb(t, k) for k in range(1, top + 1))
    if work > LIFT_WORK_CAP:
        raise LiftBlowup(f"lift of {t} monomials at precision 2^{e} needs {work} products")
    mod_mask = (1 << e) - 1
    out: Dict[Monomial, int] = {}
    for k in range(1, top + 1):
        c = ((-2) ** (k - 1)) & mod_mask
        if k == 1:
            for m in monos:
                out[m] = (out.get(m, 0) + c) & mod_mask
            continue
        for combo in combinations(monos, k):
            m = frozenset().union(*combo)
            out[m] = (out.get(m, 0) + c) & mod_mask
    return {m: c for m, c in out.items() if c}


def lift(p: BoolPoly, cap: int = LIFT_CAP) -> Dict[Monomial, int]:
    """Exact integer multilinear polynomial agreeing with ``p`` on {0,1}.

    Folds ``lift(P + m) = lift(P) + m - 2 lift(P m)`` over the monomials in
    canonical order.  Coefficients are integers, so the result is a plain
    ``{monomial: int}`` map; scale it with :func:`lift_scaled`.
    """
    if len(p.monomials) > cap:
        raise LiftBlowup(f"lift of {len(p.monomials)} monomials exceeds cap {cap}")
    return _lift_fold(tuple(sorted(p.monomials, key=monomial_key)))


def _lift_fold(monos: Tuple[Monomial, ...]) -> Dict[Monomial, int]:
    acc: Dict[Monomial, int] = {}
    seen = BoolPoly()
    for m in monos:
        prod = bool_mul(seen, BoolPoly((m,)))
        acc[m] = acc.get(m, 0) + 1
        if prod.monomials:
            for mm, c in _lift_fold(tuple(sorted(prod.monomials, key=monomial_key))).items():
                acc[mm] = acc.get(mm, 0) - 2 * c
        seen = seen + BoolPoly((m,))
    return {m: c for m, c in acc.items() if c}


def lift_scaled(p: BoolPoly, c: Dyadic) -> PhasePoly:
    """``c * lift(p)`` reduced mod 1, without forming the full lift."""
    if not c or not p.monomials:
        return PhasePoly()
    e = c.exp
    acc = {m: k * c.num for m, k in _lift_mod(p.monomials, e).items()}
    return PhasePoly._trusted(_from_ints(acc, e))


def order(p: PhasePoly) -> int:
    """Maximum of ``exponent + |monomial| - 1`` over terms; 0 for the zero polynomial."""
    return max((c.exp + len(m) - 1 for m, c in p.terms.items()), default=0)


def cofactor(p, v: int):
    """Split ``p = v * quotient + remainder`` with ``v`` in neither part."""
    if isinstance(p, BoolPoly):
        q, r = [], []
        for m in p.monomials:
            if v in m:
                q.append(m - {v})
            else:
                r.append(m)
        return BoolPoly(q), BoolPoly(r)
    q: Dict[Monomial, Dyadic] = {}
    r: Dict[Monomial, Dyadic] = {}
    for m, c in p.terms.items():
        if v in m:
            q[m - {v}] = c
        else:
            r[m] = c
    return PhasePoly._trusted(q), PhasePoly._trusted(r)


def subst_bool(p: BoolPoly, v: int, q: BoolPoly) -> BoolPoly:
    if any(v in m for m in q.monomials):
        raise SubstitutionCycle(f"{var_name(v)} occurs in {q}")
    quo, rem = cofactor(p, v)
    if not quo.monomials:
        return p
    return rem + bool_mul(quo, q)


def subst_phase(p: PhasePoly, v: int, q: BoolPoly) -> PhasePoly:
    """Replace ``v`` by the lift of ``q`` and reduce mod 1."""
    if any(v in m for m in q.monomials):
        raise SubstitutionCycle(f"{var_name(v)} occurs in {q}")
    hit = [(m, c) for m, c in p.terms.items() if v in m]
    if not hit:
        return p
    e = p.max_exponent()
    acc = {m: c.num << (e - c.exp) for m, c in p.terms.items() if v not in m}
    lifts: Dict[int, Dict[Monomial, int]] = {}
    for m, c in hit:
        lifted = lifts.get(c.exp)
        if lifted is None:
            lifted = lifts[c.exp] = _lift_mod(q.monomials, c.exp)
        base = m - {v}
        n = c.num << (e - c.exp)
        for lm, k in lifted.items():
            key = base | lm
            acc[key] = acc.get(key, 0) + n * k
    return PhasePoly._trusted(_from_ints(acc, e))


def eval_bool(p: BoolPoly, assignment: Mapping[int, int]) -> int:
    bit = 0
    for m in p.monomials:
        val = 1
        for v in m:
            try:
                a = assignment[v]
            except KeyError:
                raise UnboundVariable(var_name(v)) from None
            if not a:
                val = 0
                break
        bit ^= val
    return bit


def eval_phase(p: PhasePoly, assignment: Mapping[int, int]) -> Dyadic:
    total = Dyadic()
    for m, c in p.terms.items():
        on = True
        for v in m:
            try:
                a = assignment[v]
            except KeyError:
                raise UnboundVariable(var_name(v)) from None
            if not a:
                on = False
        if on:
            total = total + c
    return total


def phase_from_lift(lifted: Mapping[Monomial, int], c: Dyadic) -> PhasePoly:
    """Scale an exact integer lift by ``c`` and reduce mod 1."""
    return PhasePoly({m: c * k for m, k in lifted.items()})


def bool_as_phase_half(p: BoolPoly) -> PhasePoly:
    """``1/2 * p`` as a phase; the lift only matters modulo 2 here."""
    return PhasePoly._trusted({m: HALF for m in p.monomials})
