"""Equivalence checking: miter construction, reduction, heuristics and verdicts."""
from __future__ import annotations

import time
from dataclasses import dataclass, replace
from typing import Dict, List, Optional, Tuple

import numpy as np

from .circuit import Circuit, inverse
from .errors import ArityMismatch, IncompatibleSignature, Timeout
from .pathsum import Const, PathSum, apply_gate, from_circuit, is_clifford_sum
from .polynomial import Dyadic, var_name
from .rewrite import (IdentityExact, IdentityGlobalPhase, Inconclusive, NotIdentity,
                      RuleApplication, classify, decide_clifford, find_match, apply_rule,
                      restrict_to_identity)

EQUAL = "equal"
EQUAL_UP_TO_PHASE = "equal-up-to-global-phase"
NOT_EQUAL = "not-equal"
UNKNOWN = "unknown"

__all__ = ["VerifyOptions", "Verdict", "verify_against_spec", "verify_circuits", "inverse",
           "build_miter", "EQUAL", "EQUAL_UP_TO_PHASE", "NOT_EQUAL", "UNKNOWN"]


@dataclass(frozen=True)
class VerifyOptions:
    eager_reduction: bool = True
    isometry_restriction: bool = True
    #: oracle fallback for Inconclusive results on at most this many qubits; 0 disables it
    fallback_max_qubits: int = 0
    assume_well_formed_spec: bool = True
    timeout: Optional[float] = None


@dataclass(frozen=True)
class Verdict:
    outcome: str
    theta: Optional[Dyadic] = None
    witness: Optional[Dict[int, int]] = None
    reason: str = ""
    residual: Optional[PathSum] = None
    trace: Tuple[RuleApplication, ...] = ()
    qubits: int = 0
    path_vars: int = 0
    time_ms: float = 0.0

    @property
    def positive(self) -> bool:
        return self.outcome in (EQUAL, EQUAL_UP_TO_PHASE)

    def report(self) -> str:
        parts = [f"VERDICT {self.outcome}"]
        if self.theta is not None:
            parts.append(f"theta={self.theta}")
        parts += [f"qubits={self.qubits}", f"pathvars={self.path_vars}",
                  f"time_ms={self.time_ms:.1f}"]
        if self.witness is not None:
            w = "".join(str(self.witness[v]) for v in sorted(self.witness))
            parts.append(f"witness={w or '-'}")
        if self.reason:
            parts.append(f"reason=\"{self.reason}\"")
        return " ".join(parts)

    def trace_text(self) -> str:
        return "".join(f"{a}\n" for a in self.trace)


class _Clock:
    def __init__(self, timeout: Optional[float]):
        self.start = time.perf_counter()
        self.deadline = None if timeout is None else self.start + timeout

    def check(self) -> None:
        if self.deadline is not None and time.perf_counter() > self.deadline:
            raise Timeout("verification timed out")

    def ms(self) -> float:
        return (time.perf_counter() - self.start) * 1000.0


def _normalize(xi: PathSum, trace: List[RuleApplication], clock: _Clock) -> PathSum:
    while True:
        clock.check()
        hit = find_match(xi)
        if hit is None:
            return xi
        xi, app = apply_rule(xi, *hit)
        trace.append(app)


def build_miter(start: PathSum, gates, eager: bool = True,
                trace: Optional[List[RuleApplication]] = None,
                clock: Optional[_Clock] = None) -> PathSum:
    """Apply ``gates`` to ``start``, normalizing after each gate when ``eager``."""
    trace = [] if trace is None else trace
    clock = clock or _Clock(None)
    xi = start
    for g in gates:
        xi = apply_gate(xi, g)
        if eager:
            xi = _normalize(xi, trace, clock)
        else:
            clock.check()
    return _normalize(xi, trace, clock)


def _check_signature(c: Circuit, spec: PathSum) -> None:
    if c.n != spec.n:
        raise ArityMismatch(f"circuit has {c.n} qubits, specification has {spec.n}")
    for i, (is_in, e) in enumerate(zip(c.input_flags(), spec.signature)):
        if is_in == isinstance(e, Const) or (isinstance(e, Const) and e.bit != 0):
            raise IncompatibleSignature(
                i, f"qubit {c.qubits[i]}: circuit {'input' if is_in else 'ancilla |0>'} "
                   f"vs specification entry {e if isinstance(e, Const) else var_name(e)}")


def verify_against_spec(c: Circuit, spec: PathSum,
                        opts: VerifyOptions = VerifyOptions()) -> Verdict:
    """Is the circuit's operator equal to the specification?

    Checks that the miter (the specification followed by the inverse
    circuit) reduces to the identity on the specification's domain.
    """
    _check_signature(c, spec)
    v = _run(spec, inverse(c).gates, opts, c.n, c.h_count(), opts.assume_well_formed_spec)
    if v.theta is not None:
        # the miter is C^dagger S; report theta with C = e^{2 pi i theta} S
        v = replace(v, theta=-v.theta)
    return v


def verify_circuits(c1: Circuit, c2: Circuit, opts: VerifyOptions = VerifyOptions()) -> Verdict:
    """Is ``c1`` equal to ``c2``?  Both must declare the same qubits and inputs.

    A global-phase verdict means ``c1 = e^{2 pi i theta} c2``.
    """
    if c1.n != c2.n:
        raise ArityMismatch(f"{c1.n} vs {c2.n} qubits")
    for i, (a, b) in enumerate(zip(c1.input_flags(), c2.input_flags())):
        if a != b:
            raise IncompatibleSignature(i, f"qubit {i} is an input in only one circuit")
    start = from_circuit(c1.with_gates(()))
    gates = list(c1.gates) + list(inverse(c2).gates)
    return _run(start, gates, opts, c1.n, c1.h_count(), True)


def _run(start: PathSum, gates, opts: VerifyOptions, n: int, pv: int,
         well_formed: bool) -> Verdict:
    clock = _Clock(opts.timeout)
    trace: List[RuleApplication] = []

    def done(outcome, **kw) -> Verdict:
        return Verdict(outcome, trace=tuple(trace), qubits=n, path_vars=pv,
                       time_ms=clock.ms(), **kw)

    try:
        miter = build_miter(start, gates, opts.eager_reduction, trace, clock)
        xi = miter
        if opts.isometry_restriction and well_formed:
            xi, steps = restrict_to_identity(xi)
            trace.extend(steps)
            xi = _normalize(xi, trace, clock)
        cls = classify(xi)
        if isinstance(cls, Inconclusive) and well_formed and is_clifford_sum(xi):
            cls, steps = decide_clifford(xi)
            trace.extend(steps)
    except Timeout:
        return done(UNKNOWN, reason="timeout")
    if isinstance(cls, IdentityExact):
        return done(EQUAL)
    if isinstance(cls, IdentityGlobalPhase):
        return done(EQUAL_UP_TO_PHASE, theta=cls.theta)
    if isinstance(cls, NotIdentity):
        reason = cls.reason
        if xi is not miter:
            reason += " (on the identity-restricted miter)"
        return done(NOT_EQUAL, witness=cls.witness, reason=reason)
    if n <= opts.fallback_max_qubits:
        v = _oracle_fallback(miter)
        if v is not None:
            outcome, kw = v
            return done(outcome, **kw)
    return done(UNKNOWN, residual=cls.residual, reason=f"{cls.residual.m} path variables remain")


def _oracle_fallback(miter: PathSum):
    """Expand the remaining path variables numerically and compare with the identity."""
    from .oracle import MAX_PATH_VARS, approx_equal, identity_on_domain, pathsum_to_matrix
    if miter.m > MAX_PATH_VARS:
        return None
    m = pathsum_to_matrix(miter)
    ident = identity_on_domain(miter)
    if approx_equal(m, ident):
        return EQUAL, {"reason": "oracle"}
    if approx_equal(m, ident, up_to_global_phase=True):
        d = np.diag(m)[np.abs(np.diag(m)) > 0.5]
        turns = np.angle(d[0]) / (2 * np.pi) % 1.0
        e = max(miter.phase.max_exponent(), 1)
        theta = Dyadic(int(round(turns * (1 << e))), e)
        return EQUAL_UP_TO_PHASE, {"theta": theta, "reason": "oracle"}
    cols = np.nonzero(np.max(np.abs(m - ident), axis=0) > 1e-9)[0]
    col = int(cols[0])
    w = {}
    for i, e in enumerate(miter.signature):
        if not isinstance(e, Const):
            w[e] = (col >> (miter.n - 1 - i)) & 1
    return NOT_EQUAL, {"witness": w, "reason": "oracle counterexample column"}
