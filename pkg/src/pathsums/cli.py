"""Command-line interface.

Exit codes: 0 equal (possibly up to global phase), 1 not equal, 2 unknown,
3 usage, parse or internal error.
"""
from __future__ import annotations

import argparse
import cmath
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from itertools import product
from typing import Dict, Optional, Sequence

from . import generators as gen
from .errors import PathSumError
from .frontend import parse_circuit, parse_pathsum_spec, print_circuit, print_pathsum_spec
from .pathsum import Const, PathSum, from_circuit, pretty
from .polynomial import PhasePoly, eval_bool, eval_phase
from .rewrite import normalize
from .verify import (EQUAL, EQUAL_UP_TO_PHASE, NOT_EQUAL, UNKNOWN, Verdict, VerifyOptions,
                     verify_against_spec, verify_circuits)

EXIT = {EQUAL: 0, EQUAL_UP_TO_PHASE: 0, NOT_EQUAL: 1, UNKNOWN: 2}
EXIT_ERROR = 3
SPEC_SUFFIXES = (".sum", ".spec")
SIMULATE_MAX_PATHS = 22


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as f:
        return f.read()


def _load_sum(args) -> PathSum:
    if args.circuit:
        return from_circuit(parse_circuit(_read(args.circuit)))
    return parse_pathsum_spec(_read(args.spec))


def _options(args) -> VerifyOptions:
    return VerifyOptions(eager_reduction=not args.no_eager,
                         isometry_restriction=not args.no_restrict,
                         fallback_max_qubits=args.fallback_qubits,
                         timeout=args.timeout)


def _verify_pair(first: str, second: str, opts: VerifyOptions) -> Verdict:
    c = parse_circuit(_read(first))
    if second.endswith(SPEC_SUFFIXES):
        return verify_against_spec(c, parse_pathsum_spec(_read(second)), opts)
    return verify_circuits(c, parse_circuit(_read(second)), opts)


def _headline(v: Verdict) -> str:
    if v.outcome == EQUAL:
        return "Equal"
    if v.outcome == EQUAL_UP_TO_PHASE:
        return f"Equal up to global phase {v.theta}"
    if v.outcome == NOT_EQUAL:
        return "NotEqual"
    return "Unknown"


def cmd_verify(args) -> int:
    opts = _options(args)
    second = args.spec or args.against
    v = _verify_pair(args.circuit, second, opts)
    print(_headline(v))
    print(v.report())
    if args.trace:
        with open(args.trace, "w", encoding="utf-8") as f:
            f.write(v.trace_text())
    return EXIT[v.outcome]


def _with_global_phase(xi: PathSum) -> str:
    theta = xi.phase.constant()
    if theta and xi.phase.is_constant():
        return f"global phase {theta}; {pretty(xi.replace(phase=PhasePoly()))}"
    return pretty(xi)


def cmd_normalize(args) -> int:
    xi, trace = normalize(_load_sum(args))
    if args.spec_format:
        sys.stdout.write(print_pathsum_spec(xi))
    else:
        print(_with_global_phase(xi))
    if args.trace:
        with open(args.trace, "w", encoding="utf-8") as f:
            f.write("".join(f"{a}\n" for a in trace))
    return 0


def simulate(xi: PathSum, bits: str) -> Dict[str, complex]:
    """Amplitudes of the output state for a basis input, by summing over paths."""
    if len(bits) != xi.n or set(bits) - {"0", "1"}:
        raise UsageError(f"input must be {xi.n} bits")
    env: Dict[int, int] = {}
    for e, b in zip(xi.signature, bits):
        if isinstance(e, Const):
            if e.bit != int(b):
                return {}
        else:
            env[e] = int(b)
    xi, _ = normalize(xi)
    if xi.m > SIMULATE_MAX_PATHS:
        raise UsageError(f"{xi.m} path variables after reduction; limit is {SIMULATE_MAX_PATHS}")
    scale = 2.0 ** (-xi.amp / 2)
    out: Dict[str, complex] = {}
    for ys in product((0, 1), repeat=xi.m):
        env.update(zip(xi.path_vars, ys))
        key = "".join(str(eval_bool(f, env)) for f in xi.outputs)
        amp = scale * cmath.exp(2j * cmath.pi * float(eval_phase(xi.phase, env)))
        out[key] = out.get(key, 0) + amp
    return {k: v for k, v in sorted(out.items()) if abs(v) > 1e-12}


def cmd_simulate(args) -> int:
    for key, amp in simulate(_load_sum(args), args.input).items():
        print(f"|{key}> {amp.real:+.12f}{amp.imag:+.12f}i")
    return 0


def _families():
    return ("toffoli", "adder", "qft", "hidden-shift", "symbolic-shift", "clifford", "clifford-t")


def cmd_gen(args) -> int:
    fam, n = args.family, args.n
    spec = None
    if fam == "toffoli":
        circ, spec = gen.gen_toffoli_n(n)
        name = f"toffoli_{n}"
    elif fam == "adder":
        circ, spec = gen.gen_adder_n(n)
        name = f"adder_{n}"
    elif fam == "qft":
        circ, spec = gen.gen_qft_n(n)
        name = f"qft_{n}"
    elif fam in ("hidden-shift", "symbolic-shift"):
        sym = fam == "symbolic-shift"
        circ, spec = gen.gen_hidden_shift(n, args.A, args.seed, sym, args.gates_per_round)
        name = f"{'symbolic_shift' if sym else 'hidden_shift'}_{n}_{args.A}_s{args.seed}"
    elif fam == "clifford":
        circ = gen.gen_random_clifford(n, args.depth, args.seed)
        name = f"clifford_{n}_{args.depth}_s{args.seed}"
    else:
        circ = gen.gen_random_clifford_t(n, args.depth, args.t_count, args.seed)
        name = f"clifford_t_{n}_{args.depth}_{args.t_count}_s{args.seed}"
    os.makedirs(args.out, exist_ok=True)
    path = os.path.join(args.out, name + ".qc")
    with open(path, "w", encoding="utf-8") as f:
        f.write(print_circuit(circ))
    print(path)
    if spec is not None:
        path = os.path.join(args.out, name + ".sum")
        with open(path, "w", encoding="utf-8") as f:
            f.write(print_pathsum_spec(spec))
        print(path)
    return 0


def cmd_mutate(args) -> int:
    text = print_circuit(gen.mutate(parse_circuit(_read(args.circuit)), args.seed))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _batch_job(job):
    first, second, opts = job
    try:
        return _verify_pair(first, second, opts).report(), None
    except (PathSumError, OSError) as e:
        return None, f"{type(e).__name__}: {e}"


def cmd_batch(args) -> int:
    base = os.path.dirname(os.path.abspath(args.manifest))
    jobs = []
    for lineno, line in enumerate(_read(args.manifest).splitlines(), 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise UsageError(f"{args.manifest}:{lineno}: expected two tab-separated paths")
        first, second = (os.path.join(base, p.strip()) for p in parts)
        jobs.append((first, second, _options(args)))
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_batch_job, jobs))
    else:
        results = [_batch_job(j) for j in jobs]
    # errors dominate, then disproved pairs, then unknown ones
    rank = {0: 0, 2: 1, 1: 2, EXIT_ERROR: 3}
    worst = 0
    for (first, second, _), (report, err) in zip(jobs, results):
        if err:
            print(f"{first}\t{second}\tERROR {err}")
            code = EXIT_ERROR
        else:
            print(f"{first}\t{second}\t{report}")
            code = EXIT[report.split()[1]]
        worst = max(worst, code, key=rank.__getitem__)
    return worst


def _add_verify_flags(p) -> None:
    p.add_argument("--no-eager", action="store_true", help="build the whole miter before reducing")
    p.add_argument("--no-restrict", action="store_true", help="skip the isometry restriction")
    p.add_argument("--fallback-qubits", type=int, default=10, metavar="N",
                   help="dense-matrix fallback for residual sums on at most N qubits (0 disables)")
    p.add_argument("--timeout", type=float, default=None, metavar="SECONDS")


def _source(p) -> None:
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--circuit")
    g.add_argument("--spec")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pathsums", description="Path-sum based quantum circuit verification.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="check a circuit against a spec or another circuit")
    p.add_argument("--circuit", required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--spec")
    g.add_argument("--against", metavar="CIRCUIT")
    _add_verify_flags(p)
    p.add_argument("--trace", metavar="FILE")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("normalize", help="reduce a path-sum and print it")
    _source(p)
    p.add_argument("--spec-format", action="store_true", help="print in the spec file format")
    p.add_argument("--trace", metavar="FILE")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("simulate", help="print output amplitudes for a basis input")
    _source(p)
    p.add_argument("--input", required=True, metavar="BITS")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("gen", help="write a benchmark circuit and its spec")
    p.add_argument("--family", required=True, choices=_families())
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--A", type=int, default=1, help="hidden-shift alternations")
    p.add_argument("--gates-per-round", type=int, default=200)
    p.add_argument("--depth", type=int, default=100)
    p.add_argument("--t-count", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, metavar="DIR")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("mutate", help="delete one random gate")
    p.add_argument("--circuit", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(func=cmd_mutate)

    p = sub.add_parser("batch", help="verify every pair listed in a manifest")
    p.add_argument("--manifest", required=True)
    p.add_argument("--jobs", type=int, default=1)
    _add_verify_flags(p)
    p.set_defaults(func=cmd_batch)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as e:
        print(e, file=sys.stderr)
    except (PathSumError, OSError) as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
    return EXIT_ERROR


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
