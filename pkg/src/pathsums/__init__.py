"""Quantum circuit verification with path-sums.

Circuits are interpreted as sums over Boolean paths with a dyadic phase
polynomial, reduced with a small terminating rewrite system, and compared
through miters that should reduce to the identity.
"""
from .circuit import Circuit, Gate, inverse
from .errors import PathSumError
from .frontend import parse_circuit, parse_pathsum_spec, print_circuit, print_pathsum_spec
from .pathsum import Const, PathSum, compose, from_circuit, tensor
from .rewrite import classify, normalize
from .verify import Verdict, VerifyOptions, verify_against_spec, verify_circuits

__all__ = [
    "Circuit", "Gate", "inverse", "PathSumError", "parse_circuit", "parse_pathsum_spec",
    "print_circuit", "print_pathsum_spec", "Const", "PathSum", "compose", "from_circuit",
    "tensor", "classify", "normalize", "Verdict", "VerifyOptions", "verify_against_spec",
    "verify_circuits",
]
__version__ = "0.1.0"
