"""Gate and circuit values, inversion, and Clifford+T expansion passes."""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable, List, Optional, Sequence, Tuple

from .errors import InvalidGate

ONE_QUBIT = {"H", "X", "Y", "Z", "S", "Sdg", "T", "Tdg", "Rk", "Rkdg"}
TWO_QUBIT = {"CNOT", "CZ", "SWAP"}
GATE_NAMES = ONE_QUBIT | TWO_QUBIT | {"TOF"}

_INVERSE = {"S": "Sdg", "Sdg": "S", "T": "Tdg", "Tdg": "T", "Rk": "Rkdg", "Rkdg": "Rk"}
CLIFFORD = {"H", "X", "Y", "Z", "S", "Sdg", "CNOT", "CZ", "SWAP"}


@dataclass(frozen=True)
class Gate:
    """A gate applied to qubit indices.  For ``TOF`` the last index is the target."""

    name: str
    qubits: Tuple[int, ...]
    k: Optional[int] = None

    def __post_init__(self):
        if self.name not in GATE_NAMES:
            raise InvalidGate(f"unknown gate {self.name!r}")
        object.__setattr__(self, "qubits", tuple(self.qubits))
        n = len(self.qubits)
        if self.name in ONE_QUBIT and n != 1:
            raise InvalidGate(f"{self.name} takes one qubit, got {n}")
        if self.name in TWO_QUBIT and n != 2:
            raise InvalidGate(f"{self.name} takes two qubits, got {n}")
        if self.name == "TOF" and n < 1:
            raise InvalidGate("TOF needs a target")
        if len(set(self.qubits)) != n:
            raise InvalidGate(f"repeated operand in {self.name}{self.qubits}")
        if self.name in ("Rk", "Rkdg"):
            if self.k is None or self.k < 1:
                raise InvalidGate(f"R_k needs k >= 1, got {self.k}")
        elif self.k is not None:
            raise InvalidGate(f"{self.name} takes no parameter")

    def inverse(self) -> "Gate":
        name = _INVERSE.get(self.name)
        return self if name is None else replace(self, name=name)

    def is_clifford(self) -> bool:
        if self.name in CLIFFORD:
            return True
        if self.name in ("Rk", "Rkdg"):
            return self.k <= 2
        return self.name == "TOF" and len(self.qubits) <= 2

    def __str__(self) -> str:
        k = f"({self.k})" if self.k is not None else ""
        return f"{self.name}{k} {' '.join(map(str, self.qubits))}"


def H(q): return Gate("H", (q,))
def X(q): return Gate("X", (q,))
def Y(q): return Gate("Y", (q,))
def Z(q): return Gate("Z", (q,))
def S(q): return Gate("S", (q,))
def Sdg(q): return Gate("Sdg", (q,))
def T(q): return Gate("T", (q,))
def Tdg(q): return Gate("Tdg", (q,))
def Rk(k, q): return Gate("Rk", (q,), k)
def Rkdg(k, q): return Gate("Rkdg", (q,), k)
def CNOT(c, t): return Gate("CNOT", (c, t))
def CZ(a, b): return Gate("CZ", (a, b))
def SWAP(a, b): return Gate("SWAP", (a, b))
def TOF(*qs): return Gate("TOF", tuple(qs))


@dataclass(frozen=True)
class Circuit:
    """Named qubits, the subset that are primary inputs, and a gate list.

    Qubits not listed as inputs start in ``|0>``.
    """

    qubits: Tuple[str, ...]
    inputs: Tuple[str, ...]
    gates: Tuple[Gate, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "qubits", tuple(self.qubits))
        object.__setattr__(self, "inputs", tuple(self.inputs))
        object.__setattr__(self, "gates", tuple(self.gates))

    @classmethod
    def on(cls, n: int, gates: Iterable[Gate] = (), ancillas: Iterable[int] = ()) -> "Circuit":
        """Convenience constructor with qubits named ``q0..q{n-1}``."""
        anc = set(ancillas)
        names = tuple(f"q{i}" for i in range(n))
        return cls(names, tuple(nm for i, nm in enumerate(names) if i not in anc), tuple(gates))

    @property
    def n(self) -> int:
        return len(self.qubits)

    def input_flags(self) -> List[bool]:
        ins = set(self.inputs)
        return [q in ins for q in self.qubits]

    def with_gates(self, gates: Iterable[Gate]) -> "Circuit":
        return replace(self, gates=tuple(gates))

    def h_count(self) -> int:
        return sum(1 for g in self.gates if g.name == "H")

    def t_count(self) -> int:
        return sum(1 for g in self.gates if g.name in ("T", "Tdg"))

    def is_clifford(self) -> bool:
        return all(g.is_clifford() for g in self.gates)

    def __len__(self) -> int:
        return len(self.gates)


def inverse(c: Circuit) -> Circuit:
    """Reverse the gate list and invert every gate."""
    return c.with_gates(g.inverse() for g in reversed(c.gates))


def ccz_gates(a: int, b: int, c: int) -> List[Gate]:
    """Doubly-controlled Z over CNOT+T: seven T/T* gates on the parities of a, b, c."""
    return [
        T(a), T(b), T(c),
        CNOT(a, b), Tdg(b),          # a+b
        CNOT(b, c), T(c),            # a+b+c
        CNOT(a, c), Tdg(c),          # b+c
        CNOT(b, c), Tdg(c),          # a+c
        CNOT(a, c), CNOT(a, b),
    ]


def toffoli_gates(a: int, b: int, t: int) -> List[Gate]:
    """Standard 7-T Toffoli: H on the target around a CCZ."""
    return [H(t), *ccz_gates(a, b, t), H(t)]


def expand_toffolis(c: Circuit) -> Circuit:
    """Replace every TOF gate by Clifford+T; TOF with more than two controls is rejected."""
    out: List[Gate] = []
    for g in c.gates:
        if g.name != "TOF":
            out.append(g)
        elif len(g.qubits) == 1:
            out.append(X(g.qubits[0]))
        elif len(g.qubits) == 2:
            out.append(CNOT(*g.qubits))
        elif len(g.qubits) == 3:
            out.extend(toffoli_gates(*g.qubits))
        else:
            raise InvalidGate("expansion of TOF with more than two controls needs ancillas")
    return c.with_gates(out)


def remap(gates: Sequence[Gate], mapping: Sequence[int]) -> List[Gate]:
    return [replace(g, qubits=tuple(mapping[q] for q in g.qubits)) for g in gates]
