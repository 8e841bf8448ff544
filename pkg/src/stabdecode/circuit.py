"""Gate lists over 1-based qubits, their text format, and CNOT linear maps."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from stabdecode import gf2

ARITY = {"H": 1, "X": 1, "Z": 1, "S": 1, "CNOT": 2, "CZ": 2}
SELF_INVERSE = {"H", "X", "Z", "CNOT", "CZ"}


class CircuitParseError(ValueError):
    pass


@dataclass(frozen=True)
class Gate:
    kind: str
    qubits: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "qubits", tuple(int(q) for q in self.qubits))
        if self.kind not in ARITY:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        if len(self.qubits) != ARITY[self.kind]:
            raise ValueError(f"{self.kind} takes {ARITY[self.kind]} operand(s), got {len(self.qubits)}")
        if any(q < 1 for q in self.qubits):
            raise ValueError(f"qubit indices are 1-based, got {self.qubits}")
        if len(set(self.qubits)) != len(self.qubits):
            raise ValueError(f"{self.kind} operands must be distinct, got {self.qubits}")

    @property
    def control(self) -> int:
        return self.qubits[0]

    @property
    def target(self) -> int:
        return self.qubits[-1]

    def __str__(self) -> str:
        return " ".join([self.kind, *map(str, self.qubits)])


def cnot(control: int, target: int) -> Gate:
    return Gate("CNOT", (control, target))


@dataclass(frozen=True)
class Circuit:
    width: int
    gates: tuple[Gate, ...] = ()
    ancilla_count: int = 0

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        if self.width < 1:
            raise ValueError("circuit width must be positive")
        if not 0 <= self.ancilla_count < self.width:
            raise ValueError(f"ancilla_count must be in [0, width), got {self.ancilla_count}")
        for g in self.gates:
            if max(g.qubits) > self.width:
                raise ValueError(f"gate {g} exceeds circuit width {self.width}")

    @property
    def code_qubits(self) -> int:
        return self.width - self.ancilla_count

    def __len__(self) -> int:
        return len(self.gates)

    def __add__(self, other: Circuit) -> Circuit:
        if other.width != self.width:
            raise ValueError("cannot concatenate circuits of different width")
        return Circuit(self.width, self.gates + other.gates, max(self.ancilla_count, other.ancilla_count))


@dataclass(frozen=True)
class ChainSpec:
    order: tuple[int, ...] = field()

    def __post_init__(self):
        object.__setattr__(self, "order", tuple(int(q) for q in self.order))
        if not self.order:
            raise ValueError("chain order must not be empty")
        if len(set(self.order)) != len(self.order):
            raise ValueError(f"chain qubits must be distinct, got {list(self.order)}")
        if min(self.order) < 1:
            raise ValueError("chain qubits are 1-based")

    def __len__(self) -> int:
        return len(self.order)


def gate_count(c: Circuit) -> int:
    return len(c.gates)


def inverse(c: Circuit) -> Circuit:
    gates: list[Gate] = []
    for g in reversed(c.gates):
        if g.kind in SELF_INVERSE:
            gates.append(g)
        else:
            # S^-1 = S^3 keeps the gate alphabet closed
            gates.extend([g, g, g])
    return Circuit(c.width, tuple(gates), c.ancilla_count)


def make_linked_chain(spec: ChainSpec, width: int | None = None) -> Circuit:
    """CNOT q1->q2, q2->q3, ... along the chain order."""
    if len(spec) < 2:
        raise ValueError("a linked CNOT chain needs at least two qubits")
    q = spec.order
    return Circuit(width or max(q), tuple(cnot(a, b) for a, b in zip(q, q[1:])))


def is_linked_chain(c: Circuit) -> bool:
    gates = c.gates
    if not gates or any(g.kind != "CNOT" for g in gates):
        return False
    if any(nxt.control != prev.target for prev, nxt in zip(gates, gates[1:])):
        return False
    targets = [g.target for g in gates]
    return len(set(targets)) == len(targets) and gates[0].control not in targets


def cnot_linear_map(c: Circuit) -> np.ndarray:
    """Matrix ``L`` over GF(2) with ``bits' = L @ bits`` for the circuit."""
    m = np.eye(c.width, dtype=np.uint8)
    for g in c.gates:
        if g.kind != "CNOT":
            raise ValueError(f"cnot_linear_map needs a CNOT-only circuit, found {g.kind}")
        m[g.target - 1] ^= m[g.control - 1]
    return m


def cnot_map_inverse(c: Circuit) -> np.ndarray:
    return gf2.inverse(cnot_linear_map(c))


def serialize(c: Circuit) -> str:
    lines = [f"# width {c.width} ancilla {c.ancilla_count}"]
    lines += [str(g) for g in c.gates]
    return "\n".join(lines) + "\n"


def parse(text: str) -> Circuit:
    """Parse the circuit text format.

    Without a ``# width`` header the width is the largest operand seen.
    """
    width = ancilla = None
    gates: list[Gate] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            parts = line[1:].split()
            if parts[:1] == ["width"]:
                try:
                    width = int(parts[1])
                    ancilla = int(parts[3]) if len(parts) >= 4 and parts[2] == "ancilla" else 0
                except (IndexError, ValueError):
                    raise CircuitParseError(f"line {lineno}: malformed header {raw!r}") from None
            continue
        kind, *ops = line.split()
        try:
            qubits = tuple(int(o) for o in ops)
        except ValueError:
            raise CircuitParseError(f"line {lineno}: non-integer operand in {raw!r}") from None
        try:
            gates.append(Gate(kind, qubits))
        except ValueError as exc:
            raise CircuitParseError(f"line {lineno}: {exc}") from None
    if width is None:
        width = max((max(g.qubits) for g in gates), default=1)
        ancilla = 0
    try:
        return Circuit(width, tuple(gates), ancilla)
    except ValueError as exc:
        raise CircuitParseError(str(exc)) from None
