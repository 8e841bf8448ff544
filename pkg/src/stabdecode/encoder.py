"""Encoding circuits for k=1 stabilizer codes.

The construction seeds one qubit per X-carrying generator of the
row-reduced stabilizer.  Starting from ``|c>`` on the input qubit:

1. controlled logical X (cleared on the seed columns) writes ``X_L^c|0...0>``;
2. each seed gets H and then drives its generator, so the state becomes
   ``prod_i (1 + G_i) X_L^c |0...0>``, proportional to the codeword.

Z-only generators stabilize ``|0...0>`` and need no gates.
"""

from __future__ import annotations

from dataclasses import dataclass

from stabdecode.circuit import Circuit, Gate, cnot
from stabdecode.code import StabilizerCode, validate, x_echelon
from stabdecode.pauli import multiply


@dataclass(frozen=True)
class EncoderLayout:
    input_qubit: int
    circuit: Circuit
    seed_qubits: tuple[int, ...] = ()


def synthesize_encoder(code: StabilizerCode) -> EncoderLayout:
    if code.k != 1:
        raise ValueError(f"encoder synthesis supports k=1 only, got k={code.k}")
    report = validate(code)
    if not report.ok:
        raise ValueError("invalid code: " + "; ".join(report.violations))

    rows, pivots = x_echelon(code.generators)
    seeds, zrows = rows[: len(pivots)], rows[len(pivots):]
    negative = [str(g) for g in zrows if g.sign < 0]
    if negative:
        raise ValueError(f"Z-type stabilizer element(s) {', '.join(negative)} annihilate |0...0>")

    lx = code.logical_x[0]
    for g, p in zip(seeds, pivots):
        if lx.x[p]:
            lx = multiply(lx, g)
    support = [q for q in range(code.n) if lx.x[q]]
    if not support:
        raise ValueError("logical X lies in the Z-type span after reduction; unsupported form")
    inp = support[0]

    gates: list[Gate] = [cnot(inp + 1, q + 1) for q in support[1:]]
    if lx.sign < 0:
        gates.append(Gate("Z", (inp + 1,)))
    for g, p in zip(seeds, pivots):
        gates.append(Gate("H", (p + 1,)))
        for q in range(code.n):
            if q == p:
                continue
            # operator order X·Z: Z acts first
            if g.z[q]:
                gates.append(Gate("CZ", (p + 1, q + 1)))
            if g.x[q]:
                gates.append(cnot(p + 1, q + 1))
        if g.sign < 0:
            gates.append(Gate("Z", (p + 1,)))
    return EncoderLayout(inp + 1, Circuit(code.n, tuple(gates)), tuple(p + 1 for p in pivots))
