"""Conventional and chain-based decoders, and simulation-based verification."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from stabdecode.circuit import ChainSpec, Circuit, Gate, cnot, gate_count, inverse, make_linked_chain
from stabdecode.code import StabilizerCode, codeword, is_reversal_symmetric, validate
from stabdecode.encoder import EncoderLayout, synthesize_encoder
from stabdecode.statevec import (
    DEFAULT_TOL,
    StateVector,
    apply_circuit,
    from_expansion,
    reduced_density_matrix,
    split_qubit,
)

EQUAL = "equal"
COMPLEMENTED = "complemented"

FIDUCIALS = {
    "zero": np.array([1, 0], dtype=complex),
    "one": np.array([0, 1], dtype=complex),
    "plus": np.array([1, 1], dtype=complex) / np.sqrt(2),
    "plus_i": np.array([1, 1j], dtype=complex) / np.sqrt(2),
}


class PreconditionError(ValueError):
    """The code or chain does not satisfy a decoder construction's requirements."""


@dataclass(frozen=True)
class DecoderCircuit:
    circuit: Circuit
    output_qubit: int
    method: str
    uses_ancilla: bool

    def __post_init__(self):
        if not 1 <= self.output_qubit <= self.circuit.width:
            raise ValueError(f"output qubit {self.output_qubit} outside circuit width {self.circuit.width}")
        is_ancilla = self.output_qubit > self.circuit.width - self.circuit.ancilla_count
        if self.method == "conventional" and not (self.uses_ancilla and is_ancilla):
            raise ValueError("conventional decoders output on an ancilla")
        if self.method == "proposed" and (self.uses_ancilla or is_ancilla):
            raise ValueError("proposed decoders output on a code qubit without ancilla")

    @property
    def gate_count(self) -> int:
        return gate_count(self.circuit)


@dataclass(frozen=True)
class ChainClassification:
    chain: ChainSpec
    tags: tuple[str, ...]

    @property
    def logical_position(self) -> int:
        return len(self.chain)

    def complemented_qubits(self) -> list[int]:
        return [q for q, t in zip(self.chain.order, self.tags) if t == COMPLEMENTED]

    def equal_qubits(self) -> list[int]:
        return [q for q, t in zip(self.chain.order, self.tags) if t == EQUAL]


@dataclass
class DecodeReport:
    method: str
    gate_count: int
    fidelities: dict[str, float]
    residual_purity: float
    residual_consistent: bool
    residual_is_psi0: bool
    tol: float = DEFAULT_TOL
    random_min_fidelity: float | None = None
    residual: np.ndarray | None = field(default=None, repr=False)

    @property
    def min_fidelity(self) -> float:
        return min(self.fidelities.values())

    @property
    def passed(self) -> bool:
        if self.random_min_fidelity is not None and self.random_min_fidelity < 1 - self.tol:
            return False
        return self.min_fidelity >= 1 - self.tol and self.residual_consistent

    def to_dict(self) -> dict:
        return {
            "method": self.method,
            "gate_count": self.gate_count,
            "min_fidelity": self.min_fidelity,
            "residual_purity": self.residual_purity,
            "residual_consistent": self.residual_consistent,
            "residual_is_psi0": self.residual_is_psi0,
            "random_min_fidelity": self.random_min_fidelity,
            "passed": self.passed,
        }


def _require_k1_valid(code: StabilizerCode) -> None:
    if code.k != 1:
        raise PreconditionError(f"decoders support k=1 only, got k={code.k}")
    report = validate(code)
    if not report.ok:
        raise PreconditionError("invalid code: " + "; ".join(report.violations))


def synthesize_conventional(code: StabilizerCode) -> DecoderCircuit:
    """Parity of the logical Z into an ancilla, then ancilla-controlled logical X."""
    _require_k1_valid(code)
    lx, lz = code.logical_x[0], code.logical_z[0]
    problems = []
    if any(lz.x):
        problems.append(f"logical_z {lz} is not Z-type on its support")
    if any(lx.z):
        problems.append(f"logical_x {lx} is not X-type on its support")
    if problems:
        raise PreconditionError("; ".join(problems))
    anc = code.n + 1
    gates = [cnot(q, anc) for q in lz.support()]
    if lz.sign < 0:
        gates.append(Gate("X", (anc,)))
    gates += [cnot(anc, q) for q in lx.support()]
    if lx.sign < 0:
        gates.append(Gate("Z", (anc,)))
    return DecoderCircuit(Circuit(code.n + 1, tuple(gates), 1), anc, "conventional", True)


def classify_chain_effect(spec: ChainSpec) -> ChainClassification:
    """Tag chain positions by how a full bit reversal shows up after the chain.

    Position p ends up holding the parity of the first p chain inputs, which
    flips under reversal exactly when p is odd.
    """
    tags = tuple(COMPLEMENTED if p % 2 else EQUAL for p in range(1, len(spec) + 1))
    return ChainClassification(spec, tags)


def _parities(expansion) -> set[int]:
    return {sum(bits) % 2 for bits in expansion.terms}


def synthesize_proposed(code: StabilizerCode, spec: ChainSpec | None = None) -> DecoderCircuit:
    """Linked CNOT chain writing the logical value onto the last chain qubit.

    After the chain the two logical branches differ only on complemented
    positions; CNOTs from the last chain qubit onto the other complemented
    positions remove that difference, leaving the logical state behind as a
    product factor.
    """
    _require_k1_valid(code)
    if spec is None:
        spec = ChainSpec(tuple(range(1, code.n + 1)))
    if not is_reversal_symmetric(code):
        raise PreconditionError(f"code is not reversal symmetric (logical_x = {code.logical_x[0]})")
    if code.logical_x[0].sign < 0:
        raise PreconditionError("logical_x carries a -1 sign; reversal pairs would differ in amplitude")
    if sorted(spec.order) != list(range(1, code.n + 1)):
        raise PreconditionError(f"chain {list(spec.order)} must cover qubits 1..{code.n} exactly once")
    if _parities(codeword(code, 0)) != {0}:
        raise PreconditionError("codeword 0 terms do not all have even parity")
    if _parities(codeword(code, 1)) != {1}:
        raise PreconditionError("codeword 1 terms do not all have odd parity")

    cls = classify_chain_effect(spec)
    out = spec.order[-1]
    chain = make_linked_chain(spec, width=code.n)
    fix = sorted(q for q in cls.complemented_qubits() if q != out)
    gates = chain.gates + tuple(cnot(out, q) for q in fix)
    return DecoderCircuit(Circuit(code.n, gates), out, "proposed", False)


def inverse_encoder_decoder(code: StabilizerCode, encoder: EncoderLayout | None = None) -> DecoderCircuit:
    encoder = encoder or synthesize_encoder(code)
    return DecoderCircuit(inverse(encoder.circuit), encoder.input_qubit, "inverse", False)


def encode_state(code: StabilizerCode, alpha, encoder: EncoderLayout | None = None) -> StateVector:
    """Encode the single-qubit state ``alpha`` with the synthesized encoder."""
    encoder = encoder or synthesize_encoder(code)
    alpha = np.asarray(alpha, dtype=complex)
    before = np.zeros(1 << code.n, dtype=complex)
    shift = code.n - encoder.input_qubit
    before[0] = alpha[0]
    before[1 << shift] = alpha[1]
    return apply_circuit(StateVector(code.n, before), encoder.circuit)


def run_decoder(code: StabilizerCode, dec: DecoderCircuit, alpha, encoder: EncoderLayout | None = None) -> StateVector:
    state = encode_state(code, alpha, encoder)
    extra = dec.circuit.width - code.n
    if extra < 0:
        raise ValueError(f"decoder width {dec.circuit.width} smaller than code size {code.n}")
    if extra:
        state = state.tensor(StateVector.basis([0] * extra))
    return apply_circuit(state, dec.circuit)


def random_logical_states(count: int, rng: np.random.Generator) -> list[np.ndarray]:
    states = []
    for _ in range(count):
        v = rng.normal(size=2) + 1j * rng.normal(size=2)
        states.append(v / np.linalg.norm(v))
    return states


def output_fidelity(final: StateVector, qubit: int, alpha) -> float:
    """``<alpha| rho_qubit |alpha>`` for the reduced state on ``qubit``."""
    alpha = np.asarray(alpha, dtype=complex)
    rho = reduced_density_matrix(final, [qubit])
    return float(np.real(alpha.conj() @ rho @ alpha))


def verify_decoder(
    code: StabilizerCode,
    dec: DecoderCircuit,
    tol: float = DEFAULT_TOL,
    encoder: EncoderLayout | None = None,
    random_states: int = 0,
    seed: int = 0,
) -> DecodeReport:
    """Decode the four fiducial logical states and inspect the result.

    With ``random_states > 0`` that many seeded random logical states are
    decoded as well and the worst output fidelity is recorded.
    """
    encoder = encoder or synthesize_encoder(code)
    fids: dict[str, float] = {}
    residuals = []
    purities = []
    for name, alpha in FIDUCIALS.items():
        final = run_decoder(code, dec, alpha, encoder)
        fids[name] = min(1.0, output_fidelity(final, dec.output_qubit, alpha))
        _, residual, w = split_qubit(final, dec.output_qubit)
        residuals.append(residual)
        # purity of a two-level marginal from its Schmidt weight
        purities.append(w * w + (1 - w) ** 2)
    separable = min(purities) >= 1 - tol
    consistent = separable and all(
        abs(np.vdot(a, b)) ** 2 >= 1 - tol for a, b in itertools.combinations(residuals, 2)
    )
    random_min = None
    if random_states:
        rng = np.random.default_rng(seed)
        worst = 1.0
        for alpha in random_logical_states(random_states, rng):
            final = run_decoder(code, dec, alpha, encoder)
            worst = min(worst, output_fidelity(final, dec.output_qubit, alpha))
        random_min = float(worst)
    return DecodeReport(
        method=dec.method,
        gate_count=dec.gate_count,
        fidelities=fids,
        residual_purity=float(min(purities)),
        residual_consistent=bool(consistent),
        residual_is_psi0=bool(separable and _is_psi0(code, dec, residuals[0], tol)),
        tol=tol,
        random_min_fidelity=random_min,
        residual=residuals[0],
    )


def _is_psi0(code: StabilizerCode, dec: DecoderCircuit, residual: np.ndarray, tol: float) -> bool:
    # the residual must contain every code qubit, i.e. the output is an ancilla
    if dec.output_qubit <= code.n:
        return False
    target = from_expansion(codeword(code, 0))
    extra = dec.circuit.width - code.n - 1
    if extra:
        target = target.tensor(StateVector.basis([0] * extra))
    return abs(np.vdot(target.amplitudes, residual)) ** 2 >= 1 - tol
