"""Exhaustive search for minimum-size CNOT-only decoders.

Candidates are enumerated layer by layer in (length, lexicographic gate
list) order.  A CNOT circuit acts as an invertible GF(2) matrix on basis
labels, so a prefix reaching a matrix already reached by a lexicographically
earlier or shorter prefix is dropped: every completion of it has an earlier
equivalent.  Each surviving circuit is screened with an exact algebraic test
of the decode predicate on the codeword terms; candidates that pass are
confirmed by full state-vector verification.
"""

from __future__ import annotations

import itertools
import logging
import time
from dataclasses import dataclass, field

import numpy as np

from stabdecode.circuit import Circuit, cnot, make_linked_chain, ChainSpec
from stabdecode.code import StabilizerCode, codeword, validate
from stabdecode.decoder import DecoderCircuit, verify_decoder
from stabdecode.encoder import synthesize_encoder
from stabdecode.statevec import DEFAULT_TOL

log = logging.getLogger(__name__)

MAX_QUBITS = 7
MAX_GATES = 7
SCOPE = "CNOT-only circuits on the code qubits, no ancilla"


class SearchLimitError(ValueError):
    pass


@dataclass
class SearchResult:
    found: bool
    gates_tried: int
    circuit: Circuit | None = None
    output_qubit: int | None = None
    min_gates: int | None = None
    max_gates: int = 0
    scope: str = SCOPE
    layer_sizes: list[int] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "found": self.found,
            "min_gates": self.min_gates,
            "output_qubit": self.output_qubit,
            "gates_tried": self.gates_tried,
            "max_gates": self.max_gates,
            "scope": self.scope,
        }


def gate_alphabet(n: int) -> list[tuple[int, int]]:
    """Ordered (control, target) pairs, 0-based, in lexicographic order."""
    return [(c, t) for c in range(n) for t in range(n) if c != t]


class _TermTable:
    """Codeword terms as bit masks (bit j = qubit j+1) with amplitude signs."""

    def __init__(self, code: StabilizerCode):
        self.n = code.n
        e0, e1 = codeword(code, 0), codeword(code, 1)
        for e in (e0, e1):
            mags = np.abs(list(e.terms.values()))
            if not np.allclose(mags, mags[0]):
                raise ValueError("codeword amplitudes are not uniform in magnitude")
        self.a = np.array([_mask(b) for b in e0.terms], dtype=np.int64)
        self.sa = np.array([v < 0 for v in e0.terms.values()], dtype=np.int64)
        self.b = np.array([_mask(b) for b in e1.terms], dtype=np.int64)
        self.sb = np.array([v < 0 for v in e1.terms.values()], dtype=np.int64)
        # parity lookup for n-bit words
        self.parity = np.array([bin(i).count("1") & 1 for i in range(1 << self.n)], dtype=np.int64)

    def images(self, rows: np.ndarray, terms: np.ndarray) -> np.ndarray:
        """Images ``L @ term`` for each candidate; shape (N, K)."""
        out = np.zeros((rows.shape[0], terms.size), dtype=np.int64)
        for i in range(self.n):
            out |= self.parity[rows[:, i : i + 1] & terms[None, :]] << i
        return out

    def decodes(self, rows: np.ndarray) -> np.ndarray:
        """Boolean (N, n): does candidate decode onto output qubit o?"""
        img_a = self.images(rows, self.a)
        img_b = self.images(rows, self.b)
        result = np.zeros((rows.shape[0], self.n), dtype=bool)
        for o in range(self.n):
            bit = np.int64(1) << o
            ok = np.all((img_a & bit) == 0, axis=1) & np.all((img_b & bit) != 0, axis=1)
            idx = np.flatnonzero(ok)
            if idx.size:
                # residual branches must coincide term for term, signs included
                ka = np.sort((img_a[idx] & ~bit) * 2 + self.sa, axis=1)
                kb = np.sort((img_b[idx] & ~bit) * 2 + self.sb, axis=1)
                ok[idx] = np.all(ka == kb, axis=1)
            result[:, o] = ok
        return result


def _mask(bits) -> int:
    return sum(b << j for j, b in enumerate(bits))


def _unpack(packed: np.ndarray, n: int) -> np.ndarray:
    mask = (1 << n) - 1
    return np.stack([(packed >> (i * n)) & mask for i in range(n)], axis=1)


def _identity_packed(n: int) -> int:
    return sum((1 << i) << (i * n) for i in range(n))


def _check_limits(code: StabilizerCode, max_gates: int) -> None:
    if code.k != 1:
        raise SearchLimitError(f"search supports k=1 only, got k={code.k}")
    if code.n > MAX_QUBITS:
        raise SearchLimitError(f"search supports n <= {MAX_QUBITS}, got n={code.n}")
    if not 0 <= max_gates <= MAX_GATES:
        raise SearchLimitError(f"max_gates must be in 0..{MAX_GATES}, got {max_gates}")
    report = validate(code)
    if not report.ok:
        raise SearchLimitError("invalid code: " + "; ".join(report.violations))


def _confirm(code, circuit_gates, n, output, tol, encoder) -> DecoderCircuit | None:
    dec = DecoderCircuit(Circuit(n, tuple(cnot(c + 1, t + 1) for c, t in circuit_gates)), output + 1, "search", False)
    if verify_decoder(code, dec, tol, encoder).passed:
        return dec
    return None


def exhaustive_search(code: StabilizerCode, max_gates: int, tol: float = DEFAULT_TOL) -> SearchResult:
    """Smallest CNOT-only decoder with at most ``max_gates`` gates.

    The first success in (length, lexicographic gates, output qubit) order
    is returned; the search is deterministic.
    """
    _check_limits(code, max_gates)
    n = code.n
    table = _TermTable(code)
    encoder = synthesize_encoder(code)
    alphabet = gate_alphabet(n)
    ctrl = np.array([c for c, _ in alphabet], dtype=np.int64)
    targ = np.array([t for _, t in alphabet], dtype=np.int64)
    rowmask = np.int64((1 << n) - 1)

    frontier = np.array([_identity_packed(n)], dtype=np.int64)
    visited = frontier.copy()
    parents: list[np.ndarray] = []  # per layer: index into previous layer
    choice: list[np.ndarray] = []   # per layer: gate index
    tried = 0
    sizes: list[int] = []
    start = time.perf_counter()

    for depth in range(1, max_gates + 1):
        # candidate k = parent * G + gate, which is lexicographic order
        rows_c = (frontier[:, None] >> (ctrl[None, :] * n)) & rowmask
        cand = frontier[:, None] ^ (rows_c << (targ[None, :] * n))
        cand = cand.reshape(-1)
        _, first = np.unique(cand, return_index=True)
        first.sort()
        fresh = first[~np.isin(cand[first], visited, assume_unique=False)]
        layer = cand[fresh]
        parents.append(fresh // len(alphabet))
        choice.append(fresh % len(alphabet))
        visited = np.union1d(visited, layer)
        sizes.append(int(layer.size))
        tried += int(layer.size)
        log.info(
            "depth %d: %d new circuits (%.0f/s)",
            depth,
            layer.size,
            tried / max(time.perf_counter() - start, 1e-9),
        )

        ok = table.decodes(_unpack(layer, n))
        for idx in np.flatnonzero(ok.any(axis=1)):
            gates = _trace(parents, choice, alphabet, int(idx))
            for o in np.flatnonzero(ok[idx]):
                dec = _confirm(code, gates, n, int(o), tol, encoder)
                if dec is not None:
                    return SearchResult(True, tried, dec.circuit, dec.output_qubit, depth, max_gates, layer_sizes=sizes)
        frontier = layer
    return SearchResult(False, tried, max_gates=max_gates, layer_sizes=sizes)


def _trace(parents, choice, alphabet, idx: int) -> list[tuple[int, int]]:
    gates = []
    for layer in range(len(parents) - 1, -1, -1):
        gates.append(alphabet[int(choice[layer][idx])])
        idx = int(parents[layer][idx])
    return gates[::-1]


def chain_prefixed_search(code: StabilizerCode, extra_gates: int, tol: float = DEFAULT_TOL) -> SearchResult:
    """Search only circuits that start with a full linked CNOT chain.

    Chains run over every ordering of the n qubits, followed by up to
    ``extra_gates`` arbitrary CNOTs; the first success in (length, chain
    order, suffix) order is returned.
    """
    _check_limits(code, code.n - 1 + extra_gates)
    n = code.n
    table = _TermTable(code)
    encoder = synthesize_encoder(code)
    alphabet = gate_alphabet(n)
    tried = 0
    for extra in range(extra_gates + 1):
        for order in itertools.permutations(range(1, n + 1)):
            chain = [(g.control - 1, g.target - 1) for g in make_linked_chain(ChainSpec(order)).gates]
            for suffix in itertools.product(alphabet, repeat=extra):
                gates = chain + list(suffix)
                tried += 1
                ok = table.decodes(_rows_of(gates, n)[None, :])[0]
                for o in np.flatnonzero(ok):
                    dec = _confirm(code, gates, n, int(o), tol, encoder)
                    if dec is not None:
                        return SearchResult(True, tried, dec.circuit, dec.output_qubit, len(gates), n - 1 + extra_gates)
    return SearchResult(False, tried, max_gates=n - 1 + extra_gates)


def _rows_of(gates, n: int) -> np.ndarray:
    rows = [1 << i for i in range(n)]
    for c, t in gates:
        rows[t] ^= rows[c]
    return np.array(rows, dtype=np.int64)
