"""Dense state-vector simulation used as the verification oracle.

Qubit 1 is the most significant bit of the amplitude index, so the ket
``|a1 a2 ... an>`` is stored at index ``int("a1a2...an", 2)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from stabdecode.circuit import Circuit
from stabdecode.pauli import PauliString

MAX_QUBITS = 16
DEFAULT_TOL = 1e-10

_H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
_SINGLE = {
    "H": _H,
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
    "S": np.array([[1, 0], [0, 1j]], dtype=complex),
}


class NotSeparableError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class StateVector:
    n: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if not 1 <= self.n <= MAX_QUBITS:
            raise ValueError(f"dense simulation supports 1..{MAX_QUBITS} qubits, got {self.n}")
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if amps.shape != (1 << self.n,):
            raise ValueError(f"expected {1 << self.n} amplitudes, got {amps.shape[0]}")
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def basis(cls, bits: str | Iterable[int]) -> StateVector:
        bits = [int(b) for b in bits]
        amps = np.zeros(1 << len(bits), dtype=complex)
        amps[_index(bits)] = 1.0
        return cls(len(bits), amps)

    @classmethod
    def from_amplitudes(cls, amps) -> StateVector:
        amps = np.asarray(amps, dtype=complex).reshape(-1)
        n = int(amps.size).bit_length() - 1
        if 1 << n != amps.size:
            raise ValueError("amplitude count must be a power of two")
        return cls(n, amps)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def amplitude(self, bits: str | Iterable[int]) -> complex:
        return complex(self.amplitudes[_index([int(b) for b in bits])])

    def tensor(self, other: StateVector) -> StateVector:
        return StateVector(self.n + other.n, np.kron(self.amplitudes, other.amplitudes))

    def tensor_shape(self) -> np.ndarray:
        return self.amplitudes.reshape((2,) * self.n)


def _index(bits) -> int:
    idx = 0
    for b in bits:
        idx = idx << 1 | b
    return idx


def from_expansion(e) -> StateVector:
    """State vector of a :class:`~stabdecode.code.CodewordExpansion`."""
    if not e.terms:
        raise ValueError("expansion has no terms")
    amps = np.zeros(1 << e.n, dtype=complex)
    for bits, a in e.terms.items():
        amps[_index(bits)] += a
    return StateVector(e.n, amps)


def apply_gate(psi: np.ndarray, kind: str, qubits: tuple[int, ...]) -> np.ndarray:
    """Apply one gate to a state tensor of shape ``(2,)*n`` (returns new array)."""
    if kind in _SINGLE:
        axis = qubits[0] - 1
        out = np.tensordot(_SINGLE[kind], psi, axes=([1], [axis]))
        return np.moveaxis(out, 0, axis)
    c, t = (q - 1 for q in qubits)
    out = psi.copy()
    sel = [slice(None)] * psi.ndim
    sel[c] = 1
    if kind == "CNOT":
        # on the control=1 slice, swap target values
        sub = out[tuple(sel)]
        t_axis = t if t < c else t - 1
        out[tuple(sel)] = np.flip(sub, axis=t_axis)
    elif kind == "CZ":
        sel[t] = 1
        out[tuple(sel)] *= -1
    else:
        raise ValueError(f"unknown gate kind {kind!r}")
    return out


def apply_circuit(s: StateVector, c: Circuit) -> StateVector:
    if c.width != s.n:
        raise ValueError(f"circuit width {c.width} does not match state size {s.n}")
    psi = s.tensor_shape()
    for g in c.gates:
        psi = apply_gate(psi, g.kind, g.qubits)
    return StateVector(s.n, psi.reshape(-1))


def fidelity(a: StateVector, b: StateVector) -> float:
    if a.n != b.n:
        raise ValueError(f"size mismatch: {a.n} vs {b.n} qubits")
    return float(min(1.0, abs(np.vdot(a.amplitudes, b.amplitudes)) ** 2))


def _masks(p: PauliString) -> tuple[int, int]:
    xm = _index(p.x)
    zm = _index(p.z)
    return xm, zm


def apply_pauli(s: StateVector, p: PauliString) -> StateVector:
    if p.n != s.n:
        raise ValueError(f"size mismatch: operator on {p.n}, state on {s.n} qubits")
    xm, zm = _masks(p)
    idx = np.arange(1 << s.n)
    parity = np.array([bin(i & zm).count("1") & 1 for i in range(1 << s.n)])
    signs = p.sign * (1 - 2 * parity)
    out = np.zeros_like(s.amplitudes)
    out[idx ^ xm] = signs * s.amplitudes
    return StateVector(s.n, out)


def stabilizer_expectation(s: StateVector, p: PauliString) -> float:
    """Real part of ``<s|p|s>``."""
    return float(np.vdot(s.amplitudes, apply_pauli(s, p).amplitudes).real)


def reduced_density_matrix(s: StateVector, keep: Iterable[int]) -> np.ndarray:
    keep = sorted(set(keep))
    _check_subset(s.n, keep)
    axes = [q - 1 for q in keep]
    rest = [a for a in range(s.n) if a not in axes]
    psi = np.transpose(s.tensor_shape(), axes + rest).reshape(1 << len(keep), -1)
    return psi @ psi.conj().T


def _check_subset(n: int, subset) -> None:
    if not subset or len(subset) >= n:
        raise ValueError(f"subset must be a nonempty proper subset of 1..{n}, got {list(subset)}")
    if min(subset) < 1 or max(subset) > n:
        raise ValueError(f"subset {list(subset)} out of range 1..{n}")


def purity(rho: np.ndarray) -> float:
    return float(np.real(np.trace(rho @ rho)))


def factor_check(s: StateVector, subset: Iterable[int], tol: float = DEFAULT_TOL) -> tuple[bool, float]:
    """Is ``s`` a product across ``subset`` and its complement?

    Judged by the purity of the reduced state on ``subset``.
    """
    p = purity(reduced_density_matrix(s, subset))
    return p >= 1 - tol, p


def canonical_phase(v: np.ndarray, eps: float = 1e-9) -> np.ndarray:
    """Rotate the global phase so the first non-negligible entry is real positive."""
    v = np.asarray(v, dtype=complex)
    nz = np.flatnonzero(np.abs(v) > eps)
    if nz.size == 0:
        return v
    a = v[nz[0]]
    return v * (abs(a) / a)


def split_qubit(s: StateVector, qubit: int) -> tuple[np.ndarray, np.ndarray, float]:
    """Best product approximation ``residual ⊗ factor`` for one qubit.

    Returns ``(factor, residual, weight)`` with both vectors phase-canonical;
    ``weight`` is the squared leading Schmidt coefficient (1 for product states).
    The residual is ordered over the other qubits in ascending index.
    """
    _check_subset(s.n, [qubit])
    axis = qubit - 1
    rest = [a for a in range(s.n) if a != axis]
    m = np.transpose(s.tensor_shape(), rest + [axis]).reshape(-1, 2)
    u, sv, vh = np.linalg.svd(m, full_matrices=False)
    factor = canonical_phase(vh[0])
    residual = canonical_phase(u[:, 0])
    return factor, residual, float(sv[0] ** 2)


def extract_factor(s: StateVector, qubit: int, tol: float = DEFAULT_TOL) -> np.ndarray:
    ok, p = factor_check(s, [qubit], tol)
    if not ok:
        raise NotSeparableError(f"qubit {qubit} is entangled with the rest (purity {p:.6g})")
    return split_qubit(s, qubit)[0]


def random_state(n: int, rng: np.random.Generator) -> StateVector:
    v = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    return StateVector(n, v / np.linalg.norm(v))
