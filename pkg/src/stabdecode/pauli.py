"""Signed Pauli strings in symplectic (x|z) form.

An element is ``sign * prod_i X^{x_i} Z^{z_i}`` with X written to the left of
Z on every qubit.  Only real signs occur, so the letter ``Y`` in text form
stands for the unsigned product ``X·Z`` (which is ``-iY`` in the usual
convention).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

_LETTERS = {"I": (0, 0), "X": (1, 0), "Z": (0, 1), "Y": (1, 1)}
_SYMBOLS = {bits: letter for letter, bits in _LETTERS.items()}


@dataclass(frozen=True)
class PauliString:
    x: tuple[int, ...]
    z: tuple[int, ...]
    sign: int = 1

    def __post_init__(self):
        if len(self.x) != len(self.z):
            raise ValueError("x and z parts must have the same length")
        if any(b not in (0, 1) for b in self.x + self.z):
            raise ValueError("x and z entries must be 0 or 1")
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")

    @property
    def n(self) -> int:
        return len(self.x)

    @classmethod
    def identity(cls, n: int) -> PauliString:
        return cls((0,) * n, (0,) * n)

    @classmethod
    def from_bits(cls, x: Sequence[int], z: Sequence[int], sign: int = 1) -> PauliString:
        return cls(tuple(int(b) for b in x), tuple(int(b) for b in z), sign)

    def is_identity(self) -> bool:
        return not any(self.x) and not any(self.z)

    def support(self) -> list[int]:
        """1-based indices of qubits with a non-identity factor."""
        return [i + 1 for i in range(self.n) if self.x[i] or self.z[i]]

    def __mul__(self, other: PauliString) -> PauliString:
        return multiply(self, other)

    def __neg__(self) -> PauliString:
        return PauliString(self.x, self.z, -self.sign)

    def __str__(self) -> str:
        body = "".join(_SYMBOLS[(a, b)] for a, b in zip(self.x, self.z))
        return ("-" if self.sign < 0 else "") + body


def parse_pauli(text: str) -> PauliString:
    """Parse ``[-]LETTERS`` with letters from ``IXZY``; qubit 1 is leftmost."""
    body = text.strip()
    sign = 1
    if body.startswith("-"):
        sign, body = -1, body[1:]
    elif body.startswith("+"):
        body = body[1:]
    if not body:
        raise ValueError("empty Pauli string")
    bad = sorted(set(body) - set(_LETTERS))
    if bad:
        raise ValueError(f"invalid Pauli letter(s) {''.join(bad)!r} in {text!r}")
    pairs = [_LETTERS[c] for c in body]
    return PauliString(tuple(p[0] for p in pairs), tuple(p[1] for p in pairs), sign)


def _check_same_n(a: PauliString, b: PauliString) -> None:
    if a.n != b.n:
        raise ValueError(f"length mismatch: {a.n} vs {b.n}")


def multiply(a: PauliString, b: PauliString) -> PauliString:
    """Return the product ``a·b``.

    Moving each Z of ``a`` past the X of ``b`` on the same qubit costs a
    factor of -1, giving sign ``a.sign * b.sign * (-1)^{|a.z & b.x|}``.
    """
    _check_same_n(a, b)
    swaps = sum(za & xb for za, xb in zip(a.z, b.x))
    sign = a.sign * b.sign * (-1 if swaps % 2 else 1)
    x = tuple(p ^ q for p, q in zip(a.x, b.x))
    z = tuple(p ^ q for p, q in zip(a.z, b.z))
    return PauliString(x, z, sign)


def commutes(a: PauliString, b: PauliString) -> bool:
    _check_same_n(a, b)
    overlap = sum(p & q for p, q in zip(a.x, b.z)) + sum(p & q for p, q in zip(a.z, b.x))
    return overlap % 2 == 0


def weight(p: PauliString) -> int:
    return sum(1 for a, b in zip(p.x, p.z) if a or b)


def apply_to_basis(p: PauliString, bits: Sequence[int] | str) -> tuple[int, tuple[int, ...]]:
    """Act with ``p`` on the computational basis state ``|bits>``.

    Z acts first (phase from the input bits), then X flips.  Returns
    ``(sign, bits')``.
    """
    if isinstance(bits, str):
        bits = tuple(int(c) for c in bits)
    else:
        bits = tuple(int(c) for c in bits)
    if len(bits) != p.n:
        raise ValueError(f"basis string has {len(bits)} bits, operator acts on {p.n}")
    phase = sum(zi & bi for zi, bi in zip(p.z, bits))
    sign = p.sign * (-1 if phase % 2 else 1)
    return sign, tuple(b ^ xi for b, xi in zip(bits, p.x))
