"""Stabilizer codes: definition, validation, codewords and standard form."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from stabdecode import gf2
from stabdecode.pauli import PauliString, apply_to_basis, commutes, multiply, parse_pauli


@dataclass(frozen=True)
class StabilizerCode:
    n: int
    k: int
    generators: tuple[PauliString, ...]
    logical_x: tuple[PauliString, ...]
    logical_z: tuple[PauliString, ...]
    distance: int | None = None
    name: str = ""

    def __post_init__(self):
        # accept lists from callers, store tuples
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "logical_x", tuple(self.logical_x))
        object.__setattr__(self, "logical_z", tuple(self.logical_z))
        if self.distance is not None and self.distance < 1:
            raise ValueError("distance must be a positive integer")

    @property
    def f(self) -> int:
        return len(self.generators)

    @property
    def t(self) -> int | None:
        """Number of correctable errors, ``floor((d - 1) / 2)``."""
        if self.distance is None:
            return None
        return (self.distance - 1) // 2

    @classmethod
    def from_text(cls, generators, logical_x, logical_z, distance=None, name="") -> StabilizerCode:
        gens = [parse_pauli(g) for g in generators]
        lx = [parse_pauli(p) for p in logical_x]
        lz = [parse_pauli(p) for p in logical_z]
        n = (gens or lx)[0].n
        return cls(n, len(lx), tuple(gens), tuple(lx), tuple(lz), distance, name)


@dataclass(frozen=True)
class CodewordExpansion:
    """Normalized superposition of basis strings, keyed by bit tuples."""

    n: int
    terms: dict[tuple[int, ...], float] = field(hash=False)

    def amplitude(self, bits: str | tuple[int, ...]) -> float:
        if isinstance(bits, str):
            bits = tuple(int(c) for c in bits)
        return self.terms.get(tuple(bits), 0.0)

    def __len__(self) -> int:
        return len(self.terms)


@dataclass
class ValidationReport:
    violations: list[str]

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


def validate(code: StabilizerCode) -> ValidationReport:
    """Check every structural invariant; violations are returned, never raised."""
    v: list[str] = []
    everything = list(code.generators) + list(code.logical_x) + list(code.logical_z)
    bad_len = [str(p) for p in everything if p.n != code.n]
    if bad_len:
        return ValidationReport([f"operator length differs from n={code.n}: {', '.join(bad_len)}"])
    if code.f != code.n - code.k:
        v.append(f"expected n-k={code.n - code.k} generators, got {code.f}")
    if len(code.logical_x) != code.k or len(code.logical_z) != code.k:
        v.append(f"expected {code.k} logical_x and logical_z operators")

    for i, g in enumerate(code.generators, 1):
        # X·Z on an odd number of qubits squares to -I: no +1 eigenspace
        if sum(a & b for a, b in zip(g.x, g.z)) % 2:
            v.append(f"generator {i} is not Hermitian (odd number of Y factors)")
    for (i, a), (j, b) in itertools.combinations(enumerate(code.generators, 1), 2):
        if not commutes(a, b):
            v.append(f"generator {i} anticommutes with generator {j}")
    if code.generators and gf2.rank(check_matrix(code)) < code.f:
        v.append("generators dependent")

    for label, ops in (("logical_x", code.logical_x), ("logical_z", code.logical_z)):
        for j, op in enumerate(ops, 1):
            for i, g in enumerate(code.generators, 1):
                if not commutes(g, op):
                    v.append(f"generator {i} anticommutes with {label}[{j}]")
    for (i, lx), (j, lz) in itertools.product(enumerate(code.logical_x, 1), enumerate(code.logical_z, 1)):
        anti = not commutes(lx, lz)
        if i == j and not anti:
            v.append(f"logical_x[{i}] commutes with logical_z[{j}]")
        elif i != j and anti:
            v.append(f"logical_x[{i}] anticommutes with logical_z[{j}]")
    for label, ops in (("logical_x", code.logical_x), ("logical_z", code.logical_z)):
        for (i, a), (j, b) in itertools.combinations(enumerate(ops, 1), 2):
            if not commutes(a, b):
                v.append(f"{label}[{i}] anticommutes with {label}[{j}]")
    return ValidationReport(v)


def five_qubit_code() -> StabilizerCode:
    return StabilizerCode.from_text(
        ["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"],
        ["XXXXX"],
        ["ZZZZZ"],
        distance=3,
        name="five_qubit",
    )


def steane_code() -> StabilizerCode:
    return StabilizerCode.from_text(
        ["IIIXXXX", "IXXIIXX", "XIXIXIX", "IIIZZZZ", "IZZIIZZ", "ZIZIZIZ"],
        ["XXXXXXX"],
        ["ZZZZZZZ"],
        distance=3,
        name="steane",
    )


BUILTIN_CODES = {
    "five_qubit": five_qubit_code,
    "steane": steane_code,
}


def group_elements(code: StabilizerCode):
    """Yield all 2^f signed products of the generators."""
    f = code.f
    for mask in range(1 << f):
        element = PauliString.identity(code.n)
        for i in range(f):
            if mask >> i & 1:
                element = multiply(element, code.generators[i])
        yield element


def codeword(code: StabilizerCode, j: int) -> CodewordExpansion:
    """Expand ``sum_M M|0...0>`` (times the logical X for ``j = 1``)."""
    if code.k != 1:
        raise ValueError(f"codeword expansion supports k=1 only, got k={code.k}")
    if j not in (0, 1):
        raise ValueError(f"logical index {j} out of range for k=1")
    zero = (0,) * code.n
    acc: dict[tuple[int, ...], int] = {}
    for element in group_elements(code):
        sign, bits = apply_to_basis(element, zero)
        if j == 1:
            s2, bits = apply_to_basis(code.logical_x[0], bits)
            sign *= s2
        acc[bits] = acc.get(bits, 0) + sign
    acc = {b: c for b, c in acc.items() if c != 0}
    if not acc:
        raise ValueError("stabilizer projection of |0...0> vanishes; no codeword of this form")
    scale = math.sqrt(sum(c * c for c in acc.values()))
    return CodewordExpansion(code.n, {b: c / scale for b, c in sorted(acc.items())})


def check_matrix(code: StabilizerCode) -> np.ndarray:
    """Rows ``(x | z)`` of the generators, shape ``(f, 2n)``."""
    if not code.generators:
        return np.zeros((0, 2 * code.n), dtype=np.uint8)
    return np.array([list(g.x) + list(g.z) for g in code.generators], dtype=np.uint8)


def _permute(p: PauliString, perm: list[int]) -> PauliString:
    # perm[new] = old, 0-based
    return PauliString(tuple(p.x[o] for o in perm), tuple(p.z[o] for o in perm), p.sign)


def _reduce(rows: list[PauliString], start_row: int, start_col: int, part: str, perm: list[int]) -> int:
    """In-place echelon reduction with column swaps on columns >= start_col.

    Rows are combined with signed multiplication; ``perm`` tracks qubit
    relabeling.  Returns the number of pivots found.
    """
    n = rows[0].n if rows else 0
    r = start_row
    col = start_col
    while r < len(rows) and col < n:
        found = None
        for c in range(col, n):
            for i in range(r, len(rows)):
                if getattr(rows[i], part)[c]:
                    found = (i, c)
                    break
            if found:
                break
        if found is None:
            break
        i, c = found
        if c != col:
            swap = list(range(n))
            swap[c], swap[col] = swap[col], swap[c]
            rows[:] = [_permute(p, swap) for p in rows]
            perm[c], perm[col] = perm[col], perm[c]
        rows[r], rows[i] = rows[i], rows[r]
        for other in range(len(rows)):
            if other != r and getattr(rows[other], part)[col]:
                rows[other] = multiply(rows[other], rows[r])
        r += 1
        col += 1
    return r - start_row


def x_echelon(generators) -> tuple[list[PauliString], list[int]]:
    """Row-reduce generators on their X part without relabeling qubits.

    Returns the new generator list (pivot rows first) and 0-based pivot
    columns, one per X-carrying row.  Rows after the pivots are Z-only.
    """
    rows = list(generators)
    if not rows:
        return rows, []
    n = rows[0].n
    pivots: list[int] = []
    r = 0
    for c in range(n):
        i = next((i for i in range(r, len(rows)) if rows[i].x[c]), None)
        if i is None:
            continue
        rows[r], rows[i] = rows[i], rows[r]
        for other in range(len(rows)):
            if other != r and rows[other].x[c]:
                rows[other] = multiply(rows[other], rows[r])
        pivots.append(c)
        r += 1
    return rows, pivots


def standard_form(code: StabilizerCode) -> tuple[list[int], StabilizerCode]:
    """Bring the generators to standard form by row products and qubit swaps.

    Returns ``(perm, code')`` where ``perm[i]`` is the 1-based original qubit
    now sitting at position ``i + 1``.  The X block of the first ``r`` rows is
    ``[I A]``; the remaining rows are Z-only with an identity block in columns
    ``r+1 .. n-k``.  Logical operators are relabeled, not reduced.
    """
    n = code.n
    perm = list(range(n))
    rows = list(code.generators)
    if not rows:
        return [i + 1 for i in perm], code
    r = _reduce(rows, 0, 0, "x", perm)
    s = _reduce(rows, r, r, "z", perm)
    # clear Z entries of the X rows above the Z-only identity block
    for i in range(r):
        for j in range(r, r + s):
            if rows[i].z[j]:
                rows[i] = multiply(rows[i], rows[j])
    new = replace(
        code,
        generators=tuple(rows),
        logical_x=tuple(_permute(p, perm) for p in code.logical_x),
        logical_z=tuple(_permute(p, perm) for p in code.logical_z),
    )
    return [i + 1 for i in perm], new


def x_rank(code: StabilizerCode) -> int:
    return gf2.rank(check_matrix(code)[:, : code.n])


def is_reversal_symmetric(code: StabilizerCode) -> bool:
    """True when the logical X flips every qubit and carries no Z part."""
    if code.k != 1:
        raise ValueError(f"reversal symmetry is defined for k=1, got k={code.k}")
    lx = code.logical_x[0]
    return all(lx.x) and not any(lx.z)


def parse_code(text: str, name: str = "") -> StabilizerCode:
    """Parse the line-oriented code definition format."""
    n = k = distance = None
    gens, lx, lz = [], [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected '<key> <value>', got {raw!r}")
        key, value = parts
        try:
            if key == "n":
                n = int(value)
            elif key == "k":
                k = int(value)
            elif key == "distance":
                distance = int(value)
            elif key == "stabilizer":
                gens.append(parse_pauli(value))
            elif key == "logical_x":
                lx.append(parse_pauli(value))
            elif key == "logical_z":
                lz.append(parse_pauli(value))
            else:
                raise ValueError(f"unknown key {key!r}")
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    if n is None or k is None:
        raise ValueError("code file must define both n and k")
    return StabilizerCode(n, k, tuple(gens), tuple(lx), tuple(lz), distance, name)


def format_code(code: StabilizerCode) -> str:
    lines = [f"n {code.n}", f"k {code.k}"]
    lines += [f"stabilizer {g}" for g in code.generators]
    lines += [f"logical_x {p}" for p in code.logical_x]
    lines += [f"logical_z {p}" for p in code.logical_z]
    if code.distance is not None:
        lines.append(f"distance {code.distance}")
    return "\n".join(lines) + "\n"


def load_code(source: str) -> StabilizerCode:
    """Resolve ``five_qubit``/``steane`` or ``file:PATH``."""
    if source.startswith("file:"):
        path = Path(source[5:])
        return parse_code(path.read_text(encoding="utf-8"), name=path.stem)
    try:
        return BUILTIN_CODES[source]()
    except KeyError:
        raise ValueError(f"unknown code {source!r}; builtins: {', '.join(BUILTIN_CODES)}") from None

