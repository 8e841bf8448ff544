import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from stabdecode.circuit import ChainSpec, Circuit, Gate, cnot, cnot_linear_map, inverse, make_linked_chain
from stabdecode.code import CodewordExpansion, codeword
from stabdecode.pauli import PauliString, parse_pauli
from stabdecode.statevec import (
    NotSeparableError,
    StateVector,
    apply_circuit,
    extract_factor,
    factor_check,
    fidelity,
    from_expansion,
    random_state,
    stabilizer_expectation,
)
from test_circuit import circuits

SQ2 = np.sqrt(0.5)


def test_gate_semantics():
    out = apply_circuit(StateVector.basis("0"), Circuit(1, (Gate("H", (1,)),)))
    assert np.allclose(out.amplitudes, [SQ2, SQ2])
    out = apply_circuit(StateVector.basis("10"), Circuit(2, (cnot(1, 2),)))
    assert out.amplitude("11") == 1
    out = apply_circuit(StateVector.basis("11"), Circuit(2, (Gate("CZ", (2, 1)), Gate("S", (1,)))))
    assert out.amplitude("11") == pytest.approx(-1j)
    out = apply_circuit(StateVector.basis("01"), Circuit(2, (cnot(2, 1),)))
    assert out.amplitude("11") == 1


def test_chain_on_basis():
    out = apply_circuit(StateVector.basis("10010"), make_linked_chain(ChainSpec((1, 2, 3, 4, 5))))
    assert out.amplitude("11100") == 1


def test_width_mismatch():
    with pytest.raises(ValueError):
        apply_circuit(StateVector.basis("00"), Circuit(3))


def test_from_expansion(five):
    s = from_expansion(codeword(five, 0))
    assert s.amplitude("00000") == pytest.approx(0.25)
    assert s.amplitude("11110") == pytest.approx(-0.25)
    with pytest.raises(ValueError):
        from_expansion(CodewordExpansion(2, {}))


def test_fidelity(five):
    s = random_state(3, np.random.default_rng(1))
    assert fidelity(s, s) == pytest.approx(1)
    assert fidelity(StateVector.basis("0"), StateVector.basis("1")) == 0
    assert fidelity(from_expansion(codeword(five, 0)), from_expansion(codeword(five, 1))) == 0
    with pytest.raises(ValueError):
        fidelity(StateVector.basis("0"), StateVector.basis("00"))


def test_expectations(five):
    psi0 = from_expansion(codeword(five, 0))
    psi1 = from_expansion(codeword(five, 1))
    for g in five.generators:
        assert stabilizer_expectation(psi0, g) == pytest.approx(1, abs=1e-12)
    assert stabilizer_expectation(psi1, five.logical_z[0]) == pytest.approx(-1, abs=1e-12)
    assert stabilizer_expectation(StateVector.basis("0"), parse_pauli("Z")) == 1
    with pytest.raises(ValueError):
        stabilizer_expectation(psi0, parse_pauli("ZZ"))


@given(st.integers(1, 6), st.integers(0, 2**32 - 1))
def test_identity_expectation(n, seed):
    s = random_state(n, np.random.default_rng(seed))
    assert stabilizer_expectation(s, PauliString.identity(n)) == pytest.approx(1, abs=1e-12)


def test_factor_check():
    prod = StateVector.basis("0").tensor(StateVector.from_amplitudes([SQ2, SQ2]))
    ok, p = factor_check(prod, [1])
    assert ok and p == pytest.approx(1)
    bell = StateVector.from_amplitudes([SQ2, 0, 0, SQ2])
    ok, p = factor_check(bell, [1])
    assert not ok and p == pytest.approx(0.5)
    for bad in ([], [1, 2], [3]):
        with pytest.raises(ValueError):
            factor_check(bell, bad)


def test_extract_factor():
    psi = np.array([0.6, 0.8j])
    s = StateVector.basis("0").tensor(StateVector.from_amplitudes(psi))
    assert np.allclose(extract_factor(s, 2), psi)
    phased = StateVector.from_amplitudes(np.kron(psi * 1j, [1, 0]))
    assert np.allclose(extract_factor(phased, 1), psi)
    with pytest.raises(NotSeparableError):
        extract_factor(StateVector.from_amplitudes([SQ2, 0, 0, SQ2]), 1)


@settings(max_examples=50)
@given(circuits(max_width=10, max_gates=50), st.integers(0, 2**32 - 1))
def test_norm_and_inverse(c, seed):
    s = random_state(c.width, np.random.default_rng(seed))
    out = apply_circuit(s, c)
    assert out.norm() == pytest.approx(1, abs=1e-12)
    assert fidelity(apply_circuit(out, inverse(c)), s) >= 1 - 1e-10


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_cnot_permutation_matches_linear_map_exhaustive(n):
    rng = np.random.default_rng(n)
    pairs = [(a, b) for a in range(1, n + 1) for b in range(1, n + 1) if a != b]
    every_short = [g for m in range(3) for g in itertools.product(pairs, repeat=m)]
    longer = [[pairs[i] for i in rng.integers(len(pairs), size=rng.integers(3, 12))] for _ in range(30)]
    for gates in every_short + longer:
        c = Circuit(n, tuple(cnot(a, b) for a, b in gates))
        L = cnot_linear_map(c).astype(int)
        for bits in itertools.product((0, 1), repeat=n):
            out = apply_circuit(StateVector.basis(bits), c)
            expect = (L @ np.array(bits)) % 2
            assert out.amplitude(expect) == 1
