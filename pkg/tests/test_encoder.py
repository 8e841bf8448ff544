from dataclasses import replace

import numpy as np
import pytest

from stabdecode.circuit import inverse
from stabdecode.code import StabilizerCode, codeword
from stabdecode.decoder import encode_state, random_logical_states
from stabdecode.encoder import synthesize_encoder
from stabdecode.pauli import parse_pauli
from stabdecode.statevec import StateVector, apply_circuit, fidelity, from_expansion, stabilizer_expectation


def _encode_basis(code, layout, j):
    bits = [0] * code.n
    bits[layout.input_qubit - 1] = j
    return apply_circuit(StateVector.basis(bits), layout.circuit)


def test_layout(five):
    layout = synthesize_encoder(five)
    assert layout.circuit.width == 5 and layout.circuit.ancilla_count == 0
    assert 1 <= layout.input_qubit <= 5


@pytest.mark.parametrize("j", [0, 1])
def test_basis_codewords(builtin, j):
    layout = synthesize_encoder(builtin)
    out = _encode_basis(builtin, layout, j)
    ref = from_expansion(codeword(builtin, j))
    assert fidelity(out, ref) >= 1 - 1e-10
    for g in builtin.generators:
        assert stabilizer_expectation(out, g) == pytest.approx(1, abs=1e-12)
    assert stabilizer_expectation(out, builtin.logical_z[0]) == pytest.approx((-1) ** j, abs=1e-12)


def test_one_is_logical_x_of_zero(five):
    layout = synthesize_encoder(five)
    psi1 = _encode_basis(five, layout, 1)
    psi0 = _encode_basis(five, layout, 0)
    # relative phase matters here, so compare overlaps rather than fidelity
    from stabdecode.statevec import apply_pauli

    assert np.vdot(apply_pauli(psi0, five.logical_x[0]).amplitudes, psi1.amplitudes) == pytest.approx(1)


def test_linearity(five):
    plus = encode_state(five, np.array([1, 1]) / np.sqrt(2))
    ref = (from_expansion(codeword(five, 0)).amplitudes + from_expansion(codeword(five, 1)).amplitudes) / np.sqrt(2)
    assert abs(np.vdot(ref, plus.amplitudes)) ** 2 >= 1 - 1e-10


def test_inverse_restores_input(builtin):
    layout = synthesize_encoder(builtin)
    rng = np.random.default_rng(7)
    for alpha in random_logical_states(20, rng):
        encoded = encode_state(builtin, alpha, layout)
        back = apply_circuit(encoded, inverse(layout.circuit))
        expect = np.zeros(1 << builtin.n, dtype=complex)
        expect[0] = alpha[0]
        expect[1 << (builtin.n - layout.input_qubit)] = alpha[1]
        assert fidelity(back, StateVector(builtin.n, expect)) >= 1 - 1e-10


def test_signed_and_y_type_generators():
    # signs and X·Z factors exercise the Z and CZ fix-ups
    code = StabilizerCode.from_text(
        ["-XZZXI", "IXZZX", "-XIXZZ", "ZXIXZ"], ["XXXXX"], ["ZZZZZ"]
    )
    mixed = StabilizerCode.from_text(["YZY", "ZIZ"], ["IXZ"], ["IZI"])
    for c in (code, mixed):
        layout = synthesize_encoder(c)
        for j in (0, 1):
            out = _encode_basis(c, layout, j)
            assert fidelity(out, from_expansion(codeword(c, j))) >= 1 - 1e-10
            for g in c.generators:
                assert stabilizer_expectation(out, g) == pytest.approx(1, abs=1e-12)


def test_errors(five):
    with pytest.raises(ValueError):
        synthesize_encoder(replace(five, generators=five.generators[:3]))
    two = StabilizerCode.from_text(["ZZII", "IIZZ"], ["XXII", "IIXX"], ["ZIII", "IIZI"])
    with pytest.raises(ValueError):
        synthesize_encoder(two)
    with pytest.raises(ValueError, match="annihilate"):
        synthesize_encoder(StabilizerCode.from_text(["-ZZI", "IZZ"], ["XXX"], ["ZZZ"]))
