import itertools

import numpy as np
import pytest

from stabdecode.circuit import ChainSpec, Circuit, cnot, is_linked_chain
from stabdecode.code import StabilizerCode
from stabdecode.decoder import DecoderCircuit, synthesize_proposed, verify_decoder
from stabdecode.search import (
    SCOPE,
    SearchLimitError,
    _TermTable,
    _rows_of,
    chain_prefixed_search,
    exhaustive_search,
    gate_alphabet,
)


def naive_first_decoder(code, max_gates):
    """Plain enumeration in canonical order with full simulation for every candidate."""
    alphabet = [(c + 1, t + 1) for c, t in gate_alphabet(code.n)]
    for length in range(1, max_gates + 1):
        for gates in itertools.product(alphabet, repeat=length):
            circuit = Circuit(code.n, tuple(cnot(*g) for g in gates))
            for out in range(1, code.n + 1):
                if verify_decoder(code, DecoderCircuit(circuit, out, "search", False)).passed:
                    return circuit, out
    return None


class TestFiveQubit:
    def test_nothing_below_six(self, five):
        r = exhaustive_search(five, 5)
        assert not r.found and r.min_gates is None

    def test_six_found(self, five):
        r = exhaustive_search(five, 6)
        assert r.found and r.min_gates == 6 and len(r.circuit.gates) == 6
        assert r.scope == SCOPE and "CNOT-only" in r.to_dict()["scope"]
        dec = DecoderCircuit(r.circuit, r.output_qubit, "search", False)
        rep = verify_decoder(five, dec, random_states=20)
        assert rep.passed and rep.min_fidelity >= 1 - 1e-10

    def test_deterministic(self, five):
        a, b = exhaustive_search(five, 4), exhaustive_search(five, 4)
        assert a.to_dict() == b.to_dict() and a.layer_sizes == b.layer_sizes

    def test_chain_family_reaches_six(self, five):
        r = chain_prefixed_search(five, 2)
        assert r.found and r.min_gates == 6
        assert is_linked_chain(Circuit(5, r.circuit.gates[:4]))

    def test_naive_agrees_up_to_two(self, five):
        assert naive_first_decoder(five, 2) is None
        assert not exhaustive_search(five, 2).found


class TestAgainstNaive:
    def test_bitflip(self, bitflip):
        naive = naive_first_decoder(bitflip, 3)
        r = exhaustive_search(bitflip, 3)
        assert naive is not None and r.found
        assert (r.circuit, r.output_qubit) == naive
        assert r.min_gates == 2


def test_zero_gates(five):
    r = exhaustive_search(five, 0)
    assert not r.found and r.gates_tried == 0


def test_limits(five):
    with pytest.raises(SearchLimitError):
        exhaustive_search(five, 8)
    big = StabilizerCode.from_text(["Z" * 7 + "I", "I" + "Z" * 7] + ["ZZ" + "I" * 6] * 5, ["X" * 8], ["Z" * 8])
    with pytest.raises(SearchLimitError):
        exhaustive_search(big, 3)


@pytest.mark.parametrize("name", ["five", "steane", "bitflip"])
def test_algebraic_screen_matches_simulation(name, request):
    """The exact GF(2) screen and the state-vector verifier agree on random CNOT circuits."""
    code = request.getfixturevalue(name)
    table = _TermTable(code)
    alphabet = gate_alphabet(code.n)
    rng = np.random.default_rng(5)
    circuits = [[alphabet[i] for i in rng.integers(len(alphabet), size=rng.integers(0, 12))] for _ in range(40)]
    for order in itertools.islice(itertools.permutations(range(1, code.n + 1)), 10):
        dec = synthesize_proposed(code, ChainSpec(order))
        circuits.append([(g.control - 1, g.target - 1) for g in dec.circuit.gates])
    positives = 0
    for gates in circuits:
        screen = table.decodes(_rows_of(gates, code.n)[None, :])[0]
        circuit = Circuit(code.n, tuple(cnot(c + 1, t + 1) for c, t in gates))
        for out in range(code.n):
            sim = verify_decoder(code, DecoderCircuit(circuit, out + 1, "search", False)).passed
            assert bool(screen[out]) == sim
            positives += sim
    assert positives >= 10
