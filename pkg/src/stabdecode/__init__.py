"""Decoder synthesis and verification for small stabilizer codes."""

from stabdecode.pauli import PauliString, parse_pauli, multiply, commutes, weight, apply_to_basis
from stabdecode.code import (
    StabilizerCode,
    CodewordExpansion,
    five_qubit_code,
    steane_code,
    validate,
    codeword,
    check_matrix,
    standard_form,
    is_reversal_symmetric,
)
from stabdecode.circuit import Gate, Circuit, ChainSpec
from stabdecode.statevec import StateVector
from stabdecode.encoder import synthesize_encoder
from stabdecode.decoder import (
    synthesize_conventional,
    synthesize_proposed,
    classify_chain_effect,
    verify_decoder,
)
from stabdecode.search import exhaustive_search

__version__ = "0.1.0"
