"""Command-line front end: ``stabdecode <command> ...``.

stdout carries only artifacts (circuit text, JSON); diagnostics go to stderr.
Exit codes: 0 success, 1 verification/search negative, 2 input error,
3 precondition or limit error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from stabdecode import circuit as circ
from stabdecode.code import BUILTIN_CODES, codeword, load_code, validate
from stabdecode.decoder import (
    DecoderCircuit,
    PreconditionError,
    synthesize_conventional,
    synthesize_proposed,
    verify_decoder,
)
from stabdecode.encoder import synthesize_encoder
from stabdecode.search import SearchLimitError, chain_prefixed_search, exhaustive_search
from stabdecode.statevec import DEFAULT_TOL, StateVector, apply_circuit, fidelity, from_expansion

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_PRECONDITION = 0, 1, 2, 3
RANDOM_STATES = 20

log = logging.getLogger("stabdecode")


class InputError(Exception):
    pass


def _positive(value: str) -> float:
    x = float(value)
    if x <= 0:
        raise argparse.ArgumentTypeError("tolerance must be positive")
    return x


def _chain(value: str) -> circ.ChainSpec:
    try:
        return circ.ChainSpec(tuple(int(v) for v in value.split(",")))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _load(source: str, require_valid: bool = True):
    try:
        code = load_code(source)
    except (OSError, ValueError) as exc:
        raise InputError(str(exc)) from None
    if require_valid:
        report = validate(code)
        if not report.ok:
            raise InputError("code validation failed:\n  " + "\n  ".join(report.violations))
    return code


def _emit(text: str, path: str | None) -> None:
    if path:
        Path(path).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)


def _json(obj) -> str:
    return json.dumps(obj, sort_keys=True) + "\n"


def cmd_codes(args) -> int:
    rows = []
    for name, factory in BUILTIN_CODES.items():
        c = factory()
        rows.append(f"{name} {c.n} {c.k} {c.distance if c.distance is not None else '-'}")
    sys.stdout.write("".join(r + "\n" for r in rows))
    return EXIT_OK


def _decoder(code, method: str, chain):
    if method == "decode-conventional":
        return synthesize_conventional(code)
    return synthesize_proposed(code, chain)


def cmd_synth(args) -> int:
    code = _load(args.code)
    if args.method == "encode":
        enc = synthesize_encoder(code)
        _emit(circ.serialize(enc.circuit), args.output)
        if args.verify:
            fids = []
            for j in (0, 1):
                bits = [0] * code.n
                bits[enc.input_qubit - 1] = j
                out = apply_circuit(StateVector.basis(bits), enc.circuit)
                fids.append(fidelity(out, from_expansion(codeword(code, j))))
            passed = min(fids) >= 1 - args.tol
            sys.stdout.write(_json({
                "method": "encode",
                "gate_count": len(enc.circuit),
                "input_qubit": enc.input_qubit,
                "min_fidelity": min(fids),
                "passed": passed,
            }))
            return EXIT_OK if passed else EXIT_NEGATIVE
        return EXIT_OK

    dec = _decoder(code, args.method, args.chain)
    _emit(circ.serialize(dec.circuit), args.output)
    if args.verify:
        report = verify_decoder(code, dec, args.tol, random_states=RANDOM_STATES, seed=args.seed)
        sys.stdout.write(_json(report.to_dict()))
        return EXIT_OK if report.passed else EXIT_NEGATIVE
    return EXIT_OK


def cmd_verify(args) -> int:
    code = _load(args.code)
    try:
        c = circ.parse(Path(args.circuit).read_text(encoding="utf-8"))
    except OSError as exc:
        raise InputError(str(exc)) from None
    except circ.CircuitParseError as exc:
        raise InputError(f"{args.circuit}: {exc}") from None
    uses_ancilla = c.width > code.n
    if c.width < code.n:
        raise InputError(f"circuit width {c.width} is smaller than the code's {code.n} qubits")
    try:
        dec = DecoderCircuit(c, args.output_qubit, args.method, uses_ancilla)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    report = verify_decoder(code, dec, args.tol, random_states=RANDOM_STATES, seed=args.seed)
    sys.stdout.write(_json(report.to_dict()))
    return EXIT_OK if report.passed else EXIT_NEGATIVE


def cmd_search(args) -> int:
    code = _load(args.code)
    if args.chain_prefix:
        extra = args.max_gates - (code.n - 1)
        if extra < 0:
            raise SearchLimitError(f"--chain-prefix needs max-gates >= {code.n - 1}")
        result = chain_prefixed_search(code, extra, args.tol)
    else:
        result = exhaustive_search(code, args.max_gates, args.tol)
    if result.found:
        _emit(circ.serialize(result.circuit), args.output)
    sys.stdout.write(_json(result.to_dict()))
    return EXIT_OK if result.found else EXIT_NEGATIVE


def cmd_report(args) -> int:
    code = _load(args.code)
    rows = []
    for method, build in (("conventional", synthesize_conventional), ("proposed", synthesize_proposed)):
        try:
            dec = build(code)
        except PreconditionError as exc:
            rows.append({"method": method, "applicable": False, "reason": str(exc),
                         "gate_count": None, "uses_ancilla": None, "min_fidelity": None})
            continue
        rep = verify_decoder(code, dec, args.tol)
        rows.append({"method": method, "applicable": True, "reason": None,
                     "gate_count": dec.gate_count, "uses_ancilla": dec.uses_ancilla,
                     "min_fidelity": rep.min_fidelity})
    if args.json:
        sys.stdout.write(_json({"code": code.name, "rows": rows}))
        return EXIT_OK
    lines = [f"{'method':<14}{'gate_count':>11}{'uses_ancilla':>14}{'min_fidelity':>16}"]
    for r in rows:
        if not r["applicable"]:
            lines.append(f"{r['method']:<14}{'not applicable':>41}")
            continue
        anc = "yes" if r["uses_ancilla"] else "no"
        lines.append(f"{r['method']:<14}{r['gate_count']:>11}{anc:>14}{r['min_fidelity']:>16.12f}")
    sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stabdecode", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, code=True):
        if code:
            p.add_argument("--code", default="five_qubit", help="builtin name or file:PATH")
        p.add_argument("--tol", type=_positive, default=DEFAULT_TOL)
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("codes", help="list built-in codes")
    p.set_defaults(func=cmd_codes)

    p = sub.add_parser("synth", help="emit an encoder or decoder circuit")
    common(p)
    p.add_argument("--method", required=True, choices=["encode", "decode-conventional", "decode-proposed"])
    p.add_argument("--chain", type=_chain, default=None, help="chain order, e.g. 1,2,3,4,5")
    p.add_argument("--verify", action="store_true")
    p.add_argument("-o", "--output", help="write the circuit here instead of stdout")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("verify", help="verify a decoder circuit file")
    common(p)
    p.add_argument("--circuit", required=True)
    p.add_argument("--output-qubit", type=int, required=True)
    p.add_argument("--method", default="custom", help="label stored in the report")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search", help="exhaustive CNOT-only decoder search")
    common(p)
    p.add_argument("--max-gates", type=int, required=True)
    p.add_argument("--chain-prefix", action="store_true", help="only circuits opening with a linked chain")
    p.add_argument("-o", "--output", help="write the found circuit here instead of stdout")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("report", help="compare conventional and proposed decoders")
    common(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s %(message)s"))
    log.addHandler(handler)
    log.setLevel(logging.INFO if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (PreconditionError, SearchLimitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    finally:
        log.removeHandler(handler)


if __name__ == "__main__":
    sys.exit(main())
