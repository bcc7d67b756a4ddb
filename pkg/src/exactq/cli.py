"""Command line front end.

Exit status: 0 on success, 1 when an assertion or the protocol fails,
2 for usage errors and invalid input (bad syntax, non-unit states).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import approx
from .circuit import parse_circuit, run_circuit
from .entanglement import entangled_p, entangled_witness
from .errors import (
    ArityMismatch,
    ArityTooSmall,
    AssertionFailed,
    IndexOutOfRange,
    NotCollapsed,
    NotUnitVector,
    ParseError,
    ProtocolViolation,
    QuantumError,
    ShapeMismatch,
    SqrtNotRepresentable,
    ValidationError,
)
from .field import Amplitude, parse_amplitude
from .measurement import measure
from .state import Qubit
from .teleportation import teleport, teleport_report

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

AMPLITUDE_HELP = (
    "amplitudes are written a + b i + c r2 + d i r2 with rational a..d, "
    "where r2 is sqrt(2); e.g. '3/5', '1/2 r2' (= 1/sqrt 2), '1/2 + 1/2i'"
)

_USAGE_ERRORS = (
    ParseError,
    ValidationError,
    NotUnitVector,
    ShapeMismatch,
    ArityMismatch,
    ArityTooSmall,
    IndexOutOfRange,
)
_RUNTIME_ERRORS = (AssertionFailed, ProtocolViolation, SqrtNotRepresentable, NotCollapsed)


class UsageError(Exception):
    pass


def _load_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON ({exc})") from exc


def _float_amp(a) -> complex:
    if isinstance(a, (list, tuple)) and len(a) == 2:
        return complex(float(a[0]), float(a[1]))
    if isinstance(a, (int, float)) and not isinstance(a, bool):
        return complex(a)
    return Amplitude.from_json(a).approx()


def load_state(path: str, backend: str):
    data = _load_json(path)
    if backend == "exact":
        try:
            return Qubit.from_json(data)
        except QuantumError:
            raise
        except (ValueError, TypeError) as exc:
            raise UsageError(f"{path}: {exc}") from exc
    try:
        v = np.array([_float_amp(a) for a in data["state"]], dtype=complex)
        if approx.arity(v) != data["arity"]:
            raise ShapeMismatch(f"arity {data['arity']} does not match {len(v)} amplitudes")
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, QuantumError):
            raise
        raise UsageError(f"{path}: {exc}") from exc
    return approx.check_unit(v)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)


def _fmt_vec(v) -> str:
    if isinstance(v, Qubit):
        return str(v)
    return "[" + ", ".join(f"{z.real:.6g}{z.imag:+.6g}i" if z.imag else f"{z.real:.6g}" for z in v) + "]"


def cmd_teleport(args) -> int:
    try:
        alpha, beta = parse_amplitude(args.alpha), parse_amplitude(args.beta)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.backend == "exact":
        phi = Qubit.from_amplitudes([alpha, beta])
        branches = teleport(phi)
        report = teleport_report(branches)
    else:
        branches = approx.teleport(np.array([alpha.approx(), beta.approx()]))
        report = [b.to_json() for b in branches]
    if args.json:
        print(_dump(report))
        return EXIT_OK
    print(f"teleporting phi = [{alpha}, {beta}]  ({args.backend} backend)")
    print(f"{'bits':<6}{'prob':<10}{'bob register':<50}witness")
    for b in branches:
        bits = "".join(str(x) for x in b.bits)
        print(f"{bits:<6}{str(b.prob):<10}{_fmt_vec(b.bob_output):<50}{_fmt_vec(b.witness)}")
    print(f"all {len(branches)} branches factor as witness (x) phi")
    return EXIT_OK


def cmd_measure(args) -> int:
    q = load_state(args.state, args.backend)
    if args.backend == "exact":
        dist = measure(args.bit, q)
        payload = dist.to_json()
        rows = [(str(p), str(s)) for p, s in dist]
    else:
        dist = approx.measure(args.bit, q)
        payload = approx.dist_to_json(dist)
        rows = [(f"{p:.12g}", _fmt_vec(v)) for p, v in dist]
    if args.json:
        print(_dump(payload))
        return EXIT_OK
    for k, (p, s) in enumerate(rows):
        print(f"branch {k}: prob {p}  state {s}")
    return EXIT_OK


def cmd_entangled(args) -> int:
    q = load_state(args.state, args.backend)
    exact = args.backend == "exact"
    if args.pair:
        i, j = args.pair
        verdict = entangled_p(q, i, j) if exact else approx.entangled_p(q, i, j)
        print(f"entangled {i} {j}: {str(verdict).lower()}")
        return EXIT_OK
    pair = entangled_witness(q) if exact else approx.entangled_witness(q)
    if pair is None:
        print("entangled: false")
    else:
        print(f"entangled: true (witness pair {pair[0]},{pair[1]})")
    return EXIT_OK


def cmd_simulate(args) -> int:
    try:
        text = Path(args.circuit).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {args.circuit}: {exc.strerror}") from exc
    program = parse_circuit(text)
    initial = load_state(args.state, args.backend) if args.state else None
    result = run_circuit(program, initial, backend=args.backend)
    if args.json:
        print(_dump(result.to_json()))
    else:
        if args.backend == "exact":
            rows = [(str(p), str(s)) for p, s in result.distribution]
        else:
            rows = [(f"{p:.12g}", _fmt_vec(v)) for p, v in result.distribution]
        for k, (p, s) in enumerate(rows):
            print(f"branch {k}: prob {p}  state {s}")
        for a in result.assertions:
            status = "ok" if a.passed else "FAILED"
            print(
                f"assert entangled {a.i} {a.j} {str(a.expected).lower()} "
                f"[branch {a.branch}]: {status}"
            )
    if not result.passed:
        raise AssertionFailed(result.failures)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--backend",
        choices=("exact", "float"),
        default="exact",
        help="exact Q(i, sqrt 2) arithmetic (default) or machine floats",
    )
    parser = argparse.ArgumentParser(
        prog="exactq",
        description="Exact simulation of qubits, measurement, entanglement and teleportation.",
        epilog=AMPLITUDE_HELP,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("teleport", parents=[common], help="teleport phi = alpha|0> + beta|1>",
                       epilog=AMPLITUDE_HELP)
    p.add_argument("--alpha", required=True, help="amplitude of |0>")
    p.add_argument("--beta", required=True, help="amplitude of |1>")
    p.add_argument("--json", action="store_true", help="print the JSON branch report")
    p.set_defaults(func=cmd_teleport)

    p = sub.add_parser("measure", parents=[common], help="measure one qubit of a state file")
    p.add_argument("--state", required=True, help="state JSON file")
    p.add_argument("--bit", required=True, type=int, help="qubit index (0 = leftmost)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("entangled", parents=[common], help="check a state file for entanglement")
    p.add_argument("--state", required=True, help="state JSON file")
    p.add_argument("--pair", nargs=2, type=int, metavar=("I", "J"),
                   help="only test whether measuring I changes J")
    p.set_defaults(func=cmd_entangled)

    p = sub.add_parser("simulate", parents=[common], help="run a circuit file")
    p.add_argument("circuit", help="circuit source file")
    p.add_argument("--state", help="initial state JSON file (default |0...0>)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, *_USAGE_ERRORS) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (*_RUNTIME_ERRORS, QuantumError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
