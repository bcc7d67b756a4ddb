"""A line-oriented circuit language and its interpreter.

Grammar, one instruction per line::

    qubits N
    gate NAME i [j]            # NAME in I X Y Z H CNOT
    measure i
    assert entangled i j true|false

``#`` starts a comment; blank lines are ignored. ``qubits`` must come before
any other instruction. CNOT takes a control and a target that must be
adjacent (``j == i + 1`` or ``j == i - 1``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from . import approx
from .entanglement import entangled_p
from .errors import ArityMismatch, AssertionFailed, ParseError, ValidationError
from .matrix import Matrix
from .measurement import Distribution, measure_dist
from .state import CNOT_GATE, HADAMARD, IDENTITY, X_GATE, Y_GATE, Z_GATE, Gate, apply, basis_q, embed

SINGLE_QUBIT_GATES = {"I": IDENTITY, "X": X_GATE, "Y": Y_GATE, "Z": Z_GATE, "H": HADAMARD}
# CNOT with the control on the second of the two qubits.
CNOT_REVERSED = Gate.from_matrix(
    Matrix([[1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0]]), "CNOT_R"
)
GATE_NAMES = tuple(SINGLE_QUBIT_GATES) + ("CNOT",)


@dataclass(frozen=True)
class ApplyGate:
    name: str
    targets: tuple[int, ...]
    line: int = field(default=0, compare=False)

    def __str__(self):
        return " ".join(["gate", self.name, *map(str, self.targets)])


@dataclass(frozen=True)
class Measure:
    index: int
    line: int = field(default=0, compare=False)

    def __str__(self):
        return f"measure {self.index}"


@dataclass(frozen=True)
class AssertEntangled:
    i: int
    j: int
    expected: bool
    line: int = field(default=0, compare=False)

    def __str__(self):
        return f"assert entangled {self.i} {self.j} {str(self.expected).lower()}"


Instruction = Union[ApplyGate, Measure, AssertEntangled]


@dataclass(frozen=True)
class CircuitProgram:
    arity: int
    instructions: tuple[Instruction, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "instructions", tuple(self.instructions))
        validate(self)


def validate(p: CircuitProgram) -> None:
    """Check index bounds and gate arities.

    Raises:
        ValidationError: naming the offending line when it is known.
    """
    n = p.arity
    if n < 1:
        raise ValidationError(f"register must have at least one qubit, got {n}")

    def check_index(k: int, ins) -> None:
        if not 0 <= k < n:
            raise ValidationError(f"qubit index {k} out of range for {n} qubits", ins.line or None)

    for ins in p.instructions:
        if isinstance(ins, ApplyGate):
            if ins.name not in GATE_NAMES:
                raise ValidationError(f"unknown gate {ins.name!r}", ins.line or None)
            want = 2 if ins.name == "CNOT" else 1
            if len(ins.targets) != want:
                raise ValidationError(
                    f"gate {ins.name} takes {want} qubit index(es), got {len(ins.targets)}",
                    ins.line or None,
                )
            for k in ins.targets:
                check_index(k, ins)
            if want == 2:
                c, t = ins.targets
                if c == t:
                    raise ValidationError("CNOT control and target must differ", ins.line or None)
                if abs(c - t) != 1:
                    raise ValidationError(
                        f"CNOT {c} {t}: only adjacent qubits are supported", ins.line or None
                    )
        elif isinstance(ins, Measure):
            check_index(ins.index, ins)
        elif isinstance(ins, AssertEntangled):
            check_index(ins.i, ins)
            check_index(ins.j, ins)
            if ins.i == ins.j:
                raise ValidationError("assert entangled needs two distinct qubits", ins.line or None)
        else:
            raise ValidationError(f"unknown instruction {ins!r}")


def _int(tok: Optional[str], lineno: int, what: str) -> int:
    if tok is None:
        raise ParseError(lineno, f"expected {what}, found end of line")
    if not tok.isdigit():
        raise ParseError(lineno, f"expected {what} (nonnegative integer), found {tok!r}")
    return int(tok)


def _end(toks: list[str], k: int, lineno: int) -> None:
    if len(toks) > k:
        raise ParseError(lineno, f"expected end of line, found {toks[k]!r}")


def parse_circuit(text: str) -> CircuitProgram:
    """Parse circuit source text.

    Raises:
        ParseError: with the 1-based line number and the expected token.
        ValidationError: for a missing ``qubits`` line or bad indices.
    """
    arity = None
    instructions: list[Instruction] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        toks = raw.split("#", 1)[0].split()
        if not toks:
            continue
        head = toks[0].lower()
        get = lambda k: toks[k] if k < len(toks) else None  # noqa: E731
        if head == "qubits":
            if arity is not None:
                raise ParseError(lineno, "duplicate 'qubits' declaration")
            if instructions:
                raise ParseError(lineno, "'qubits' must precede all instructions")
            arity = _int(get(1), lineno, "qubit count")
            _end(toks, 2, lineno)
            continue
        if arity is None:
            raise ValidationError("missing 'qubits N' declaration before first instruction", lineno)
        if head == "gate":
            name = get(1)
            if name is None:
                raise ParseError(lineno, f"expected gate name ({', '.join(GATE_NAMES)})")
            name = name.upper()
            if name not in GATE_NAMES:
                raise ParseError(lineno, f"expected gate name ({', '.join(GATE_NAMES)}), found {toks[1]!r}")
            want = 2 if name == "CNOT" else 1
            targets = tuple(_int(get(2 + k), lineno, "qubit index") for k in range(want))
            _end(toks, 2 + want, lineno)
            instructions.append(ApplyGate(name, targets, lineno))
        elif head == "measure":
            instructions.append(Measure(_int(get(1), lineno, "qubit index"), lineno))
            _end(toks, 2, lineno)
        elif head == "assert":
            if get(1) != "entangled":
                raise ParseError(lineno, f"expected 'entangled' after 'assert', found {get(1)!r}")
            i = _int(get(2), lineno, "qubit index")
            j = _int(get(3), lineno, "qubit index")
            flag = (get(4) or "").lower()
            if flag not in ("true", "false"):
                raise ParseError(lineno, f"expected 'true' or 'false', found {get(4)!r}")
            _end(toks, 5, lineno)
            instructions.append(AssertEntangled(i, j, flag == "true", lineno))
        else:
            raise ParseError(
                lineno, f"expected one of 'qubits', 'gate', 'measure', 'assert', found {toks[0]!r}"
            )
    if arity is None:
        raise ValidationError("missing 'qubits N' declaration")
    return CircuitProgram(arity, tuple(instructions))


def format_circuit(p: CircuitProgram) -> str:
    lines = [f"qubits {p.arity}"] + [str(ins) for ins in p.instructions]
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class AssertionResult:
    branch: int
    i: int
    j: int
    expected: bool
    actual: bool
    line: int = 0

    @property
    def passed(self) -> bool:
        return self.expected == self.actual


@dataclass
class RunResult:
    backend: str
    distribution: object
    assertions: list[AssertionResult]

    @property
    def passed(self) -> bool:
        return all(a.passed for a in self.assertions)

    @property
    def failures(self) -> list[AssertionResult]:
        return [a for a in self.assertions if not a.passed]

    def to_json(self) -> dict:
        if self.backend == "exact":
            dist = self.distribution.to_json()
        else:
            dist = approx.dist_to_json(self.distribution)
        return {
            "backend": self.backend,
            "distribution": dist,
            "assertions": [
                {
                    "branch": a.branch,
                    "pair": [a.i, a.j],
                    "expected": a.expected,
                    "actual": a.actual,
                    "passed": a.passed,
                }
                for a in self.assertions
            ],
        }


def gate_for(ins: ApplyGate, n: int) -> Gate:
    """The ``n``-qubit gate implementing one ``gate`` instruction."""
    if ins.name == "CNOT":
        c, t = ins.targets
        return embed(CNOT_GATE, c, n) if t == c + 1 else embed(CNOT_REVERSED, t, n)
    return embed(SINGLE_QUBIT_GATES[ins.name], ins.targets[0], n)


def _float_gate(ins: ApplyGate, n: int) -> np.ndarray:
    if ins.name == "CNOT":
        c, t = ins.targets
        if t == c + 1:
            return approx.embed(approx.GATES["CNOT"], c, n)
        return approx.embed(CNOT_REVERSED.matrix.approx(), t, n)
    return approx.embed(approx.GATES[ins.name], ins.targets[0], n)


def run_circuit(
    p: CircuitProgram,
    initial=None,
    backend: str = "exact",
    strict: bool = False,
    eps: float = approx.DEFAULT_EPS,
) -> RunResult:
    """Execute ``p`` from ``initial`` (default ``|0...0>``).

    Gates act on every branch, ``measure`` splits branches, and each
    ``assert entangled`` is evaluated on every branch present at that point.
    With ``strict=True`` a failing assertion raises :class:`AssertionFailed`.
    """
    n = p.arity
    if backend == "exact":
        q0 = basis_q(n, 0) if initial is None else initial
        if q0.arity != n:
            raise ArityMismatch(f"initial state has {q0.arity} qubits, program declares {n}")
        dist = Distribution.certain(q0)
    elif backend == "float":
        v0 = np.eye(1 << n, dtype=complex)[0] if initial is None else approx.as_array(initial)
        if approx.arity(v0) != n:
            raise ArityMismatch(f"initial state has {approx.arity(v0)} qubits, program declares {n}")
        dist = [(1.0, approx.check_unit(v0, eps))]
    else:
        raise ValueError(f"unknown backend {backend!r}")

    results: list[AssertionResult] = []
    for ins in p.instructions:
        if isinstance(ins, ApplyGate):
            if backend == "exact":
                g = gate_for(ins, n)
                dist = Distribution(n, tuple((pr, apply(q, g)) for pr, q in dist))
            else:
                g = _float_gate(ins, n)
                dist = [(pr, g @ v) for pr, v in dist]
        elif isinstance(ins, Measure):
            if backend == "exact":
                dist = measure_dist(ins.index, dist)
            else:
                dist = approx.measure_dist(ins.index, dist, eps)
        else:
            for k, (_, q) in enumerate(dist):
                actual = (
                    entangled_p(q, ins.i, ins.j)
                    if backend == "exact"
                    else approx.entangled_p(q, ins.i, ins.j, eps)
                )
                results.append(AssertionResult(k, ins.i, ins.j, ins.expected, actual, ins.line))
    result = RunResult(backend, dist, results)
    if strict and not result.passed:
        raise AssertionFailed(result.failures)
    return result
