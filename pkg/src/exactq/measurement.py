"""Projective measurement of a single qubit in the standard basis."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .errors import IndexOutOfRange, NonPositiveSum, SqrtNotRepresentable
from .field import ZERO, RealRadical, real_sqrt
from .matrix import Matrix
from .state import Qubit


def digit_is_zero(i: int, r: int, n: int) -> bool:
    """Whether qubit ``i`` reads 0 in the basis state stored at 1-based row ``r``.

    Qubit 0 is the most significant of the ``n`` binary digits of ``r - 1``.
    """
    if not 0 <= i < n:
        raise IndexOutOfRange(f"qubit index {i} out of range for {n} qubits")
    if not 1 <= r <= 1 << n:
        raise IndexOutOfRange(f"row {r} out of range for {n} qubits")
    return not ((r - 1) >> (n - 1 - i)) & 1


def _check_bit(i: int, q: Qubit) -> None:
    if not 0 <= i < q.arity:
        raise IndexOutOfRange(f"qubit index {i} out of range for {q.arity} qubits")


def sum_pair(i: int, q: Qubit) -> tuple[RealRadical, RealRadical]:
    """Probabilities ``(p0, p1)`` of reading 0 and 1 on qubit ``i``."""
    _check_bit(i, q)
    p0 = p1 = RealRadical()
    for r, a in enumerate(q.amplitudes, start=1):
        if digit_is_zero(i, r, q.arity):
            p0 = p0 + a.abs_sq()
        else:
            p1 = p1 + a.abs_sq()
    return p0, p1


def nqv(i: int, keep_zero: bool, s, q: Qubit) -> Matrix:
    """Post-measurement vector for outcome ``0`` (``keep_zero``) or ``1`` on qubit ``i``.

    Rows inconsistent with the outcome become 0 and the survivors are divided
    by ``sqrt(s)``, where ``s`` is the probability of that outcome.

    Raises:
        NonPositiveSum: if ``s <= 0``.
        SqrtNotRepresentable: if ``sqrt(s)`` is not in Q(sqrt 2).
    """
    s = RealRadical.coerce(s)
    if s.sign() <= 0:
        raise NonPositiveSum(f"outcome probability must be positive, got {s}")
    root = real_sqrt(s)
    if root is None:
        raise SqrtNotRepresentable(s)
    inv = root.inverse()
    n = q.arity
    return Matrix.column(
        a * inv if digit_is_zero(i, r, n) == keep_zero else ZERO
        for r, a in enumerate(q.amplitudes, start=1)
    )


@dataclass(frozen=True)
class Branch:
    prob: RealRadical
    state: Qubit

    def __iter__(self) -> Iterator:
        yield self.prob
        yield self.state


@dataclass(frozen=True)
class Distribution:
    """Ordered measurement branches; probabilities are positive and sum to 1."""

    arity: int
    branches: tuple[Branch, ...]

    def __post_init__(self):
        branches = tuple(b if isinstance(b, Branch) else Branch(*b) for b in self.branches)
        object.__setattr__(self, "branches", branches)
        if not branches:
            raise ValueError("a distribution needs at least one branch")
        total = RealRadical()
        for b in branches:
            if b.state.arity != self.arity:
                raise ValueError(f"branch of arity {b.state.arity} in {self.arity}-qubit distribution")
            if b.prob.sign() <= 0:
                raise ValueError(f"branch probability {b.prob} is not positive")
            total = total + b.prob
        if total != 1:
            raise ValueError(f"branch probabilities sum to {total}, expected 1")

    @classmethod
    def certain(cls, q: Qubit) -> "Distribution":
        return cls(q.arity, (Branch(RealRadical(1), q),))

    def __iter__(self) -> Iterator[Branch]:
        return iter(self.branches)

    def __len__(self) -> int:
        return len(self.branches)

    def __getitem__(self, k: int) -> Branch:
        return self.branches[k]

    @property
    def probs(self) -> list[RealRadical]:
        return [b.prob for b in self.branches]

    @property
    def states(self) -> list[Qubit]:
        return [b.state for b in self.branches]

    def to_json(self) -> dict:
        return {
            "arity": self.arity,
            "branches": [
                {"prob": b.prob.to_json(), "state": [a.to_json() for a in b.state.amplitudes]}
                for b in self.branches
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Distribution":
        arity = data["arity"]
        return cls(
            arity,
            tuple(
                Branch(
                    RealRadical.from_json(b["prob"]),
                    Qubit.from_json({"arity": arity, "state": b["state"]}),
                )
                for b in data["branches"]
            ),
        )


def measure(i: int, q: Qubit) -> Distribution:
    """Measure qubit ``i``; outcome 0 comes first.

    If either outcome has probability zero the state is already an eigenstate
    and the single branch ``(1, q)`` is returned with ``q`` untouched.
    """
    p0, p1 = sum_pair(i, q)
    if p0.is_zero() or p1.is_zero():
        return Distribution.certain(q)
    return Distribution(
        q.arity,
        (
            Branch(p0, Qubit(q.arity, nqv(i, True, p0, q))),
            Branch(p1, Qubit(q.arity, nqv(i, False, p1, q))),
        ),
    )


def measure_dist(i: int, d: Distribution) -> Distribution:
    """Lift :func:`measure` over every branch, multiplying probabilities."""
    out = []
    for outer in d:
        for inner in measure(i, outer.state):
            out.append(Branch(outer.prob * inner.prob, inner.state))
    return Distribution(d.arity, tuple(out))
