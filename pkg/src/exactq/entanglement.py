"""Operational entanglement: measuring one qubit changes another's statistics.

Two qubits ``p1`` and ``p2`` of a state are entangled when some outcome of
measuring ``p1`` leaves ``p2`` with a different outcome distribution than it
had before. Only the outcome probabilities are compared, never the
post-measurement states.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Optional

from .errors import ArityTooSmall, IndexOutOfRange
from .field import ONESTWO, ZERO, RealRadical
from .matrix import Matrix
from .measurement import measure, sum_pair
from .state import Qubit


@dataclass(frozen=True)
class OutcomePair:
    p0: RealRadical
    p1: RealRadical


def outcome_dist(i: int, q: Qubit) -> OutcomePair:
    return OutcomePair(*sum_pair(i, q))


def entangled_p(q: Qubit, p1: int, p2: int) -> bool:
    for i in (p1, p2):
        if not 0 <= i < q.arity:
            raise IndexOutOfRange(f"qubit index {i} out of range for {q.arity} qubits")
    before = outcome_dist(p2, q)
    return any(outcome_dist(p2, res) != before for _, res in measure(p1, q))


def entangled_witness(q: Qubit) -> Optional[tuple[int, int]]:
    """First ordered pair ``(p1, p2)`` with ``entangled_p``, or ``None``."""
    if q.arity < 2:
        raise ArityTooSmall(f"entanglement needs at least 2 qubits, got {q.arity}")
    for p1, p2 in permutations(range(q.arity), 2):
        if entangled_p(q, p1, p2):
            return (p1, p2)
    return None


def entangled(q: Qubit) -> bool:
    return entangled_witness(q) is not None


def epr_1() -> Qubit:
    """The EPR pair ``(|00> + |11>) / sqrt 2``."""
    return Qubit(2, Matrix.create(4, 1, lambda i, j: ONESTWO if i in (1, 4) else ZERO))
