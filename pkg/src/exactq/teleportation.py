"""Quantum teleportation of one qubit over a shared EPR pair.

Alice holds ``phi`` (qubit 0) and the first half of the EPR pair (qubit 1);
Bob holds qubit 2. Alice applies CNOT on qubits 0, 1 and then H on qubit 0,
measures qubit 1 and then qubit 0, and sends the two classical bits. Bob
applies I, X, Z or Y to qubit 2, after which the register factors as
``z (x) phi`` for some two-qubit state ``z``.
"""

from __future__ import annotations

import enum
import functools
from dataclasses import dataclass
from typing import Optional

from .errors import NotCollapsed, ProtocolViolation
from .field import ZERO, RealRadical
from .matrix import Matrix, tensor
from .measurement import Distribution, measure, measure_dist, sum_pair
from .entanglement import epr_1
from .state import (
    CNOT_GATE,
    HADAMARD,
    IDENTITY,
    X_GATE,
    Y_GATE,
    Z_GATE,
    Gate,
    Qubit,
    apply,
    qubit_tensor,
    tensor_all,
)


class Bit(enum.Enum):
    z = "z"
    o = "o"

    def __str__(self):
        return self.value


# Outcome bits (qubit 0, qubit 1) -> index of the matching collapsed pattern.
POS_CASE = {
    (Bit.z, Bit.z): 1,
    (Bit.z, Bit.o): 2,
    (Bit.o, Bit.z): 3,
    (Bit.o, Bit.o): 4,
}

BOB_CORRECTION = {
    (Bit.z, Bit.z): IDENTITY,
    (Bit.z, Bit.o): X_GATE,
    (Bit.o, Bit.z): Z_GATE,
    (Bit.o, Bit.o): Y_GATE,
}


@functools.cache
def firstgate() -> Gate:
    return tensor_all(CNOT_GATE, IDENTITY)


@functools.cache
def sndgate() -> Gate:
    return tensor_all(HADAMARD, IDENTITY, IDENTITY)


def alice_state(phi: Qubit) -> Qubit:
    """The register after Alice's two gates, before any measurement."""
    return apply(apply(qubit_tensor(phi, epr_1()), firstgate()), sndgate())


def alice(phi: Qubit) -> Distribution:
    """Alice's gates followed by measurement of qubit 1, then qubit 0."""
    return measure_dist(0, measure(1, alice_state(phi)))


def alice_pos(phi: Qubit) -> list[Matrix]:
    """The four collapsed register vectors Alice can end up with, in case order."""
    a, b = phi.amplitudes
    z = ZERO
    rows = [
        [a, b, z, z, z, z, z, z],
        [z, z, b, a, z, z, z, z],
        [z, z, z, z, a, -b, z, z],
        [z, z, z, z, z, z, -b, a],
    ]
    return [Matrix.column(r) for r in rows]


def alice_case(phi: Qubit, q: Qubit) -> Optional[int]:
    """1-based index of the pattern from :func:`alice_pos` equal to ``q``."""
    matches = [k for k, m in enumerate(alice_pos(phi), start=1) if m == q.state]
    return matches[0] if len(matches) == 1 else None


def _collapsed_bit(i: int, q: Qubit) -> Bit:
    p0, p1 = sum_pair(i, q)
    if p0 == 1 and p1 == 0:
        return Bit.z
    if p0 == 0 and p1 == 1:
        return Bit.o
    raise NotCollapsed(f"qubit {i} is not in a definite state (p0={p0}, p1={p1})")


def classify_branch(q: Qubit) -> tuple[tuple[Bit, Bit], int]:
    """Read Alice's two measured bits from a collapsed register.

    Raises:
        NotCollapsed: if qubit 0 or qubit 1 still has two possible outcomes.
    """
    bits = (_collapsed_bit(0, q), _collapsed_bit(1, q))
    return bits, POS_CASE[bits]


@functools.cache
def _bob_gate(bits: tuple[Bit, Bit]) -> Gate:
    return tensor_all(IDENTITY, IDENTITY, BOB_CORRECTION[bits])


def bob(q: Qubit, bits: tuple[Bit, Bit]) -> Qubit:
    """Apply Bob's correction I, X, Z or Y (for zz, zo, oz, oo) to qubit 2."""
    return apply(q, _bob_gate(tuple(bits)))


def factor_third(q: Qubit, phi: Qubit) -> Optional[Qubit]:
    """Find ``z`` with ``q == z (x) phi`` exactly, or return ``None``.

    Each block ``(q[2k-1], q[2k])`` must be ``z_k * phi``; ``z_k`` is read
    off at a nonzero pivot of ``phi`` and the whole product is then checked.
    """
    if q.arity != 3 or phi.arity != 1:
        return None
    ph = phi.amplitudes
    pivot = 0 if not ph[0].is_zero() else 1
    qs = q.amplitudes
    zs = [qs[2 * k + pivot] / ph[pivot] for k in range(4)]
    candidate = Matrix.column(zs)
    if tensor(candidate, phi.state) != q.state:
        return None
    return Qubit(2, candidate)


@dataclass(frozen=True)
class AliceBranch:
    prob: RealRadical
    state: Qubit
    bits: tuple[Bit, Bit]
    pos_case: int


@dataclass(frozen=True)
class TeleportBranch:
    prob: RealRadical
    bits: tuple[Bit, Bit]
    bob_output: Qubit
    witness: Qubit
    phi: Qubit

    def to_json(self) -> dict:
        return {
            "prob": str(self.prob),
            "bits": [str(b) for b in self.bits],
            "bob_state": [a.to_json() for a in self.bob_output.amplitudes],
            "witness": [a.to_json() for a in self.witness.amplitudes],
            "verified": self.verified,
        }

    @property
    def verified(self) -> bool:
        return qubit_tensor(self.witness, self.phi) == self.bob_output


def alice_branches(phi: Qubit) -> list[AliceBranch]:
    out = []
    for prob, state in alice(phi):
        bits, case = classify_branch(state)
        out.append(AliceBranch(prob, state, bits, case))
    return out


def teleport(phi: Qubit) -> list[TeleportBranch]:
    """Run the whole protocol and return one record per measurement outcome.

    Raises:
        ProtocolViolation: if a branch cannot be classified or Bob's register
            does not factor as ``z (x) phi``.
    """
    out = []
    for prob, state in alice(phi):
        try:
            bits, _ = classify_branch(state)
        except NotCollapsed as exc:
            raise ProtocolViolation(f"Alice branch not collapsed: {exc}") from exc
        corrected = bob(state, bits)
        witness = factor_third(corrected, phi)
        if witness is None:
            raise ProtocolViolation(
                f"branch {bits[0]}{bits[1]}: Bob's register {corrected} does not factor through phi"
            )
        out.append(TeleportBranch(prob, bits, corrected, witness, phi))
    return out


def teleport_report(branches: list[TeleportBranch]) -> list[dict]:
    return [b.to_json() for b in branches]
