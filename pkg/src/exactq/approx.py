"""Machine-precision backend for states outside Q(i, sqrt 2).

Mirrors the exact pipeline on ``numpy`` complex vectors: same row order,
same branch order, same gate conventions. Zero tests and equality use an
absolute tolerance ``eps`` (default ``1e-9``).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from itertools import permutations
from typing import Optional

import numpy as np

from .errors import ArityTooSmall, IndexOutOfRange, NonPositiveSum, NotCollapsed, NotUnitVector, ProtocolViolation
from .field import SQRT2_FLOAT

DEFAULT_EPS = 1e-9

_H = 1 / SQRT2_FLOAT
GATES = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
    "H": np.array([[_H, _H], [_H, -_H]], dtype=complex),
    "CNOT": np.array(
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
    ),
}

BOB_CORRECTION = {("z", "z"): "I", ("z", "o"): "X", ("o", "z"): "Z", ("o", "o"): "Y"}


def as_array(x) -> np.ndarray:
    """Convert an exact Qubit, Gate, Matrix or array-like to a complex array."""
    if hasattr(x, "approx"):
        return np.asarray(x.approx(), dtype=complex)
    if hasattr(x, "matrix"):
        return x.matrix.approx()
    return np.asarray(x, dtype=complex)


def arity(v: np.ndarray) -> int:
    n = len(v).bit_length() - 1
    if 1 << n != len(v):
        raise ValueError(f"state length {len(v)} is not a power of two")
    return n


def kron(*factors) -> np.ndarray:
    return reduce(np.kron, factors)


def check_unit(v: np.ndarray, eps: float = DEFAULT_EPS) -> np.ndarray:
    norm_sq = float(np.vdot(v, v).real)
    if abs(norm_sq - 1) > eps:
        raise NotUnitVector(norm_sq)
    return v


def embed(g: np.ndarray, first: int, n: int) -> np.ndarray:
    k = arity(g)
    if first < 0 or first + k > n:
        raise IndexOutOfRange(f"gate on qubits {first}..{first + k - 1} in {n}-qubit register")
    return kron(np.eye(1 << first), g, np.eye(1 << (n - first - k)))


def _zero_mask(i: int, n: int) -> np.ndarray:
    if not 0 <= i < n:
        raise IndexOutOfRange(f"qubit index {i} out of range for {n} qubits")
    return ((np.arange(1 << n) >> (n - 1 - i)) & 1) == 0


def sum_pair(i: int, v: np.ndarray) -> tuple[float, float]:
    probs = np.abs(v) ** 2
    mask = _zero_mask(i, arity(v))
    return float(probs[mask].sum()), float(probs[~mask].sum())


def nqv(i: int, keep_zero: bool, s: float, v: np.ndarray) -> np.ndarray:
    if s <= 0:
        raise NonPositiveSum(f"outcome probability must be positive, got {s}")
    mask = _zero_mask(i, arity(v))
    keep = mask if keep_zero else ~mask
    return np.where(keep, v / np.sqrt(s), 0)


def measure(i: int, v: np.ndarray, eps: float = DEFAULT_EPS) -> list[tuple[float, np.ndarray]]:
    p0, p1 = sum_pair(i, v)
    if p0 <= eps or p1 <= eps:
        return [(1.0, v)]
    return [(p0, nqv(i, True, p0, v)), (p1, nqv(i, False, p1, v))]


def measure_dist(i: int, dist, eps: float = DEFAULT_EPS) -> list[tuple[float, np.ndarray]]:
    return [(p * p2, w) for p, v in dist for p2, w in measure(i, v, eps)]


def outcome_dist(i: int, v: np.ndarray) -> tuple[float, float]:
    return sum_pair(i, v)


def entangled_p(v: np.ndarray, p1: int, p2: int, eps: float = DEFAULT_EPS) -> bool:
    before = np.array(outcome_dist(p2, v))
    return any(
        np.max(np.abs(np.array(outcome_dist(p2, res)) - before)) > eps
        for _, res in measure(p1, v, eps)
    )


def entangled_witness(v: np.ndarray, eps: float = DEFAULT_EPS) -> Optional[tuple[int, int]]:
    n = arity(v)
    if n < 2:
        raise ArityTooSmall(f"entanglement needs at least 2 qubits, got {n}")
    for p1, p2 in permutations(range(n), 2):
        if entangled_p(v, p1, p2, eps):
            return (p1, p2)
    return None


def entangled(v: np.ndarray, eps: float = DEFAULT_EPS) -> bool:
    return entangled_witness(v, eps) is not None


def epr_1() -> np.ndarray:
    return np.array([_H, 0, 0, _H], dtype=complex)


def firstgate() -> np.ndarray:
    return kron(GATES["CNOT"], GATES["I"])


def sndgate() -> np.ndarray:
    return kron(GATES["H"], GATES["I"], GATES["I"])


def alice(phi: np.ndarray, eps: float = DEFAULT_EPS) -> list[tuple[float, np.ndarray]]:
    s = sndgate() @ (firstgate() @ np.kron(phi, epr_1()))
    return measure_dist(0, measure(1, s, eps), eps)


def _collapsed_bit(i: int, v: np.ndarray, eps: float) -> str:
    p0, p1 = sum_pair(i, v)
    if abs(p0 - 1) <= eps and abs(p1) <= eps:
        return "z"
    if abs(p0) <= eps and abs(p1 - 1) <= eps:
        return "o"
    raise NotCollapsed(f"qubit {i} is not in a definite state (p0={p0}, p1={p1})")


def classify_branch(v: np.ndarray, eps: float = DEFAULT_EPS) -> tuple[str, str]:
    return (_collapsed_bit(0, v, eps), _collapsed_bit(1, v, eps))


def bob(v: np.ndarray, bits) -> np.ndarray:
    g = GATES[BOB_CORRECTION[tuple(str(b) for b in bits)]]
    return kron(GATES["I"], GATES["I"], g) @ v


def factor_third(v: np.ndarray, phi: np.ndarray, eps: float = DEFAULT_EPS) -> Optional[np.ndarray]:
    pivot = int(np.argmax(np.abs(phi)))
    z = v[pivot::2] / phi[pivot]
    if np.max(np.abs(np.kron(z, phi) - v)) > eps:
        return None
    return z


@dataclass(frozen=True)
class FloatTeleportBranch:
    prob: float
    bits: tuple[str, str]
    bob_output: np.ndarray
    witness: np.ndarray

    def to_json(self) -> dict:
        return {
            "prob": self.prob,
            "bits": list(self.bits),
            "bob_state": complex_to_json(self.bob_output),
            "witness": complex_to_json(self.witness),
            "verified": True,
        }


def teleport(phi: np.ndarray, eps: float = DEFAULT_EPS) -> list[FloatTeleportBranch]:
    phi = check_unit(as_array(phi), eps)
    out = []
    for p, v in alice(phi, eps):
        try:
            bits = classify_branch(v, eps)
        except NotCollapsed as exc:
            raise ProtocolViolation(f"Alice branch not collapsed: {exc}") from exc
        corrected = bob(v, bits)
        z = factor_third(corrected, phi, eps)
        if z is None:
            raise ProtocolViolation(f"branch {''.join(bits)}: register does not factor through phi")
        out.append(FloatTeleportBranch(p, bits, corrected, z))
    return out


def complex_to_json(v: np.ndarray) -> list[list[float]]:
    return [[float(z.real), float(z.imag)] for z in v]


def dist_to_json(dist) -> dict:
    n = arity(dist[0][1])
    return {
        "arity": n,
        "branches": [{"prob": float(p), "state": complex_to_json(v)} for p, v in dist],
    }
