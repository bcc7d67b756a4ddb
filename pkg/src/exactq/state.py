"""Qubit registers, the standard basis and quantum gates.

Row ``r`` (1-based) of an ``n``-qubit state vector holds the amplitude of the
bit string ``r - 1`` written with ``n`` binary digits, qubit 0 being the most
significant (leftmost) digit. So ``[a, b, c, d]`` on two qubits is
``a|00> + b|01> + c|10> + d|11>``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce

from .errors import ArityMismatch, IndexOutOfRange, NotUnitary, NotUnitVector, ShapeMismatch
from .field import I, ONE, ONESTWO, ZERO, Amplitude
from .matrix import Matrix, is_unitary, tensor, vector_norm_sq


def basis(dim: int, k: int) -> Matrix:
    """Column vector of length ``dim`` with a single 1 in row ``k + 1``."""
    if not 0 <= k < dim:
        raise IndexOutOfRange(f"basis index {k} out of range for dimension {dim}")
    return Matrix.create(dim, 1, lambda i, j: ONE if i == k + 1 else ZERO)


def _arity_of(dim: int) -> int:
    n = dim.bit_length() - 1
    if dim < 1 or 1 << n != dim:
        raise ShapeMismatch(f"dimension {dim} is not a power of two")
    return n


@dataclass(frozen=True)
class Qubit:
    """An ``arity``-qubit pure state: a ``2**arity x 1`` vector of squared norm 1.

    Construct through :func:`mk_qubit` (or :meth:`from_amplitudes`), which
    performs the exact norm check.
    """

    arity: int
    state: Matrix

    def __post_init__(self):
        if self.state.shape != (1 << self.arity, 1):
            raise ShapeMismatch(
                f"a {self.arity}-qubit state needs shape {1 << self.arity}x1, "
                f"got {self.state.rows}x{self.state.cols}"
            )
        norm_sq = vector_norm_sq(self.state)
        if norm_sq != 1:
            raise NotUnitVector(norm_sq)

    @classmethod
    def from_amplitudes(cls, values) -> "Qubit":
        values = [Amplitude.coerce(v) for v in values]
        return cls(_arity_of(len(values)), Matrix.column(values))

    @property
    def amplitudes(self) -> list[Amplitude]:
        return self.state.column_values()

    def __getitem__(self, row: int) -> Amplitude:
        return self.state[row, 1]

    def __matmul__(self, other: "Qubit") -> "Qubit":
        return qubit_tensor(self, other)

    def approx(self):
        return self.state.approx()[:, 0]

    def to_json(self) -> dict:
        return {"arity": self.arity, "state": [a.to_json() for a in self.amplitudes]}

    @classmethod
    def from_json(cls, data: dict) -> "Qubit":
        try:
            arity, state = data["arity"], data["state"]
        except (KeyError, TypeError) as exc:
            raise ValueError("state JSON needs 'arity' and 'state' keys") from exc
        return mk_qubit(arity, Matrix.column(Amplitude.from_json(a) for a in state))

    def __str__(self):
        return "[" + ", ".join(str(a) for a in self.amplitudes) + "]"


@dataclass(frozen=True)
class Gate:
    """A unitary ``2**arity x 2**arity`` matrix; unitarity is checked exactly."""

    arity: int
    matrix: Matrix
    name: str = field(default="", compare=False)

    def __post_init__(self):
        dim = 1 << self.arity
        if self.matrix.shape != (dim, dim):
            raise ShapeMismatch(
                f"a {self.arity}-qubit gate needs shape {dim}x{dim}, "
                f"got {self.matrix.rows}x{self.matrix.cols}"
            )
        if not is_unitary(self.matrix):
            raise NotUnitary(f"matrix of gate {self.name or '?'} is not unitary")

    @classmethod
    def from_matrix(cls, matrix: Matrix, name: str = "") -> "Gate":
        return cls(_arity_of(matrix.rows), matrix, name)

    def __matmul__(self, other: "Gate") -> "Gate":
        return gate_tensor(self, other)

    def compose(self, other: "Gate") -> "Gate":
        """The gate that applies ``other`` first, then ``self``."""
        if self.arity != other.arity:
            raise ArityMismatch(f"cannot compose {self.arity}- and {other.arity}-qubit gates")
        return Gate(self.arity, self.matrix @ other.matrix)

    def dagger(self) -> "Gate":
        return Gate(self.arity, self.matrix.conj_transpose(), f"{self.name}^dagger")


def mk_qubit(n: int, v: Matrix) -> Qubit:
    """Wrap ``v`` as an ``n``-qubit state.

    Raises:
        ShapeMismatch: if ``v`` is not ``2**n x 1``.
        NotUnitVector: if the squared norm of ``v`` is not exactly 1.
    """
    return Qubit(n, v)


def basis_q(n: int, k: int) -> Qubit:
    return Qubit(n, basis(1 << n, k))


def _gate(rows, name: str) -> Gate:
    return Gate.from_matrix(Matrix(rows), name)


IDENTITY = _gate([[1, 0], [0, 1]], "I")
X_GATE = _gate([[0, 1], [1, 0]], "X")
Y_GATE = _gate([[0, -I], [I, 0]], "Y")
Z_GATE = _gate([[1, 0], [0, -1]], "Z")
HADAMARD = _gate([[ONESTWO, ONESTWO], [ONESTWO, -ONESTWO]], "H")
# Control is qubit 0 (the leftmost digit), target is qubit 1.
CNOT_GATE = _gate(
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]],
    "CNOT",
)


def standard_gates() -> dict[str, Gate]:
    return {
        "identity": IDENTITY,
        "x_gate": X_GATE,
        "y_gate": Y_GATE,
        "z_gate": Z_GATE,
        "hadamard": HADAMARD,
        "cnot_gate": CNOT_GATE,
    }


def apply(q: Qubit, g: Gate) -> Qubit:
    """Multiply the state by the gate matrix: ``g.matrix @ q.state``."""
    if q.arity != g.arity:
        raise ArityMismatch(f"cannot apply a {g.arity}-qubit gate to a {q.arity}-qubit state")
    return Qubit(q.arity, g.matrix @ q.state)


def qubit_tensor(a: Qubit, b: Qubit) -> Qubit:
    return Qubit(a.arity + b.arity, tensor(a.state, b.state))


def gate_tensor(a: Gate, b: Gate) -> Gate:
    name = f"{a.name}(x){b.name}" if a.name and b.name else ""
    return Gate(a.arity + b.arity, tensor(a.matrix, b.matrix), name)


def tensor_all(*factors):
    """Left-associated tensor product of qubits or gates."""
    op = gate_tensor if isinstance(factors[0], Gate) else qubit_tensor
    return reduce(op, factors)


def embed(g: Gate, first: int, n: int) -> Gate:
    """``I x ... x g x ... x I`` acting on qubits ``first .. first + g.arity - 1``."""
    if first < 0 or first + g.arity > n:
        raise IndexOutOfRange(f"gate on qubits {first}..{first + g.arity - 1} in {n}-qubit register")
    parts = [IDENTITY] * first + [g] + [IDENTITY] * (n - first - g.arity)
    return tensor_all(*parts)


def equal_up_to_phase(a: Qubit, b: Qubit) -> bool:
    """True iff ``a == c * b`` for some unit scalar ``c``, decided exactly."""
    if a.arity != b.arity:
        return False
    xs, ys = a.amplitudes, b.amplitudes
    pivot = next(k for k, y in enumerate(ys) if not y.is_zero())
    c = xs[pivot] / ys[pivot]
    if c.abs_sq() != 1:
        return False
    return all(x == c * y for x, y in zip(xs, ys))


def global_phase(a: Qubit, b: Qubit):
    """The unit scalar ``c`` with ``a == c * b``, or ``None``."""
    if not equal_up_to_phase(a, b):
        return None
    ys = b.amplitudes
    pivot = next(k for k, y in enumerate(ys) if not y.is_zero())
    return a.amplitudes[pivot] / ys[pivot]
