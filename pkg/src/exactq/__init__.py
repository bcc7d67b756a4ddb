"""Exact simulation and checking of small quantum protocols over Q(i, sqrt 2)."""

from .entanglement import OutcomePair, entangled, entangled_p, entangled_witness, epr_1, outcome_dist
from .errors import *  # noqa: F401,F403
from .field import (
    HALF,
    I,
    ONE,
    ONESTWO,
    SQRT2,
    ZERO,
    Amplitude,
    RealRadical,
    amp_abs_sq,
    amp_approx,
    amp_arith,
    amp_conj,
    parse_amplitude,
    real_sqrt,
)
from .matrix import Matrix, conj_transpose, is_unitary, mat_add, mat_eq, mat_mul, mat_scale, tensor, vector_norm_sq
from .measurement import Branch, Distribution, digit_is_zero, measure, measure_dist, nqv, sum_pair
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
    basis,
    basis_q,
    equal_up_to_phase,
    gate_tensor,
    mk_qubit,
    qubit_tensor,
    standard_gates,
)
from .teleportation import (
    Bit,
    alice,
    alice_case,
    alice_pos,
    bob,
    classify_branch,
    factor_third,
    firstgate,
    sndgate,
    teleport,
)

__version__ = "0.1.0"
