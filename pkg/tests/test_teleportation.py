from fractions import Fraction as F

import pytest

import generators as gen
from exactq.entanglement import epr_1
from exactq.errors import NotCollapsed
from exactq.field import I, ONESTWO, RealRadical
from exactq.matrix import Matrix, is_unitary, vector_norm_sq
from exactq.state import Qubit, apply, basis_q, qubit_tensor
from exactq.teleportation import (
    Bit,
    alice,
    alice_branches,
    alice_case,
    alice_pos,
    bob,
    classify_branch,
    factor_third,
    firstgate,
    sndgate,
    teleport,
)

z, o = Bit.z, Bit.o
KET0, KET1 = basis_q(1, 0), basis_q(1, 1)
PLUS = Qubit.from_amplitudes([ONESTWO, ONESTWO])
PYTH = Qubit.from_amplitudes([F(3, 5), F(4, 5)])


def col(*xs):
    return Qubit.from_amplitudes(list(xs))


class TestGates:
    def test_unitary(self):
        assert firstgate().arity == sndgate().arity == 3
        assert is_unitary(firstgate().matrix) and is_unitary(sndgate().matrix)

    def test_firstgate(self):
        assert apply(basis_q(3, 0), firstgate()) == basis_q(3, 0)
        assert apply(basis_q(3, 4), firstgate()) == basis_q(3, 6)  # |100> -> |110>

    def test_sndgate(self):
        out = apply(basis_q(3, 0), sndgate())
        assert out.amplitudes == [ONESTWO, 0, 0, 0, ONESTWO, 0, 0, 0]


class TestAlice:
    def test_ket0(self):
        d = alice(KET0)
        assert [s.amplitudes for s in d.states] == [
            [1, 0, 0, 0, 0, 0, 0, 0],
            [0, 0, 0, 0, 1, 0, 0, 0],
            [0, 0, 0, 1, 0, 0, 0, 0],
            [0, 0, 0, 0, 0, 0, 0, 1],
        ]
        assert d.probs == [F(1, 4)] * 4

    def test_patterns_and_probs(self):
        rng = gen.seeded(41)
        for _ in range(10):
            phi = gen.phi(rng)
            d = alice(phi)
            assert d.probs == [F(1, 4)] * 4
            cases = sorted(alice_case(phi, s) for s in d.states)
            assert cases == [1, 2, 3, 4]

    def test_probability_oracle(self):
        # Sum |amplitude|^2 per Alice pattern directly: (|a|^2 + |b|^2) / 4 each.
        rng = gen.seeded(42)
        phi = gen.phi(rng)
        s = apply(apply(qubit_tensor(phi, epr_1()), firstgate()), sndgate()).amplitudes
        for block in range(4):
            mass = s[2 * block].abs_sq() + s[2 * block + 1].abs_sq()
            assert mass == F(1, 4)

    def test_branch_bits_match_cases(self):
        branches = alice_branches(PYTH)
        assert [(b.bits, b.pos_case) for b in branches] == [
            ((z, z), 1),
            ((o, z), 3),
            ((z, o), 2),
            ((o, o), 4),
        ]


class TestClassify:
    def test_examples(self):
        a, b = PYTH.amplitudes
        assert classify_branch(col(a, b, 0, 0, 0, 0, 0, 0)) == ((z, z), 1)
        assert classify_branch(col(0, 0, 0, 0, a, -b, 0, 0)) == ((o, z), 3)
        assert classify_branch(col(0, 0, b, a, 0, 0, 0, 0)) == ((z, o), 2)
        assert classify_branch(col(0, 0, 0, 0, 0, 0, -b, a)) == ((o, o), 4)

    def test_not_collapsed(self):
        with pytest.raises(NotCollapsed):
            classify_branch(epr_1() @ KET0)


class TestBob:
    def test_x_correction(self):
        a, b = PYTH.amplitudes
        assert bob(col(0, 0, b, a, 0, 0, 0, 0), (z, o)) == col(0, 0, a, b, 0, 0, 0, 0)

    def test_z_correction(self):
        a, b = PYTH.amplitudes
        assert bob(col(0, 0, 0, 0, a, -b, 0, 0), (o, z)) == col(0, 0, 0, 0, a, b, 0, 0)

    def test_identity(self):
        q = epr_1() @ PLUS
        assert bob(q, (z, z)) == q


class TestFactorThird:
    def test_oo_branch_has_minus_i_phase(self):
        a, b = PYTH.amplitudes
        out = bob(col(0, 0, 0, 0, 0, 0, -b, a), (o, o))
        w = factor_third(out, PYTH)
        assert w.amplitudes == [0, 0, 0, -I]
        assert qubit_tensor(w, PYTH) == out

    def test_trivial(self):
        assert factor_third(basis_q(2, 0) @ PYTH, PYTH) == basis_q(2, 0)

    def test_absent(self):
        assert factor_third(epr_1() @ KET0, PLUS) is None

    def test_zero_pivot(self):
        assert factor_third(basis_q(2, 3) @ KET1, KET1) == basis_q(2, 3)


class TestTeleport:
    def test_pythagorean(self):
        branches = teleport(PYTH)
        assert [b.prob for b in branches] == [F(1, 4)] * 4
        ws = {b.bits: b.witness for b in branches}
        assert ws == {
            (z, z): basis_q(2, 0),
            (z, o): basis_q(2, 1),
            (o, z): basis_q(2, 2),
            (o, o): Qubit.from_amplitudes([0, 0, 0, -I]),
        }

    @pytest.mark.parametrize("phi", [KET0, KET1, PLUS, PYTH])
    def test_edge_cases(self, phi):
        branches = teleport(phi)
        assert sum((b.prob for b in branches), RealRadical()) == 1
        for b in branches:
            assert b.verified
            assert vector_norm_sq(b.witness.state) == 1

    def test_ket0_witnesses_are_scaled_basis(self):
        for b in teleport(KET0):
            nz = [a for a in b.witness.amplitudes if not a.is_zero()]
            assert len(nz) == 1 and nz[0].abs_sq() == 1

    def test_third_qubit_phase(self):
        rng = gen.seeded(43)
        for _ in range(10):
            phi = gen.phi(rng)
            for b in teleport(phi):
                nz = [a for a in b.witness.amplitudes if not a.is_zero()]
                assert len(nz) == 1
                assert nz[0] == (-I if b.bits == (o, o) else 1)

    def test_report_json(self):
        rep = [b.to_json() for b in teleport(PYTH)]
        assert [r["prob"] for r in rep] == ["1/4"] * 4
        assert [r["bits"] for r in rep] == [["z", "z"], ["o", "z"], ["z", "o"], ["o", "o"]]
        assert rep[3]["witness"] == [["0"] * 4, ["0"] * 4, ["0"] * 4, ["0", "-1", "0", "0"]]
        assert all(r["verified"] for r in rep)


def test_alice_pos_patterns():
    a, b = PYTH.amplitudes
    pats = alice_pos(PYTH)
    assert pats[2] == Matrix.column([0, 0, 0, 0, a, -b, 0, 0])
    assert pats[3] == Matrix.column([0, 0, 0, 0, 0, 0, -b, a])

