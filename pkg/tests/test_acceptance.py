"""End-to-end acceptance checks, one test per numbered criterion.

Each test records PASS or FAIL in ``RESULTS``; the conftest hook prints the
table after the run. ``python tests/test_acceptance.py`` prints it standalone.
"""

import functools
import json
import subprocess
import sys
from fractions import Fraction as F
from itertools import product

import numpy as np

import generators as gen
from exactq import approx
from exactq.circuit import parse_circuit, run_circuit
from exactq.cli import main
from exactq.entanglement import entangled, epr_1
from exactq.field import ONESTWO, ZERO, Amplitude, RealRadical
from exactq.matrix import Matrix, is_unitary, tensor, vector_norm_sq
from exactq.measurement import measure, sum_pair
from exactq.state import (
    CNOT_GATE,
    HADAMARD,
    IDENTITY,
    Qubit,
    apply,
    basis,
    basis_q,
    gate_tensor,
    standard_gates,
)
from exactq.teleportation import alice, alice_branches, alice_case, alice_pos, teleport

TOL = 1e-9
FLOAT_NAMES = {"identity": "I", "x_gate": "X", "y_gate": "Y", "z_gate": "Z", "hadamard": "H", "cnot_gate": "CNOT"}
RESULTS = {}
TITLES = {}


def criterion(number, title):
    def wrap(fn):
        TITLES[number] = title

        @functools.wraps(fn)
        def run(*args, **kwargs):
            try:
                fn(*args, **kwargs)
            except BaseException:
                RESULTS[number] = False
                print(f"FAIL  {number:>2}. {title}")
                raise
            RESULTS[number] = True
            print(f"PASS  {number:>2}. {title}")

        return run

    return wrap


def report_lines():
    return [
        f"{'PASS' if RESULTS[n] else 'FAIL'}  {n:>2}. {TITLES[n]}" for n in sorted(RESULTS)
    ]


def close(a, b):
    return np.allclose(a, b, rtol=0, atol=TOL)


# Shared random inputs, fixed seeds so every run sees the same cases.

def _phis():
    rng = gen.seeded(1001)
    return [gen.phi(rng) for _ in range(50)]


def _measurable():
    rng = gen.seeded(1002)
    cases = []
    for _ in range(100):
        n = rng.randint(1, 3)
        bit = rng.randrange(n)
        cases.append((gen.measurable_state(rng, n, bit), bit))
    return cases


def _products():
    rng = gen.seeded(1003)
    return [gen.local_qubit(rng) @ gen.local_qubit(rng) for _ in range(50)]


PHIS = _phis()
EDGE_PHIS = [
    basis_q(1, 0),
    basis_q(1, 1),
    Qubit.from_amplitudes([ONESTWO, ONESTWO]),
    Qubit.from_amplitudes([F(3, 5), F(4, 5)]),
]
MEASURABLE = _measurable()
PRODUCTS = _products()
HALVES = Qubit.from_amplitudes([F(1, 2)] * 4)


@criterion(1, "standard gates exact and unitary")
def test_gate_definitions():
    gates = standard_gates()
    assert gates["x_gate"].matrix == Matrix([[0, 1], [1, 0]])
    expected_h = Matrix.create(2, 2, lambda i, j: -ONESTWO if i == j == 2 else ONESTWO)
    assert gates["hadamard"].matrix == expected_h
    assert HADAMARD.matrix[2, 2] == -ONESTWO
    assert len(gates) == 6
    assert all(is_unitary(g.matrix) for g in gates.values())


@criterion(2, "basis vectors have unit norm")
def test_basis_length():
    for n in (1, 2, 3):
        for k in range(2**n):
            assert vector_norm_sq(basis(2**n, k)) == 1


def tensor_by_enumeration(a, b):
    m, n, p, q = a.rows, a.cols, b.rows, b.cols
    cells = {}
    for i, j, k, l in product(range(1, m + 1), range(1, n + 1), range(1, p + 1), range(1, q + 1)):
        r, c = p * (i - 1) + k, q * (j - 1) + l
        assert 0 < r <= m * p and 0 < c <= n * q
        cells[r, c] = a[i, j] * b[k, l]
    assert len(cells) == m * n * p * q
    return cells


@criterion(3, "tensor entries match index enumeration (200 pairs)")
def test_tensor_entries():
    rng = gen.seeded(1004)
    for _ in range(200):
        a = gen.matrix(rng, rng.randint(1, 4), rng.randint(1, 4))
        b = gen.matrix(rng, rng.randint(1, 4), rng.randint(1, 4))
        t = tensor(a, b)
        assert t.shape == (a.rows * b.rows, a.cols * b.cols)
        for (r, c), v in tensor_by_enumeration(a, b).items():
            assert t[r, c] == v


def _quadruples():
    rng = gen.seeded(1005)
    out = []
    for _ in range(100):
        m1, n1, p1, m2, n2, p2 = (rng.randint(1, 3) for _ in range(6))
        out.append((
            gen.matrix(rng, m1, n1), gen.matrix(rng, n1, p1),
            gen.matrix(rng, m2, n2), gen.matrix(rng, n2, p2),
        ))
    return out


QUADRUPLES = _quadruples()


@criterion(4, "(AB)x(CD) = (AxC)(BxD) exactly (100 quadruples)")
def test_product_distributes_over_tensor():
    for a, b, c, d in QUADRUPLES:
        assert tensor(a @ b, c @ d) == tensor(a, c) @ tensor(b, d)


@criterion(5, "matrix addition forms an abelian group")
def test_abelian_group():
    rng = gen.seeded(1006)
    for _ in range(50):
        m, n = rng.randint(1, 4), rng.randint(1, 4)
        a, b, c = (gen.matrix(rng, m, n) for _ in range(3))
        zero = Matrix.zero(m, n)
        assert (a + b) + c == a + (b + c)
        assert a + b == b + a
        assert a + zero == a == zero + a
        assert a + (-a) == zero
        assert all(x == ZERO for row in (a - a).to_rows() for x in row)


@criterion(6, "measurement normalises and is idempotent (100 states)")
def test_measurement():
    for q, bit in MEASURABLE:
        p0, p1 = sum_pair(bit, q)
        assert p0 + p1 == 1
        branches = measure(bit, q)
        assert sum((b.prob for b in branches), RealRadical()) == 1
        for p, s in branches:
            assert vector_norm_sq(s.state) == 1
            again = measure(bit, s)
            assert len(again) == 1
            assert again[0].prob == 1 and again[0].state == s


@criterion(7, "EPR entangled, product states not (50 products)")
def test_epr_and_products():
    assert entangled(epr_1())
    assert not entangled(HALVES)
    for q in PRODUCTS:
        assert not entangled(q)


@criterion(8, "Alice yields the four patterned branches at 1/4 (50 phi)")
def test_alice_case():
    for phi in PHIS:
        a, b = phi.amplitudes
        d = alice(phi)
        assert len(d) == 4
        assert d.probs == [F(1, 4)] * 4
        pats = alice_pos(phi)
        assert sorted(alice_case(phi, s) for s in d.states) == [1, 2, 3, 4]
        for s in d.states:
            assert s.state == pats[alice_case(phi, s) - 1]
        by_bits = {tuple(str(x) for x in br.bits): br.state for br in alice_branches(phi)}
        assert by_bits[("o", "z")][6] == -b
        assert by_bits[("o", "o")][7] == -b
        assert by_bits[("o", "o")][8] == a


@criterion(9, "every teleport branch factors with a unit witness (54 phi)")
def test_teleportation_theorem():
    for phi in PHIS + EDGE_PHIS:
        branches = teleport(phi)
        assert sum((b.prob for b in branches), RealRadical()) == 1
        for b in branches:
            assert b.witness @ phi == b.bob_output
            assert vector_norm_sq(b.witness.state) == 1


@criterion(10, "float backend agrees within 1e-9")
def test_backend_agreement():
    for name, g in standard_gates().items():
        assert close(approx.GATES[FLOAT_NAMES[name]], g.matrix.approx())
    for a, b, c, d in QUADRUPLES:
        assert close(np.kron(a.approx() @ b.approx(), c.approx() @ d.approx()), tensor(a @ b, c @ d).approx())
    for q, bit in MEASURABLE:
        exact = measure(bit, q)
        floats = approx.measure(bit, q.approx())
        assert len(exact) == len(floats)
        for (p, s), (fp, fv) in zip(exact, floats):
            assert abs(float(p) - fp) <= TOL
            assert close(fv, s.approx())
    for q in PRODUCTS + [epr_1(), HALVES]:
        assert approx.entangled(q.approx()) == entangled(q)
    for phi in PHIS + EDGE_PHIS:
        for (p, s), (fp, fv) in zip(alice(phi), approx.alice(phi.approx())):
            assert abs(float(p) - fp) <= TOL and close(fv, s.approx())
        exact = teleport(phi)
        floats = approx.teleport(phi.approx())
        assert len(exact) == len(floats)
        for e, f in zip(exact, floats):
            assert f.bits == tuple(str(x) for x in e.bits)
            assert abs(float(e.prob) - f.prob) <= TOL
            assert close(f.bob_output, e.bob_output.approx())
            assert close(f.witness, e.witness.approx())


@criterion(11, "CLI end to end and exit codes")
def test_cli(tmp_path, capsys):
    epr_prep = "qubits 2\ngate H 0\ngate CNOT 0 1\n"
    result = run_circuit(parse_circuit(epr_prep))
    assert [b.state for b in result.distribution] == [epr_1()]
    assert result.distribution[0].state == Qubit.from_amplitudes([ONESTWO, 0, 0, ONESTWO])
    assert apply(apply(basis_q(2, 0), gate_tensor(HADAMARD, IDENTITY)), CNOT_GATE) == epr_1()

    circuit = tmp_path / "epr.txt"
    circuit.write_text(epr_prep)
    assert main(["simulate", str(circuit), "--json"]) == 0
    state = json.loads(capsys.readouterr().out)["distribution"]["branches"][0]["state"]
    assert [Amplitude.from_json(a) for a in state] == epr_1().amplitudes

    out = subprocess.run(
        ["exactq", "teleport", "--alpha", "3/5", "--beta", "4/5", "--json"],
        capture_output=True, text=True,
    )
    assert out.returncode == 0
    report = json.loads(out.stdout)
    assert len(report) == 4
    assert [b["prob"] for b in report] == ["1/4"] * 4
    assert all(b["verified"] for b in report)

    epr_file = tmp_path / "epr.json"
    epr_file.write_text(json.dumps(epr_1().to_json()))
    assert main(["entangled", "--state", str(epr_file)]) == 0
    assert capsys.readouterr().out.strip() == "entangled: true (witness pair 0,1)"

    assert main(["teleport", "--alpha", "1", "--beta", "1"]) == 2
    circuit.write_text(epr_prep + "assert entangled 0 1 false\n")
    assert main(["simulate", str(circuit)]) == 1
    circuit.write_text("qubits 2\ngate H\n")
    assert main(["simulate", str(circuit)]) == 2
    circuit.write_text(epr_prep + "assert entangled 0 1 true\n")
    assert main(["simulate", str(circuit)]) == 0
    capsys.readouterr()


if __name__ == "__main__":
    import pytest

    code = pytest.main([__file__, "-q", "-p", "no:cacheprovider"])
    sys.exit(code)
