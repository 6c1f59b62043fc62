import numpy as np
import pytest

from qscramble.circuits import GateOp, gen_clifford_block
from qscramble.errors import InvalidSubsetError, UnsupportedGateError
from qscramble.statevector import PureState, reduced_density
from qscramble.tableau import StabilizerTableau, gf2_rank


def test_init_computational_basis():
    t = StabilizerTableau(2)
    assert t.stabilizer_strings() == ["+ZI", "+IZ"]


def test_init_rejects_zero_qubits():
    with pytest.raises(ValueError):
        StabilizerTableau(0)


def test_zero_state_measures_zero_without_randomness():
    t = StabilizerTableau(1)
    # deterministic outcome must not touch the stream at all
    assert t.measure_z(0, rng=None) == 0


def test_product_state_entropy_vanishes():
    t = StabilizerTableau(4)
    for subset in ([0], [1, 2], [0, 3], [0, 1, 2]):
        assert t.renyi2_entropy(subset) == 0


def test_hadamard_maps_z_to_x():
    t = StabilizerTableau(1)
    t.h(0)
    assert t.stabilizer_strings() == ["+X"]


def test_bell_circuit_stabilizers():
    t = StabilizerTableau(2)
    t.apply(GateOp("H", (0,)))
    t.apply(GateOp("CNOT", (0, 1)))
    assert sorted(t.stabilizer_strings()) == ["+XX", "+ZZ"]
    assert t.renyi2_entropy([0]) == 1


def test_non_clifford_gates_rejected():
    t = StabilizerTableau(2)
    with pytest.raises(UnsupportedGateError, match="T"):
        t.apply(GateOp("T", (0,)))
    with pytest.raises(UnsupportedGateError, match="RX"):
        t.apply(GateOp("RX", (0,), angle=0.3))
    # zero-angle rotations act as the identity
    before = t.stabilizer_strings()
    t.apply(GateOp("RZ", (1,), angle=0.0))
    assert t.stabilizer_strings() == before


def test_plus_state_measurement_frequencies():
    counts = 0
    trials = 10_000
    rng = np.random.default_rng(42)
    for _ in range(trials):
        t = StabilizerTableau(1)
        t.h(0)
        counts += t.measure_z(0, rng)
    # 3 sigma band around p = 1/2
    assert abs(counts / trials - 0.5) < 3 * 0.5 / np.sqrt(trials)


def test_random_measurement_consumes_one_draw():
    t = StabilizerTableau(1)
    t.h(0)
    rng = np.random.default_rng(9)
    t.measure_z(0, rng)
    reference = np.random.default_rng(9).random(2)
    assert rng.random() == reference[1]


def test_bell_measurements_correlated():
    for seed in range(20):
        t = StabilizerTableau(2)
        t.h(0)
        t.cnot(0, 1)
        rng = np.random.default_rng(seed)
        first = t.measure_z(0, rng)
        second = t.measure_z(1, None)  # now deterministic
        assert first == second


def test_post_measurement_state_pinned():
    for seed in range(10):
        t = StabilizerTableau(3)
        t.h(1)
        rng = np.random.default_rng(seed)
        outcome = t.measure_z(1, rng)
        t.check_invariants()
        strings = t.stabilizer_strings()
        expected = ("-IZI" if outcome else "+IZI")
        assert expected in strings
        assert t.measure_z(1, None) == outcome


def _ghz(n):
    t = StabilizerTableau(n)
    t.h(0)
    for q in range(1, n):
        t.cnot(q - 1, q)
    return t


def test_ghz_entropy_against_dense_oracle():
    t = _ghz(4)
    assert t.renyi2_entropy([0, 1]) == 1
    # independent oracle: dense reduced density matrix, eigenvalue purity
    s = PureState(4)
    s.apply(GateOp("H", (0,)))
    for q in range(1, 4):
        s.apply(GateOp("CNOT", (q - 1, q)))
    rho = reduced_density(s, [0, 1])
    eig = np.linalg.eigvalsh(rho)
    oracle = -np.log2(float((eig**2).sum()))
    assert abs(oracle - 1.0) < 1e-9


def test_entropy_symmetry_and_bounds():
    rng = np.random.default_rng(2)
    for seed in range(30):
        n = 6
        t = StabilizerTableau(n)
        for op in gen_clifford_block(n, np.random.default_rng(seed), steps=40):
            t.apply(op)
        for _ in range(5):
            k = int(rng.integers(1, n))
            subset = sorted(rng.choice(n, size=k, replace=False).tolist())
            complement = [q for q in range(n) if q not in subset]
            s = t.renyi2_entropy(subset)
            assert s == t.renyi2_entropy(complement)
            assert 0 <= s <= min(len(subset), n - len(subset))


def test_invariants_hold_through_gates_and_measurements():
    rng = np.random.default_rng(7)
    t = StabilizerTableau(5)
    ops = gen_clifford_block(5, np.random.default_rng(3), steps=15)
    for i, op in enumerate(ops):
        t.apply(op)
        if i % 4 == 0:
            t.check_invariants()
    for q in (0, 3, 1, 4, 2):
        t.measure_z(q, rng)
        t.check_invariants()


def test_entropy_rejects_bad_subsets():
    t = StabilizerTableau(3)
    with pytest.raises(InvalidSubsetError):
        t.renyi2_entropy([])
    with pytest.raises(InvalidSubsetError):
        t.renyi2_entropy([0, 0])
    with pytest.raises(InvalidSubsetError):
        t.renyi2_entropy([3])


def test_renyi_orders_coincide():
    t = _ghz(4)
    assert t.renyi_entropy([0, 2], 2) == t.renyi_entropy([0, 2], 4)
    with pytest.raises(ValueError):
        t.renyi_entropy([0], 3)


def test_spin_conventions():
    t = StabilizerTableau(4)
    assert t.spin_z([0, 1]) == 2.0
    t.x(0)
    assert t.spin_z([0]) == -1.0
    t.h(1)
    assert t.spin_z([1]) == 0.0
    bell = StabilizerTableau(2)
    bell.h(0)
    bell.cnot(0, 1)
    assert bell.spin_z([0]) == 0.0


def test_purity_matches_entropy():
    t = _ghz(3)
    assert t.purity([0]) == 0.5
    assert t.purity([0, 1, 2]) == 1.0


def test_gf2_rank():
    assert gf2_rank([0b001, 0b010, 0b100]) == 3
    assert gf2_rank([0b011, 0b101, 0b110]) == 2
    assert gf2_rank([0, 0]) == 0
