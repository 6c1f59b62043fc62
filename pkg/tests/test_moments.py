import math

import numpy as np
import pytest

from qscramble.errors import ResourceLimitError
from qscramble.moments import (
    DECAY_RATE,
    S3_HAT_LABELS,
    mean_purity_prediction,
    mean_sq_purity_prediction,
    moment_decay_prediction,
    parse_cycles,
    pauli_power_site,
    permutation_operator,
    permutation_trace,
    purity_decay_statistic,
    s4_labels,
    t_gate_overlap_bounds,
    t_gate_overlap_matrix,
)


def test_cycle_parsing():
    assert parse_cycles("e", 4) == (0, 1, 2, 3)
    assert parse_cycles("(12)", 4) == (1, 0, 2, 3)
    assert parse_cycles("(12)(34)", 4) == (1, 0, 3, 2)
    assert parse_cycles("(234)", 4) == (0, 2, 3, 1)
    with pytest.raises(ValueError):
        parse_cycles("(15)", 4)


def test_single_site_traces():
    assert permutation_trace("(12)", 2) == 2
    assert permutation_trace("e", 2) == 4
    assert permutation_trace("e", 4) == 16
    assert permutation_trace("(1234)", 4) == 2


def test_permutation_matrices_are_permutations():
    for label in ("e", "(12)", "(12)(34)", "(1234)"):
        op = permutation_operator(label, 4, 1)
        m = op.matrix
        assert np.array_equal(m @ m.conj().T, np.eye(16))
        assert set(np.unique(m.real)) <= {0.0, 1.0}
        assert abs(np.trace(m).real - permutation_trace(label, 4)) < 1e-12


def test_tensor_power_trace_identity():
    for label in s4_labels():
        r1 = permutation_operator(label, 4, 1).matrix
        r2 = permutation_operator(label, 4, 2).matrix
        assert np.trace(r2).real == pytest.approx(np.trace(r1).real ** 2, abs=1e-9)


def test_gram_matrix_symmetric_positive_integers():
    ops = [permutation_operator(lbl, 4, 2).matrix for lbl in s4_labels()]
    gram = np.array([[np.vdot(a, b).real for b in ops] for a in ops])
    assert np.allclose(gram, gram.T)
    assert np.all(gram > 0)
    assert np.allclose(gram, np.round(gram))


def test_pauli_power_operator_identity():
    p4 = pauli_power_site(4)
    assert np.abs(p4 @ p4 - 2.0 * p4).max() < 1e-12


def test_t_gate_overlap_matrix():
    for n in (1, 2):
        m = t_gate_overlap_matrix(n)
        diag_target, off_bound = t_gate_overlap_bounds(n)
        assert np.abs(np.diag(m) - diag_target).max() < 1e-9
        off = np.abs(m - np.diag(np.diag(m)))
        assert off.max() <= off_bound + 1e-9
    assert t_gate_overlap_bounds(1) == (12.0, 4.0)
    assert t_gate_overlap_bounds(2) == (192.0, 32.0)
    with pytest.raises(ResourceLimitError):
        t_gate_overlap_matrix(3)


def test_extended_labels():
    assert len(S3_HAT_LABELS) == 6
    op = permutation_operator("P4*(34)", 4, 1)
    assert op.matrix.shape == (16, 16)
    with pytest.raises(ValueError):
        permutation_operator("P4", 2, 1)


def test_dimension_cap():
    with pytest.raises(ResourceLimitError):
        permutation_operator("e", 4, 4)
    with pytest.raises(ResourceLimitError):
        permutation_operator("e", 2, 7)


def test_mean_purity_closed_form():
    assert mean_purity_prediction(8, 4) == pytest.approx(8192 / 65792, abs=1e-15)
    assert mean_purity_prediction(2, 1) == pytest.approx(0.8)
    assert mean_purity_prediction(8, 8) == pytest.approx(1.0)
    assert mean_purity_prediction(8, 0) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        mean_purity_prediction(4, 5)


def test_mean_sq_purity_closed_form():
    assert mean_sq_purity_prediction(8, 0) == pytest.approx(5 * 2.0**-8)
    assert mean_sq_purity_prediction(12, 4) == pytest.approx((4 + 0.31640625) / 4096)
    # large doping limit
    assert mean_sq_purity_prediction(10, 400) == pytest.approx(4 * 2.0**-10)


def test_decay_prediction():
    assert moment_decay_prediction(0) == 1.0
    assert moment_decay_prediction(4) == pytest.approx(0.31640625)
    assert -math.log(moment_decay_prediction(1)) == pytest.approx(0.2877, abs=5e-4)
    assert DECAY_RATE == pytest.approx(math.log(4 / 3))
    with pytest.raises(ValueError):
        moment_decay_prediction(-1)


def test_decay_statistic():
    # synthetic sample whose squared values average to exactly 5 * 2^-8
    purities = np.full(100, math.sqrt(5.0) * 2.0**-4)
    value, stderr = purity_decay_statistic(purities, 8)
    assert value == pytest.approx(1.0, abs=1e-12)
    assert stderr == 0.0
