"""Smoke tests for the python bindings; the heavy verification lives in ctest."""

import math

import pytest

import _rlc as rlc


def separable():
    return rlc.generate_gaussians([-3.0, 0.0], [3.0, 0.0], 0.8, 8, 8, seed=11)


def test_dataset_roundtrip():
    d = rlc.Dataset([[0.0, 1.0], [2.0, 3.0]], [1, -1])
    assert len(d) == 2
    assert d.dim == 2
    assert d.n_pos == 1 and d.n_neg == 1
    assert d.features(1) == [2.0, 3.0]
    assert d.label(1) == -1
    with pytest.raises(rlc.RlcError):
        rlc.Dataset([[0.0]], [3])


def test_predict_tie_rule():
    h = rlc.LinearClassifier([1.0, 0.0])
    assert h.predict([2.0]) == 1
    assert h.predict([0.0]) == -1


def test_trainers_on_separable_data():
    d = separable()
    for train in (rlc.train_hinge, rlc.train_zero_one, rlc.train_majority_zero_one):
        rep = train(d)
        assert rep["feasible"]
        assert rep["max_risk"] == 0.0
    assert rlc.train_zero_one(d)["solver_objective"] == 0.0


def test_exact_trainer_matches_bruteforce():
    d = rlc.Dataset(
        [[-2.0], [-2.0], [3.0], [3.0], [1.0], [1.0], [1.0], [1.0]],
        [1, 1, 1, 1, -1, -1, -1, -1],
    )
    assert rlc.train_zero_one(d)["solver_objective"] == 2.0
    assert rlc.brute_force_zero_one(d)["solver_objective"] == 2.0


def test_resilience_bound_values():
    assert rlc.resilience_bound(50, 50, 10, 10) == 0.6
    assert rlc.resilience_bound(75, 25, 10, 5) == 0.68
    assert rlc.resilience_bound(37, 49, 0, 0) == 0.0
    assert rlc.resilience_bound(10, 10, 5, 0) == 1.0


def test_region_predicates():
    assert rlc.perfectly_attackable(rlc.Algorithm.CONVEX, 75, 25, 1, 0)
    assert not rlc.perfectly_attackable(rlc.Algorithm.CONVEX, 75, 25, 0, 0)
    assert rlc.perfectly_attackable(rlc.Algorithm.ZERO_ONE, 75, 25, 25, 0)
    assert not rlc.perfectly_attackable(rlc.Algorithm.MAJORITY_ZERO_ONE, 75, 25, 37, 12)


def test_point_attack_pipeline():
    clean = rlc.make_surrogate(15, 20, 1, seed=5)
    atk = rlc.point_attack(clean, 50.0, -1, seed=3)
    assert rlc.is_valid_bfa(clean, atk.tampered, 0, 1)
    v_hinge = rlc.empirical_resilience(rlc.Trainer.HINGE, clean, atk.tampered)
    v_01 = rlc.empirical_resilience(rlc.Trainer.ZERO_ONE, clean, atk.tampered)
    assert v_hinge == 1.0
    assert v_01 <= 2.0 / 15.0


def test_shift_attack_stays_under_bound():
    clean = rlc.generate_gaussians([-3.0, 0.0], [3.0, 0.0], 1.0, 10, 10, seed=2)
    atk = rlc.shift_beyond_attack(clean, 3, seed=4)
    assert rlc.is_valid_bfa(clean, atk.tampered, 3, 3)
    v = rlc.empirical_resilience(rlc.Trainer.MAJORITY_ZERO_ONE, clean, atk.tampered)
    assert v <= rlc.resilience_bound(10, 10, 3, 3) + 1e-9


def test_determinism():
    a = rlc.generate_gaussians([0.0], [5.0], 1.0, 4, 4, seed=9)
    b = rlc.generate_gaussians([0.0], [5.0], 1.0, 4, 4, seed=9)
    assert all(a.features(i) == b.features(i) for i in range(len(a)))


def test_risk_vector_matches_counts():
    d = rlc.Dataset([[-1.0], [1.0]], [1, -1])
    rp, rn = rlc.risk_vector01(rlc.LinearClassifier([-1.0, 0.0]), d)
    assert (rp, rn) == (0.0, 0.0)
    rp, rn = rlc.risk_vector01(rlc.LinearClassifier([1.0, 0.0]), d)
    assert (rp, rn) == (1.0, 1.0)
    assert math.isclose(rlc.max_risk(rlc.LinearClassifier([1.0, 0.0]), d), 1.0)
