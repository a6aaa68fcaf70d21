import io
import math

import numpy as np
import pytest

from votestab.bits import BitMatrix
from votestab.blackbox import TargetFunction, all_inputs, draw_output_batch
from votestab.estimators import (
    estimate_noise_heuristic,
    estimate_p_prime,
    estimate_rho_i,
    estimate_set,
    estimate_tau_all,
    estimate_tau_i,
    estimate_training_error,
    profiles_from_estimates,
    write_estimates_csv,
)
from votestab.exceptions import ConfigError, SingularityError
from votestab.knn import VotingConfig, neighborhoods


def test_tau_hat_is_neighborhood_mean():
    X = BitMatrix([[0, 0], [0, 1], [1, 1]])
    y = [1, 0, 1]
    # row 0's 3-neighborhood is all rows
    assert estimate_tau_i(X, y, 0, 3) == pytest.approx(2 / 3)
    assert estimate_tau_i(X, y, 0, 1) == 1.0


def test_tau_hat_all_zero():
    X = all_inputs(3)
    assert np.all(estimate_tau_all(X, [0] * 8, 3) == 0.0)


def test_rho_estimate_arithmetic():
    assert estimate_rho_i(0.3, 0.1) == pytest.approx(0.25)
    assert estimate_rho_i(0.1, 0.1) == pytest.approx(0.0)


def test_rho_estimate_singularity():
    with pytest.raises(SingularityError):
        estimate_rho_i(0.3, 0.5)


def test_estimate_set_clamps():
    X = all_inputs(2)
    est = estimate_set(X, [0, 0, 0, 0], p=0.2, k=1)
    # t_i = 0 -> raw r_i = -1/3, clamped to 0
    assert est.r_raw[0] == pytest.approx(-1 / 3)
    assert np.all(est.r_clamped == 0.0)


def test_p_prime_examples():
    assert estimate_p_prime([0, 0, 0]) == 0.0
    assert estimate_p_prime([0, 1]) == 0.5
    assert estimate_p_prime([0.25, 0.75, 0.5, 0.5]) == 0.5
    with pytest.raises(ConfigError):
        estimate_p_prime([])


def test_unbiasedness_monte_carlo():
    X = all_inputs(4)
    f = TargetFunction.majority(4)
    truth = f.evaluate_rows(X.array)
    k, p, trials = 3, 0.2, 40_000
    idx = neighborhoods(X, k)
    rho = truth[idx].mean(axis=1)
    tau = p + rho - 2 * p * rho
    Y = draw_output_batch(truth, p, trials, seed=123)
    t_samples = Y[:, idx].mean(axis=2)
    se = t_samples.std(axis=0, ddof=1) / math.sqrt(trials)
    # 4 sigma: 16 simultaneous per-instance checks
    assert np.all(np.abs(t_samples.mean(axis=0) - tau) <= 4 * se)
    r_samples = estimate_rho_i(t_samples, p)
    r_se = r_samples.std(axis=0, ddof=1) / math.sqrt(trials)
    assert np.all(np.abs(r_samples.mean(axis=0) - rho) <= 4 * r_se)


def test_noise_free_tau_equals_rho():
    X = all_inputs(4)
    f = TargetFunction.parity(4)
    truth = f.evaluate_rows(X.array)
    idx = neighborhoods(X, 5)
    t = estimate_tau_all(X, truth, 5, idx)
    assert np.allclose(t, truth[idx].mean(axis=1))


def test_training_error_k1_duplicate_free():
    X = all_inputs(4)
    y = np.random.default_rng(1).integers(0, 2, X.n, dtype=np.uint8)
    assert estimate_training_error(X, y, VotingConfig(k=1)) == 0


def test_training_error_k1_duplicates():
    X = BitMatrix([[0, 0], [0, 0], [1, 1]])
    assert estimate_training_error(X, [1, 1, 0], VotingConfig(k=1)) == 0
    # conflicting duplicates cannot both be reproduced
    assert estimate_training_error(X, [1, 0, 0], VotingConfig(k=1)) > 0


def test_training_error_global_vote():
    X = all_inputs(3)
    y = np.array([1, 0, 0, 0, 1, 0, 0, 1], dtype=np.uint8)  # majority 0
    err = estimate_training_error(X, y, VotingConfig(k=X.n, t=0.5))
    assert err == int(y.sum())


def test_training_error_constant_noise_free():
    X = all_inputs(3)
    for k in (1, 3, 5):
        assert estimate_training_error(X, [0] * 8, VotingConfig(k=k)) == 0


def test_noise_heuristic_on_smooth_target():
    X = all_inputs(6)
    f = TargetFunction.constant(6, 0)
    truth = f.evaluate_rows(X.array)
    p = 0.15
    y = draw_output_batch(truth, p, 1, seed=5)[0]
    est = estimate_noise_heuristic(X, y, k=3)
    assert 0.0 <= est <= 0.4  # coarse: a heuristic, not an estimator


def test_profiles_round_half_away_from_zero():
    X = all_inputs(2)
    est = estimate_set(X, [0, 0, 0, 0], p=0.2, k=1)
    profiles = profiles_from_estimates(est)
    assert all(pr.s == 0 and pr.k == 1 for pr in profiles)
    # rho_hat = 0.5 with k = 3 rounds 1.5 up to 2
    est2 = est.__class__(
        t=np.array([0.5]), r_raw=np.array([0.5]),
        r_clamped=np.array([0.5]), p=0.2, k=3,
    )
    assert profiles_from_estimates(est2)[0].s == 2


def test_estimates_csv():
    X = all_inputs(2)
    est = estimate_set(X, [0, 1, 1, 0], p=0.1, k=3)
    buf = io.StringIO()
    write_estimates_csv(est, buf, comments=["k=3"])
    lines = buf.getvalue().splitlines()
    assert lines[0] == "# k=3"
    assert lines[1] == "i,t_i,r_i_raw,r_i_clamped,tau_i_hat"
    assert len(lines) == 2 + X.n
