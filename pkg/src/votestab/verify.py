"""The theorem battery behind the `verify` command.

Each check validates one theorem by the strongest available route: exact
closed forms where the claim is algebraic, exhaustive enumeration where the
state space is small, and seeded Monte Carlo with 3-sigma tolerances where
sampling is required. Tolerances scale with the standard error, so an
underpowered run widens its bands instead of flaking.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from . import datasets
from .blackbox import (
    TargetFunction,
    all_inputs,
    bernoulli_matrix,
    draw_output_batch,
    make_rng,
    repeat_input_bound,
    spawn_seeds,
)
from .decomposition import combine_theorem3, p_alpha, p_beta
from .exceptions import ConfigError
from .estimators import estimate_rho_i
from .knn import neighborhoods, predict_rows_mk_batch
from .stability import (
    best_case_Pk,
    enumerate_vote_prob,
    limit_tau,
    limit_tau_i,
    theorem15_instability,
    vote_one_prob,
    worst_case_Pk,
)

# fault-injection modes for sanity-checking the battery itself
FAULT_EXCLUDE_SELF = "exclude_self"
FAULTS = (FAULT_EXCLUDE_SELF,)


@dataclass(frozen=True)
class CheckResult:
    theorem: str
    method: str  # closed_form | enumeration | montecarlo
    statistic: str
    passed: bool


@dataclass
class VerifyConfig:
    trials: int = 10_000
    seed: int = 0
    fault: Optional[str] = None


def _mc_mean_and_se(samples: np.ndarray) -> tuple[float, float]:
    m = float(samples.mean())
    se = float(samples.std(ddof=1) / math.sqrt(samples.size)) if samples.size > 1 else 0.0
    return m, se


def _within(label: str, observed: float, expected: float, se: float,
            sigmas: float = 3.0) -> tuple[str, bool]:
    slack = sigmas * max(se, 1e-300)
    ok = abs(observed - expected) <= slack
    return (
        f"{label}: observed {observed:.6g}, expected {expected:.6g} "
        f"(+/- {slack:.2g})",
        ok,
    )


def _family_sigmas(m: int, base: float = 3.0) -> float:
    """Sigma multiplier for m simultaneous checks with the same family-wise
    false-alarm rate as a single base-sigma check (Bonferroni)."""
    from scipy.stats import norm as _norm

    return float(_norm.isf(_norm.sf(base) / m))


def _mk_errors(neighbor_idx, Y1, Y2, t=0.5):
    P1 = predict_rows_mk_batch(neighbor_idx, Y1, t)
    P2 = predict_rows_mk_batch(neighbor_idx, Y2, t)
    e_c = np.count_nonzero(P1 != Y2, axis=1)
    e_t = np.count_nonzero(P1 != Y1, axis=1)
    e_s = np.count_nonzero(P1 != P2, axis=1)
    return e_c, e_t, e_s


def check_theorem1(cfg: VerifyConfig) -> CheckResult:
    """Repeat-input probability equals its bound under the uniform D."""
    rng = make_rng(spawn_seeds(cfg.seed, 16)[0])
    parts, ok = [], True
    for r, n in [(2, 4), (3, 8), (4, 16)]:
        size = 2**r
        draws = rng.integers(0, size, size=(cfg.trials, n))
        query = rng.integers(0, size, size=cfg.trials)
        missed = ~(draws == query[:, None]).any(axis=1)
        bound = repeat_input_bound(r, n)
        est = float(missed.mean())
        se = math.sqrt(bound * (1 - bound) / cfg.trials)
        msg, good = _within(f"r={r},n={n}", est, bound, se)
        parts.append(msg)
        ok &= good
    return CheckResult("Theorem 1", "montecarlo", "; ".join(parts), ok)


def _parity_setup(cfg: VerifyConfig, r=6, k=3):
    X = all_inputs(r)
    f = TargetFunction.parity(r)
    truth = f.evaluate_rows(X.array)
    idx = neighborhoods(X, k, exclude_self=(cfg.fault == FAULT_EXCLUDE_SELF))
    return X, truth, idx


def check_theorem2(cfg: VerifyConfig) -> CheckResult:
    """Cross-validation error is bounded by training error plus instability."""
    seeds = spawn_seeds(cfg.seed, 2)
    _, truth, idx = _parity_setup(cfg, k=3)
    p = 0.2
    Y1 = draw_output_batch(truth, p, cfg.trials, seeds[0])
    Y2 = draw_output_batch(truth, p, cfg.trials, seeds[1])
    e_c, e_t, e_s = _mk_errors(idx, Y1, Y2)
    mc, se_c = _mc_mean_and_se(e_c.astype(float))
    mts, se_ts = _mc_mean_and_se((e_t + e_s).astype(float))
    slack = 3.0 * math.hypot(se_c, se_ts)
    ok = mc <= mts + slack
    return CheckResult(
        "Theorem 2", "montecarlo",
        f"m_3 parity: mean e_c {mc:.4g} <= e_t+e_s {mts:.4g} + {slack:.2g}",
        ok,
    )


def check_theorem3(cfg: VerifyConfig) -> CheckResult:
    """Independent error processes combine as p_t + p_s - 2 p_t p_s."""
    rng = make_rng(spawn_seeds(cfg.seed, 16)[2])
    n, p_t, p_s = 100, 0.2, 0.3
    et = bernoulli_matrix(p_t, (cfg.trials, n), rng)
    es = bernoulli_matrix(p_s, (cfg.trials, n), rng)
    counts = np.bitwise_xor(et, es).sum(axis=1).astype(float)
    mean, se = _mc_mean_and_se(counts)
    expected = combine_theorem3(n * p_t, n * p_s, n)
    msg, ok = _within(f"n={n},p_t={p_t},p_s={p_s}", mean, expected, se)
    return CheckResult("Theorem 3", "montecarlo", msg, ok)


def check_theorem4(cfg: VerifyConfig) -> CheckResult:
    """The oracle's cross-validation error is n*min(p, 1-p), instability 0."""
    seeds = spawn_seeds(cfg.seed, 16)
    _, truth, _ = _parity_setup(cfg)
    parts, ok = [], True
    for p in (0.2, 0.8):
        Y2 = draw_output_batch(truth, p, cfg.trials, seeds[3])
        pred = np.bitwise_xor(truth, 1) if p > 0.5 else truth
        e_c = np.count_nonzero(pred[None, :] != Y2, axis=1).astype(float)
        mean, se = _mc_mean_and_se(e_c)
        msg, good = _within(f"p={p}", mean, truth.size * min(p, 1 - p), se)
        parts.append(msg)
        ok &= good
    return CheckResult("Theorem 4", "montecarlo", "; ".join(parts), ok)


def check_theorem5(cfg: VerifyConfig) -> CheckResult:
    """The memorizer's error and instability are both 2np(1-p)."""
    seeds = spawn_seeds(cfg.seed, 16)
    _, truth, _ = _parity_setup(cfg)
    p = 0.2
    Y1 = draw_output_batch(truth, p, cfg.trials, seeds[4])
    Y2 = draw_output_batch(truth, p, cfg.trials, seeds[5])
    e_c = np.count_nonzero(Y1 != Y2, axis=1).astype(float)
    mean, se = _mc_mean_and_se(e_c)
    n = truth.size
    msg, ok = _within(f"p={p}", mean, 2 * n * p * (1 - p), se)
    return CheckResult("Theorem 5", "montecarlo", msg, ok)


def check_theorem6(cfg: VerifyConfig) -> CheckResult:
    """p_beta = 2 p_alpha - 2 p_alpha^2 exactly across the grid."""
    worst = 0.0
    for i in range(101):
        p = i / 100.0
        pa, pb = p_alpha(p), p_beta(p)
        worst = max(worst, abs(pb - (2 * pa - 2 * pa * pa)))
    ok = worst < 1e-15
    return CheckResult(
        "Theorem 6", "closed_form", f"max identity residual {worst:.2g}", ok
    )


def check_theorem7(cfg: VerifyConfig) -> CheckResult:
    """m_1 reproduces the training outputs on duplicate-free inputs."""
    seeds = spawn_seeds(cfg.seed, 16)
    X, truth, _ = _parity_setup(cfg)
    idx1 = neighborhoods(X, 1, exclude_self=(cfg.fault == FAULT_EXCLUDE_SELF))
    draws = min(cfg.trials, 200)
    Y = draw_output_batch(truth, 0.3, draws, seeds[6])
    pred = predict_rows_mk_batch(idx1, Y, 0.5)
    mismatches = int(np.count_nonzero(pred != Y))
    return CheckResult(
        "Theorem 7", "enumeration",
        f"{draws} draws, {mismatches} training-row mismatches", mismatches == 0,
    )


def _polynomial_check(name, fn, poly, k) -> tuple[str, bool]:
    worst = 0.0
    for p in np.linspace(0.05, 0.95, k + 1):
        worst = max(worst, abs(fn(p) - poly(p)))
    return f"{name} max residual {worst:.2g}", worst < 1e-12


def check_theorem8(cfg: VerifyConfig) -> CheckResult:
    """Best-case vote-flip polynomials and their enumeration oracle."""
    parts, ok = [], True
    msg, good = _polynomial_check(
        "P_3", lambda p: best_case_Pk(3, p), lambda p: 3 * p**2 - 2 * p**3, 3
    )
    parts.append(msg); ok &= good
    msg, good = _polynomial_check(
        "P_5", lambda p: best_case_Pk(5, p),
        lambda p: 6 * p**5 - 15 * p**4 + 10 * p**3, 5,
    )
    parts.append(msg); ok &= good
    worst = max(
        abs(best_case_Pk(k, p) - enumerate_vote_prob(k, 0, p))
        for k in (1, 3, 5, 7) for p in np.linspace(0, 1, 11)
    )
    parts.append(f"enumeration residual {worst:.2g}")
    ok &= worst < 1e-12
    return CheckResult("Theorem 8", "enumeration", "; ".join(parts), ok)


def check_theorem9(cfg: VerifyConfig) -> CheckResult:
    """Worst-case vote-flip polynomials and their enumeration oracle."""
    parts, ok = [], True
    msg, good = _polynomial_check(
        "P_3", lambda p: worst_case_Pk(3, p),
        lambda p: 2 * p - 3 * p**2 + 2 * p**3, 3,
    )
    parts.append(msg); ok &= good
    msg, good = _polynomial_check(
        "P_5", lambda p: worst_case_Pk(5, p),
        lambda p: 3 * p - 9 * p**2 + 16 * p**3 - 15 * p**4 + 6 * p**5, 5,
    )
    parts.append(msg); ok &= good
    worst = max(
        abs(worst_case_Pk(k, p) - enumerate_vote_prob(k, (k - 1) // 2, p))
        for k in (1, 3, 5, 7) for p in np.linspace(0, 1, 11)
    )
    parts.append(f"enumeration residual {worst:.2g}")
    ok &= worst < 1e-12
    return CheckResult("Theorem 9", "enumeration", "; ".join(parts), ok)


def check_theorem10(cfg: VerifyConfig) -> CheckResult:
    """Large-k majority voting is stable away from p = 0.5, p' = 0.5."""
    k = 201
    parts, ok = [], True
    for p, pp in [(0.1, 0.2), (0.2, 0.8), (0.3, 0.1)]:
        tau = limit_tau(p, pp)
        target = 1.0 if tau > 0.5 else 0.0
        got = vote_one_prob(k, round(pp * k), p, 0.5)
        good = abs(got - target) < 0.05
        parts.append(f"p={p},p'={pp}: P={got:.3g}->{target}")
        ok &= good
    return CheckResult("Theorem 10", "closed_form", "; ".join(parts), ok)


def check_theorem11(cfg: VerifyConfig) -> CheckResult:
    """General-threshold limit: stable unless t = tau."""
    k = 201
    parts, ok = [], True
    for p, pp, t in [(0.1, 0.3, 0.6), (0.1, 0.3, 0.2), (0.2, 0.5, 0.8)]:
        tau = limit_tau(p, pp)
        target = 1.0 if tau > t else 0.0
        got = vote_one_prob(k, round(pp * k), p, t)
        good = abs(got - target) < 0.05
        parts.append(f"tau={tau:.3g},t={t}: P={got:.3g}->{target}")
        ok &= good
    return CheckResult("Theorem 11", "closed_form", "; ".join(parts), ok)


def check_theorem12(cfg: VerifyConfig) -> CheckResult:
    """Per-instance limit: stable for v_i unless t is close to tau_i."""
    k = 201
    parts, ok = [], True
    for p, rho, t in [(0.1, 0.1, 0.5), (0.1, 0.9, 0.5), (0.2, 0.7, 0.4)]:
        tau = limit_tau_i(p, rho)
        target = 1.0 if tau > t else 0.0
        got = vote_one_prob(k, round(rho * k), p, t)
        good = abs(got - target) < 0.05
        parts.append(f"tau_i={tau:.3g},t={t}: P={got:.3g}->{target}")
        ok &= good
    return CheckResult("Theorem 12", "closed_form", "; ".join(parts), ok)


def _unbiasedness_setup(cfg: VerifyConfig, k: int):
    X = all_inputs(5)
    f = TargetFunction.majority(5)
    truth = f.evaluate_rows(X.array)
    idx = neighborhoods(X, k, exclude_self=(cfg.fault == FAULT_EXCLUDE_SELF))
    rho = truth[idx].mean(axis=1)
    return X, truth, idx, rho


def check_theorem13(cfg: VerifyConfig) -> CheckResult:
    """t_i is unbiased for tau_i."""
    seeds = spawn_seeds(cfg.seed, 16)
    _, truth, idx, rho = _unbiasedness_setup(cfg, k=3)
    p = 0.2
    Y = draw_output_batch(truth, p, cfg.trials, seeds[7])
    t_samples = Y[:, idx].mean(axis=2)
    tau = p + rho - 2 * p * rho
    means = t_samples.mean(axis=0)
    se = t_samples.std(axis=0, ddof=1) / math.sqrt(cfg.trials)
    sig = _family_sigmas(means.size)
    bad = int(np.count_nonzero(np.abs(means - tau) > sig * np.maximum(se, 1e-300)))
    worst = float(np.abs(means - tau).max())
    return CheckResult(
        "Theorem 13", "montecarlo",
        f"{bad}/{means.size} instances outside {sig:.2g} sigma "
        f"(max dev {worst:.3g})",
        bad == 0,
    )


def check_theorem14(cfg: VerifyConfig) -> CheckResult:
    """r_i is unbiased for rho_i (given p)."""
    seeds = spawn_seeds(cfg.seed, 16)
    _, truth, idx, rho = _unbiasedness_setup(cfg, k=3)
    p = 0.2
    Y = draw_output_batch(truth, p, cfg.trials, seeds[8])
    r_samples = estimate_rho_i(Y[:, idx].mean(axis=2), p)
    means = r_samples.mean(axis=0)
    se = r_samples.std(axis=0, ddof=1) / math.sqrt(cfg.trials)
    sig = _family_sigmas(means.size)
    bad = int(np.count_nonzero(np.abs(means - rho) > sig * np.maximum(se, 1e-300)))
    worst = float(np.abs(means - rho).max())
    return CheckResult(
        "Theorem 14", "montecarlo",
        f"{bad}/{means.size} instances outside {sig:.2g} sigma "
        f"(max dev {worst:.3g})",
        bad == 0,
    )


def check_theorem15(cfg: VerifyConfig) -> CheckResult:
    """Mixed half-balanced geometry matches the degree-6 instability curve."""
    seeds = spawn_seeds(cfg.seed, 16)
    X, truth = datasets.mixed_case_dataset(20)
    idx = neighborhoods(X, 3, exclude_self=(cfg.fault == FAULT_EXCLUDE_SELF))
    p = 0.2
    Y1 = draw_output_batch(truth, p, cfg.trials, seeds[9])
    Y2 = draw_output_batch(truth, p, cfg.trials, seeds[10])
    P1 = predict_rows_mk_batch(idx, Y1, 0.5)
    P2 = predict_rows_mk_batch(idx, Y2, 0.5)
    e_s = np.count_nonzero(P1 != P2, axis=1).astype(float)
    mean, se = _mc_mean_and_se(e_s)
    expected = theorem15_instability(X.n, p)
    msg, ok = _within(f"n={X.n},p={p}", mean, expected, se)
    return CheckResult("Theorem 15", "montecarlo", msg, ok)


ALL_CHECKS: list[Callable[[VerifyConfig], CheckResult]] = [
    check_theorem1, check_theorem2, check_theorem3, check_theorem4,
    check_theorem5, check_theorem6, check_theorem7, check_theorem8,
    check_theorem9, check_theorem10, check_theorem11, check_theorem12,
    check_theorem13, check_theorem14, check_theorem15,
]


def run_battery(cfg: VerifyConfig) -> list[CheckResult]:
    if cfg.fault is not None and cfg.fault not in FAULTS:
        raise ConfigError(f"unknown fault mode {cfg.fault!r}")
    return [check(cfg) for check in ALL_CHECKS]
