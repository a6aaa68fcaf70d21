"""Data-driven estimation of neighborhood quantities from a training set.

t_i is the observed frequency of 1-outputs in the neighborhood of row i; it
is an unbiased estimate of the instability threshold tau_i. Given the noise
rate p, r_i = (t_i - p) / (1 - 2p) is an unbiased estimate of rho_i, the
true 1-frequency of f over the neighborhood. The raw r_i can land outside
[0, 1]; both the raw and the clamped value are kept, because unbiasedness
holds for the raw value while profile construction needs a probability.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .bits import BitMatrix, as_bit_array
from .exceptions import ConfigError, SingularityError
from .knn import VotingConfig, neighborhoods, predict_rows_mk
from .stability import NeighborhoodProfile


@dataclass(frozen=True)
class EstimateSet:
    """Per-instance estimates for one (X, y, p, k) combination."""

    t: np.ndarray          # neighborhood 1-output frequencies
    r_raw: np.ndarray      # unbiased rho estimates, may leave [0, 1]
    r_clamped: np.ndarray  # r_raw clipped to [0, 1]
    p: float
    k: int

    @property
    def tau_hat(self) -> np.ndarray:
        return self.t


def estimate_tau_all(
    X: BitMatrix, y, k: int, neighbor_idx: np.ndarray | None = None
) -> np.ndarray:
    """t_i for every training row: mean output over its k nearest neighbors."""
    if neighbor_idx is None:
        neighbor_idx = neighborhoods(X, k)
    yb = as_bit_array(y)
    return yb[neighbor_idx].mean(axis=1)


def estimate_tau_i(X: BitMatrix, y, i: int, k: int) -> float:
    """t_i for a single row."""
    if not 0 <= i < X.n:
        raise ConfigError(f"row index {i} out of range for n={X.n}")
    return float(estimate_tau_all(X, y, k)[i])


def estimate_rho_i(t_i, p: float):
    """Raw rho estimate (t_i - p) / (1 - 2p); undefined at p = 0.5."""
    if abs(1.0 - 2.0 * p) < 1e-12:
        raise SingularityError(
            "p = 0.5 makes the noise hide f completely; rho is unrecoverable"
        )
    return (np.asarray(t_i, dtype=float) - p) / (1.0 - 2.0 * p)


def estimate_set(
    X: BitMatrix, y, p: float, k: int, neighbor_idx: np.ndarray | None = None
) -> EstimateSet:
    """All per-instance estimates for a dataset at a given k."""
    t = estimate_tau_all(X, y, k, neighbor_idx)
    r_raw = estimate_rho_i(t, p)
    return EstimateSet(
        t=t, r_raw=r_raw, r_clamped=np.clip(r_raw, 0.0, 1.0), p=p, k=k
    )


def estimate_p_prime(r_values) -> float:
    """Mean of the (clamped) rho estimates."""
    r = np.asarray(r_values, dtype=float)
    if r.size == 0:
        raise ConfigError("cannot average an empty estimate sequence")
    return float(r.mean())


def estimate_training_error(
    X: BitMatrix, y, cfg: VotingConfig, neighbor_idx: np.ndarray | None = None
) -> int:
    """||e_t||: disagreements between training-row votes and y itself."""
    pred = predict_rows_mk(X, y, cfg, neighbor_idx)
    return int(np.count_nonzero(pred != as_bit_array(y)))


def estimate_noise_heuristic(X: BitMatrix, y, k: int = 3) -> float:
    """Heuristic guess at p: median over rows of min(t_i, 1 - t_i).

    Assumes f is usually constant within a small neighborhood. This is a
    labeled heuristic, not an unbiased estimator; keep it out of any check
    that treats p as ground truth.
    """
    t = estimate_tau_all(X, y, k)
    return float(np.median(np.minimum(t, 1.0 - t)))


def profiles_from_estimates(est: EstimateSet) -> list[NeighborhoodProfile]:
    """Integer neighborhood profiles s_i = round(r_i * k), half away from zero."""
    s = np.floor(est.r_clamped * est.k + 0.5).astype(int)
    return [NeighborhoodProfile(k=est.k, s=int(si)) for si in s]


ESTIMATE_COLUMNS = ["i", "t_i", "r_i_raw", "r_i_clamped", "tau_i_hat"]


def write_estimates_csv(est: EstimateSet, path_or_file, comments=None) -> None:
    close = False
    if isinstance(path_or_file, (str, bytes)):
        fh = open(path_or_file, "w", newline="")
        close = True
    else:
        fh = path_or_file
    try:
        for line in comments or []:
            fh.write(f"# {line}\n")
        writer = csv.writer(fh)
        writer.writerow(ESTIMATE_COLUMNS)
        for i in range(est.t.size):
            writer.writerow(
                [i, repr(float(est.t[i])), repr(float(est.r_raw[i])),
                 repr(float(est.r_clamped[i])), repr(float(est.t[i]))]
            )
    finally:
        if close:
            fh.close()
