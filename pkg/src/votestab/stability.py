"""Exact and asymptotic vote-flip probabilities.

The central quantity is the probability P that a vote over k noisy neighbor
outputs, s of which have true value 1, exceeds the threshold t*k. The flip
rate of a vote between two independent noise draws is then 2P(1-P), and the
expected instability of a dataset is the sum of per-instance flip rates.

P is computed exactly by convolving two binomial distributions (O(k^2) and
good to ~1e-12 for the k used here). The central-limit normal approximation
is exposed separately and never silently substituted for the exact value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np
from scipy.stats import binom, norm

from .exceptions import ConfigError

_TIE_EPS = 1e-9

KSize = Union[int, float]  # math.inf is the "k = infinity" sentinel


def _min_count_above(k: int, t: float) -> int:
    """Smallest integer vote sum strictly above t*k (tie counts as below)."""
    thr = t * k
    nearest_int = round(thr)
    if abs(thr - nearest_int) < _TIE_EPS:
        return nearest_int + 1
    return math.ceil(thr)


def _validate(k, s, p, t):
    if not (isinstance(k, (int, np.integer)) and k >= 1):
        raise ConfigError(f"k={k} must be a positive integer")
    if not 0 <= s <= k:
        raise ConfigError(f"s={s} must be in [0, k={k}]")
    if not 0.0 <= p <= 1.0:
        raise ConfigError(f"p={p} outside [0, 1]")
    if not 0.0 < t < 1.0:
        raise ConfigError(f"t={t} must satisfy 0 < t < 1")


def vote_one_prob(k: int, s: int, p: float, t: float = 0.5) -> float:
    """Exact P(vote sum > t*k) with s true-1 neighbors and noise rate p.

    The vote sum is B1 + B2 where B1 ~ Binomial(s, 1-p) counts surviving
    1-outputs and B2 ~ Binomial(k-s, p) counts flipped 0-outputs.
    """
    _validate(k, s, p, t)
    pmf1 = binom.pmf(np.arange(s + 1), s, 1.0 - p)
    pmf2 = binom.pmf(np.arange(k - s + 1), k - s, p)
    pmf = np.convolve(pmf1, pmf2)
    lo = _min_count_above(k, t)
    return float(pmf[lo:].sum()) if lo <= k else 0.0


def enumerate_vote_prob(k: int, s: int, p: float, t: float = 0.5) -> float:
    """Brute-force P over all 2^k noise vectors; oracle for vote_one_prob."""
    _validate(k, s, p, t)
    if k > 20:
        raise ConfigError("enumeration limited to k <= 20")
    masks = np.arange(2**k, dtype=np.uint32)
    z = ((masks[:, None] >> np.arange(k)) & 1).astype(np.uint8)
    truth = np.zeros(k, dtype=np.uint8)
    truth[:s] = 1
    y = np.bitwise_xor(truth[None, :], z)
    weight_log = np.where(z == 1, np.log(p) if p > 0 else -np.inf,
                          np.log1p(-p) if p < 1 else -np.inf)
    with np.errstate(invalid="ignore"):
        weights = np.exp(weight_log.sum(axis=1))
    weights = np.nan_to_num(weights)
    lo = _min_count_above(k, t)
    return float(weights[y.sum(axis=1) >= lo].sum())


def normal_approx_vote_prob(k: int, s: int, p: float, t: float = 0.5) -> float:
    """Central-limit approximation to vote_one_prob (no continuity correction)."""
    _validate(k, s, p, t)
    rho = s / k
    rate = p + rho - 2.0 * p * rho  # chance an individual output is 1
    mu = k * rate
    var = k * rate * (1.0 - rate)
    if var == 0.0:
        return 1.0 if mu > t * k else 0.0
    return float(norm.sf((t * k - mu) / math.sqrt(var)))


def flip_rate(P: float) -> float:
    """2P(1-P): chance two independent draws produce different votes."""
    return 2.0 * P * (1.0 - P)


def best_case_Pk(k: KSize, p: float) -> float:
    """P for a locally constant f (every neighbor has the same true value).

    k must be odd (majority voting), or math.inf for the limiting step.
    """
    if k == math.inf:
        if p < 0.5:
            return 0.0
        if p > 0.5:
            return 1.0
        return 0.5
    if k % 2 == 0:
        raise ConfigError("finite k must be odd for majority voting")
    return vote_one_prob(int(k), 0, p, 0.5)


def worst_case_Pk(k: KSize, p: float) -> float:
    """P for a maximally balanced neighborhood.

    Uses the s = (k-1)/2 branch of rho = 1/2 -/+ 1/(2k): P is then the
    chance the vote lands on the minority value, which is 0 at p = 0. The
    s = (k+1)/2 branch gives the mirror 1 - P; the flip rate 2P(1-P) is the
    same for both.
    """
    if k == math.inf:
        if p == 0.0:
            return 0.0
        if p == 1.0:
            return 1.0
        return 0.5
    if k % 2 == 0:
        raise ConfigError("finite k must be odd for majority voting")
    k = int(k)
    return vote_one_prob(k, (k - 1) // 2, p, 0.5)


def theorem15_instability(n: int, p: float) -> float:
    """Expected instability for k=3 when half the rows are balanced
    (rho in {1/3, 2/3}) and half are constant (rho in {0, 1})."""
    if n % 2 != 0:
        raise ConfigError("the mixed-geometry formula assumes even n")
    return n * (
        2 * p - 4 * p**2 + 12 * p**3 - 26 * p**4 + 24 * p**5 - 8 * p**6
    )


@dataclass(frozen=True)
class NeighborhoodProfile:
    """One instance's neighborhood: k neighbors, s of which have true f=1."""

    k: int
    s: int

    def __post_init__(self):
        if not 0 <= self.s <= self.k:
            raise ConfigError(f"s={self.s} outside [0, k={self.k}]")

    @property
    def rho(self) -> float:
        return self.s / self.k


@dataclass(frozen=True)
class StabilityReport:
    one_vote_probs: tuple[float, ...]
    flip_probs: tuple[float, ...]
    expected_instability: float
    case: str  # best | worst | intermediate


def _case_label(profiles: Sequence[NeighborhoodProfile]) -> str:
    if all(pr.s in (0, pr.k) for pr in profiles):
        return "best"
    if all(abs(2 * pr.s - pr.k) == 1 for pr in profiles):
        return "worst"
    return "intermediate"


def instability_from_profiles(
    profiles: Iterable[NeighborhoodProfile], p: float, t: float = 0.5
) -> StabilityReport:
    """Expected instability = sum over instances of 2 P_i (1 - P_i)."""
    profiles = list(profiles)
    probs = tuple(vote_one_prob(pr.k, pr.s, p, t) for pr in profiles)
    flips = tuple(flip_rate(P) for P in probs)
    return StabilityReport(
        one_vote_probs=probs,
        flip_probs=flips,
        expected_instability=float(sum(flips)),
        case=_case_label(profiles) if profiles else "best",
    )


def limit_tau(p: float, p_prime: float) -> float:
    """Threshold at which large-k voting is unstable for an average f."""
    return p + p_prime - 2.0 * p * p_prime


def limit_tau_i(p: float, rho_i: float) -> float:
    """Per-instance instability threshold in the large-k limit."""
    return p + rho_i - 2.0 * p * rho_i


STABLE = "stable"
UNSTABLE_BOUNDARY = "unstable-boundary"


def limit_stability_theorem10(
    p: float, p_prime: float, t: float = 0.5, tol: float = 1e-9
) -> str:
    """Large-k classification: unstable only on the boundary t = tau."""
    return UNSTABLE_BOUNDARY if abs(limit_tau(p, p_prime) - t) <= tol else STABLE


def classify_instance_limit(
    p: float, rho_i: float, t: float = 0.5, k: int | None = None,
    tol: float | None = None,
) -> str:
    """Per-instance large-k classification; default tolerance is the
    finite-k vote resolution 1/(2k)."""
    if tol is None:
        tol = 1.0 / (2.0 * k) if k else 1e-9
    return (
        UNSTABLE_BOUNDARY
        if abs(limit_tau_i(p, rho_i) - t) <= tol
        else STABLE
    )


def limit_flip_prob(p: float, rho_i: float, t: float = 0.5,
                    k: int | None = None) -> float:
    """Large-k per-instance flip probability: 0 when stable, 0.5 on the
    boundary (used when exact convolution is out of reach)."""
    if classify_instance_limit(p, rho_i, t, k) == UNSTABLE_BOUNDARY:
        return 0.5
    return 0.0
