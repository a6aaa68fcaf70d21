"""Instance-based models: similarity, k-nearest retrieval, threshold voting.

The reference models are also here: the oracle (which knows f and p) and the
memorizer (which returns its training output verbatim).

Conventions, fixed for determinism:
  * similarity = r - Hamming distance
  * neighbor ties break toward the lower row index
  * a vote that lands exactly on the threshold t*k predicts 0
  * when the query is a training row, the row itself is a candidate neighbor
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bits import BitMatrix, BitVector, as_bit_array
from .blackbox import TargetFunction
from .exceptions import ConfigError, DimensionError

_TIE_EPS = 1e-9


@dataclass(frozen=True)
class VotingConfig:
    k: int
    t: float = 0.5

    def __post_init__(self):
        if self.k < 1:
            raise ConfigError(f"k={self.k} must be >= 1")
        if not 0.0 < self.t < 1.0:
            raise ConfigError(f"threshold t={self.t} must satisfy 0 < t < 1")


@dataclass(frozen=True)
class Neighborhood:
    """k training-row indices ordered by non-increasing similarity."""

    indices: tuple[int, ...]
    similarities: tuple[int, ...]


def similarity(u1, u2) -> int:
    """r minus the Hamming distance; maximal exactly for identical vectors."""
    a, b = as_bit_array(u1), as_bit_array(u2)
    if a.size != b.size:
        raise DimensionError(f"length mismatch: {a.size} vs {b.size}")
    return int(a.size - np.count_nonzero(a != b))


def similarity_to_rows(X: BitMatrix, v) -> np.ndarray:
    """Similarity of v to every row of X."""
    vb = as_bit_array(v)
    if vb.size != X.r:
        raise DimensionError(f"query has {vb.size} attributes, X has {X.r}")
    return X.r - np.count_nonzero(X.array != vb[None, :], axis=1)


def _rank_by_similarity(sims: np.ndarray) -> np.ndarray:
    # stable sort on descending similarity keeps ascending index among ties
    return np.argsort(-sims, kind="stable")


def nearest(X: BitMatrix, v, k: int) -> Neighborhood:
    """The k rows of X most similar to v (ties toward lower index)."""
    if not 1 <= k <= X.n:
        raise ConfigError(f"k={k} must be in [1, n={X.n}]")
    sims = similarity_to_rows(X, v)
    order = _rank_by_similarity(sims)[:k]
    return Neighborhood(
        indices=tuple(int(i) for i in order),
        similarities=tuple(int(sims[i]) for i in order),
    )


def neighborhoods(X: BitMatrix, k: int, exclude_self: bool = False) -> np.ndarray:
    """(n, k) neighbor indices for every training row used as a query.

    exclude_self drops the query row from its own candidate list; it exists
    only for fault-injection sanity checks of the verification suite.
    """
    n = X.n
    if not 1 <= k <= (n - 1 if exclude_self else n):
        raise ConfigError(f"k={k} out of range for n={n}")
    a = X.array
    # n x n Hamming distances; fine for the n <= a few thousand used here
    dist = np.count_nonzero(a[:, None, :] != a[None, :, :], axis=2)
    sims = a.shape[1] - dist
    if exclude_self:
        np.fill_diagonal(sims, -1)
    order = np.argsort(-sims, axis=1, kind="stable")
    return order[:, :k]


def vote_counts_to_bits(counts: np.ndarray, k: int, t: float) -> np.ndarray:
    """Map vote sums to predictions: 1 iff the sum exceeds t*k (tie -> 0)."""
    thr = t * k
    nearest_int = round(thr)
    if abs(thr - nearest_int) < _TIE_EPS:
        thr = nearest_int  # an exact tie is reachable; counts == thr -> 0
    return (counts > thr).astype(np.uint8)


def predict_mk(X: BitMatrix, y: BitVector, v, cfg: VotingConfig) -> int:
    """Threshold vote over the k nearest neighbors of v."""
    hood = nearest(X, v, cfg.k)
    total = int(y.bits[list(hood.indices)].sum())
    return int(vote_counts_to_bits(np.array([total]), cfg.k, cfg.t)[0])


def predict_rows_mk(
    X: BitMatrix, y, cfg: VotingConfig, neighbor_idx: np.ndarray | None = None
) -> np.ndarray:
    """Predictions for every training row (the diagonal case m_k(X|X,y))."""
    if neighbor_idx is None:
        neighbor_idx = neighborhoods(X, cfg.k)
    yb = as_bit_array(y)
    counts = yb[neighbor_idx].sum(axis=1)
    return vote_counts_to_bits(counts, cfg.k, cfg.t)


def predict_rows_mk_batch(
    neighbor_idx: np.ndarray, Y: np.ndarray, t: float
) -> np.ndarray:
    """Batched training-row predictions for many output draws.

    Y has shape (trials, n); returns predictions of the same shape.
    """
    k = neighbor_idx.shape[1]
    counts = Y[:, neighbor_idx].sum(axis=2, dtype=np.int32)
    return vote_counts_to_bits(counts, k, t)


def predict_malpha(f: TargetFunction, p: float, v) -> int:
    """The oracle: f(v), negated when noise dominates (p > 0.5)."""
    value = f(v)
    return 1 - value if p > 0.5 else value


def malpha_rows(f: TargetFunction, X: BitMatrix, p: float) -> np.ndarray:
    """Oracle predictions for every row of X."""
    truth = f.evaluate_rows(X.array)
    return np.bitwise_xor(truth, 1) if p > 0.5 else truth


def predict_mbeta(y, i: int) -> int:
    """The memorizer: return the training output for row i verbatim."""
    yb = as_bit_array(y)
    if not 0 <= i < yb.size:
        raise IndexError(f"row index {i} out of range for n={yb.size}")
    return int(yb[i])
