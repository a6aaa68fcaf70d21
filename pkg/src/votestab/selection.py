"""Choosing k and t from training data alone.

For each candidate (k, t): the training error is measured directly, the
expected instability is built from estimated neighborhood profiles, and the
two are combined either as the safe upper bound (sum) or via the
independence formula. The pair minimizing the active estimate wins; ties go
to the smaller k, then the smaller t.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

from .bits import BitMatrix
from .decomposition import bound_theorem2, combine_theorem3
from .estimators import (
    estimate_set,
    estimate_training_error,
    profiles_from_estimates,
)
from .exceptions import ConfigError
from .knn import VotingConfig, neighborhoods
from .stability import instability_from_profiles, limit_flip_prob

RULE_BOUND = "theorem2_bound"
RULE_INDEPENDENT = "theorem3_independent"
RULES = (RULE_BOUND, RULE_INDEPENDENT)

# beyond this k the exact convolution is replaced by the large-k limit
EXACT_INSTABILITY_MAX_K = 10**4


def estimate_expected_instability(
    X: BitMatrix, y, p: float, cfg: VotingConfig,
    neighbor_idx=None, exact_max_k: int = EXACT_INSTABILITY_MAX_K,
) -> float:
    """Estimated E||e_s|| from neighborhood profiles built out of r_i."""
    if neighbor_idx is None:
        neighbor_idx = neighborhoods(X, cfg.k)
    est = estimate_set(X, y, p, cfg.k, neighbor_idx)
    if cfg.k <= exact_max_k:
        report = instability_from_profiles(
            profiles_from_estimates(est), p, cfg.t
        )
        return report.expected_instability
    return float(sum(
        limit_flip_prob(p, rho, cfg.t, cfg.k) for rho in est.r_clamped
    ))


@dataclass(frozen=True)
class GridCell:
    k: int
    t: float
    E_et_hat: float
    E_es_hat: float
    E_ec_bound: float
    E_ec_independent: float


@dataclass(frozen=True)
class SelectionResult:
    grid: tuple[GridCell, ...]
    chosen: tuple[int, float]
    rule: str

    def estimate(self, cell: GridCell) -> float:
        return (
            cell.E_ec_bound if self.rule == RULE_BOUND
            else cell.E_ec_independent
        )


def default_k_grid(n: int) -> list[int]:
    """Odd k from 1 up to min(25, n)."""
    return list(range(1, min(25, n) + 1, 2))


def select(
    X: BitMatrix, y, p: float,
    k_grid=None, t_grid=(0.5,), rule: str = RULE_INDEPENDENT,
) -> SelectionResult:
    """Evaluate the grid and pick the (k, t) minimizing estimated E||e_c||."""
    if rule not in RULES:
        raise ConfigError(f"unknown combination rule {rule!r}")
    if k_grid is None:
        k_grid = default_k_grid(X.n)
    k_grid, t_grid = list(k_grid), list(t_grid)
    if not k_grid or not t_grid:
        raise ConfigError("k and t grids must be nonempty")
    for k in k_grid:
        if k % 2 == 0 and 0.5 in t_grid:
            raise ConfigError(f"even k={k} is ill-defined for majority voting")

    cells = []
    for k in sorted(k_grid):
        neighbor_idx = neighborhoods(X, k)
        for t in sorted(t_grid):
            cfg = VotingConfig(k=k, t=t)
            e_t = float(estimate_training_error(X, y, cfg, neighbor_idx))
            e_s = estimate_expected_instability(X, y, p, cfg, neighbor_idx)
            cells.append(GridCell(
                k=k, t=t, E_et_hat=e_t, E_es_hat=e_s,
                E_ec_bound=bound_theorem2(e_t, e_s),
                E_ec_independent=combine_theorem3(e_t, e_s, X.n),
            ))

    key = (
        (lambda c: (c.E_ec_bound, c.k, c.t)) if rule == RULE_BOUND
        else (lambda c: (c.E_ec_independent, c.k, c.t))
    )
    best = min(cells, key=key)
    return SelectionResult(
        grid=tuple(cells), chosen=(best.k, best.t), rule=rule
    )


SELECTION_COLUMNS = [
    "k", "t", "E_et_hat", "E_es_hat", "E_ec_t2", "E_ec_t3", "chosen",
]


def write_selection_csv(result: SelectionResult, path_or_file,
                        comments=None) -> None:
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
        writer.writerow(SELECTION_COLUMNS)
        for cell in result.grid:
            writer.writerow([
                cell.k, cell.t, repr(cell.E_et_hat), repr(cell.E_es_hat),
                repr(cell.E_ec_bound), repr(cell.E_ec_independent),
                int((cell.k, cell.t) == result.chosen),
            ])
    finally:
        if close:
            fh.close()
