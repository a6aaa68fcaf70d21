"""Error decomposition: cross-validation error, training error, instability.

Observed counts come from a single paired draw; the closed forms give the
expectations for the oracle and memorizer reference models, plus the bound
and the independent-combination formula that tie the three errors together.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .bits import as_bit_array
from .exceptions import ConfigError, DimensionError


@dataclass(frozen=True)
class ErrorDecomposition:
    """Observed error counts for one paired train/test draw."""

    e_c: int
    e_t: int
    e_s: int
    n: int

    @property
    def p_c(self) -> float:
        return self.e_c / self.n

    @property
    def p_t(self) -> float:
        return self.e_t / self.n

    @property
    def p_s(self) -> float:
        return self.e_s / self.n


@dataclass(frozen=True)
class ExpectedErrors:
    """Expected error counts E||e_c||, E||e_t||, E||e_s|| for a model."""

    e_c: float
    e_t: float
    e_s: float
    n: int


def observed_errors(pred1, pred2, y1, y2) -> ErrorDecomposition:
    """Counts from predictions trained on y1 and on y2 over the same inputs.

    e_c = ||pred1 xor y2||   (cross-validation)
    e_t = ||pred1 xor y1||   (training)
    e_s = ||pred1 xor pred2||(instability)
    """
    p1, p2 = as_bit_array(pred1), as_bit_array(pred2)
    a1, a2 = as_bit_array(y1), as_bit_array(y2)
    n = a1.size
    if not (p1.size == p2.size == a2.size == n):
        raise DimensionError("all four vectors must have the same length")
    return ErrorDecomposition(
        e_c=int(np.count_nonzero(p1 != a2)),
        e_t=int(np.count_nonzero(p1 != a1)),
        e_s=int(np.count_nonzero(p1 != p2)),
        n=n,
    )


def bound_theorem2(expected_e_t: float, expected_e_s: float) -> float:
    """Upper bound on E||e_c||: training error plus instability."""
    if expected_e_t < 0 or expected_e_s < 0:
        raise ConfigError("expected error counts must be >= 0")
    return expected_e_t + expected_e_s


def combine_theorem3(expected_e_t: float, expected_e_s: float, n: int) -> float:
    """E||e_c|| when training error and instability are independent."""
    if n <= 0:
        raise ConfigError("n must be positive")
    return expected_e_t + expected_e_s - (2.0 / n) * expected_e_t * expected_e_s


def expected_rates_malpha(p: float, n: int) -> ExpectedErrors:
    """Oracle model: perfectly stable, errs only on unpredictable noise."""
    if not 0.0 <= p <= 1.0:
        raise ConfigError("p outside [0, 1]")
    rate = min(p, 1.0 - p)
    return ExpectedErrors(e_c=n * rate, e_t=n * rate, e_s=0.0, n=n)


def expected_rates_mbeta(p: float, n: int) -> ExpectedErrors:
    """Memorizer model: zero training error, error twice the noise flip rate."""
    if not 0.0 <= p <= 1.0:
        raise ConfigError("p outside [0, 1]")
    val = 2.0 * n * p * (1.0 - p)
    return ExpectedErrors(e_c=val, e_t=0.0, e_s=val, n=n)


def p_alpha(p: float) -> float:
    """Per-row cross-validation error rate of the oracle."""
    return min(p, 1.0 - p)


def p_beta(p: float) -> float:
    """Per-row cross-validation error rate of the memorizer."""
    return 2.0 * p - 2.0 * p * p


def check_theorem6(p: float) -> tuple[float, float]:
    """Return (p_alpha, p_beta) and assert p_beta = 2 p_alpha - 2 p_alpha^2."""
    pa, pb = p_alpha(p), p_beta(p)
    assert abs(pb - (2.0 * pa - 2.0 * pa * pa)) < 1e-15
    return pa, pb


REPORT_COLUMNS = [
    "model", "p", "n", "k", "t", "E_ec", "E_et", "E_es", "source", "stderr",
]


def write_error_report(rows: list[dict], path_or_file, comments=None) -> None:
    """Emit decomposition rows as CSV (source is one of closed_form,
    enumeration, montecarlo)."""
    close = False
    if isinstance(path_or_file, (str, bytes)):
        fh = open(path_or_file, "w", newline="")
        close = True
    else:
        fh = path_or_file
    try:
        for line in comments or []:
            fh.write(f"# {line}\n")
        writer = csv.DictWriter(fh, fieldnames=REPORT_COLUMNS)
        writer.writeheader()
        for row in rows:
            writer.writerow({col: row.get(col, "") for col in REPORT_COLUMNS})
    finally:
        if close:
            fh.close()
