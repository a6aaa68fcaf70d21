"""The noisy data source: y = f(v) xor z with Bernoulli(p) label noise.

Randomness comes from numpy's counter-based Philox generator so that every
experiment is replayable from a single 64-bit seed, and parallel trials can
use disjoint spawned streams.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .bits import BitMatrix, BitVector, as_bit_array
from .exceptions import ConfigError, DomainError

DENSE_TABLE_MAX_ARITY = 20


def make_rng(seed: int) -> np.random.Generator:
    """Counter-based generator for a given seed."""
    return np.random.Generator(np.random.Philox(key=seed))


def spawn_seeds(seed: int, count: int) -> list[int]:
    """Derive `count` independent child seeds from one root seed."""
    children = np.random.SeedSequence(seed).spawn(count)
    return [int(c.generate_state(1, np.uint64)[0]) for c in children]


class TargetFunction:
    """Deterministic component f: {0,1}^r -> {0,1}, stored as a truth table.

    Dense array table for r <= 20; sparse dict above that (evaluation outside
    the stored support raises DomainError).
    """

    def __init__(self, arity: int, table):
        if arity < 1:
            raise ConfigError("arity must be >= 1")
        self.arity = arity
        if isinstance(table, dict):
            self._dense = None
            self._sparse = {int(k): int(v) for k, v in table.items()}
        else:
            t = np.asarray(table, dtype=np.uint8)
            if t.shape != (2**arity,):
                raise ConfigError(
                    f"dense table must have 2^{arity} entries, got {t.shape}"
                )
            self._dense = t
            self._sparse = None

    @staticmethod
    def _index(rows: np.ndarray) -> np.ndarray:
        # row bits -> integer index, bit 0 = least significant
        r = rows.shape[-1]
        weights = (1 << np.arange(r)).astype(np.int64)
        return rows.astype(np.int64) @ weights

    def __call__(self, v) -> int:
        return int(self.evaluate_rows(as_bit_array(v)[None, :])[0])

    def evaluate_rows(self, rows: np.ndarray) -> np.ndarray:
        if rows.shape[1] != self.arity:
            raise DomainError(
                f"rows have {rows.shape[1]} attributes, f expects {self.arity}"
            )
        idx = self._index(rows)
        if self._dense is not None:
            return self._dense[idx]
        out = np.empty(len(idx), dtype=np.uint8)
        for pos, i in enumerate(idx):
            if int(i) not in self._sparse:
                raise DomainError(f"input index {int(i)} outside f's support")
            out[pos] = self._sparse[int(i)]
        return out

    # -- built-in families ------------------------------------------------

    @classmethod
    def constant(cls, arity: int, value: int = 0) -> "TargetFunction":
        return cls(arity, np.full(2**arity, value, dtype=np.uint8))

    @classmethod
    def projection(cls, arity: int, attribute: int) -> "TargetFunction":
        if not 0 <= attribute < arity:
            raise ConfigError("projection attribute out of range")
        idx = np.arange(2**arity)
        return cls(arity, ((idx >> attribute) & 1).astype(np.uint8))

    @classmethod
    def parity(cls, arity: int) -> "TargetFunction":
        idx = np.arange(2**arity)
        bits = (idx[:, None] >> np.arange(arity)) & 1
        return cls(arity, (bits.sum(axis=1) % 2).astype(np.uint8))

    @classmethod
    def majority(cls, arity: int) -> "TargetFunction":
        idx = np.arange(2**arity)
        bits = (idx[:, None] >> np.arange(arity)) & 1
        return cls(arity, (bits.sum(axis=1) * 2 > arity).astype(np.uint8))

    @classmethod
    def random_table(cls, arity: int, seed: int) -> "TargetFunction":
        rng = make_rng(seed)
        return cls(arity, rng.integers(0, 2, size=2**arity, dtype=np.uint8))


FAMILIES = {
    "constant0": lambda r: TargetFunction.constant(r, 0),
    "constant1": lambda r: TargetFunction.constant(r, 1),
    "projection0": lambda r: TargetFunction.projection(r, 0),
    "parity": TargetFunction.parity,
    "majority": TargetFunction.majority,
}


def family(name: str, arity: int, seed: int = 0) -> TargetFunction:
    """Look up a built-in target family by name ('random' uses the seed)."""
    if name == "random":
        return TargetFunction.random_table(arity, seed)
    if name not in FAMILIES:
        raise ConfigError(f"unknown target family {name!r}")
    return FAMILIES[name](arity)


@dataclass(frozen=True)
class NoiseSpec:
    p: float
    seed: int = 0

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ConfigError(f"noise rate p={self.p} outside [0, 1]")


@dataclass(frozen=True)
class Experiment:
    """A paired training/testing draw over fixed inputs X."""

    X: BitMatrix
    y1: BitVector
    y2: BitVector
    truth: BitVector
    p: float
    seed: int = 0


def evaluate(f: TargetFunction, X: BitMatrix) -> BitVector:
    """Apply f to every row of X."""
    return BitVector(f.evaluate_rows(X.array))


def bernoulli_matrix(
    p: float, shape, rng: np.random.Generator
) -> np.ndarray:
    """Matrix of independent Bernoulli(p) bits."""
    return (rng.random(shape) < p).astype(np.uint8)


def draw_experiment(
    f: TargetFunction, X: BitMatrix, noise: NoiseSpec
) -> Experiment:
    """Draw independent training and testing outputs over the same inputs."""
    truth = f.evaluate_rows(X.array)
    rng = make_rng(noise.seed)
    z1 = bernoulli_matrix(noise.p, truth.shape, rng)
    z2 = bernoulli_matrix(noise.p, truth.shape, rng)
    return Experiment(
        X=X,
        y1=BitVector(np.bitwise_xor(truth, z1)),
        y2=BitVector(np.bitwise_xor(truth, z2)),
        truth=BitVector(truth),
        p=noise.p,
        seed=noise.seed,
    )


def draw_output_batch(
    truth: np.ndarray, p: float, trials: int, seed: int
) -> np.ndarray:
    """(trials, n) matrix of noisy outputs for Monte Carlo runs."""
    rng = make_rng(seed)
    z = bernoulli_matrix(p, (trials, truth.size), rng)
    return np.bitwise_xor(truth[None, :], z)


def repeat_input_bound(r: int, n: int) -> float:
    """Upper bound on the chance a fresh input matches no training row."""
    if r < 1:
        raise ConfigError("r must be >= 1")
    if n < 0:
        raise ConfigError("n must be >= 0")
    return (1.0 - 2.0**-r) ** n


def uniform_inputs(r: int, n: int, seed: int) -> BitMatrix:
    """n rows drawn i.i.d. uniform over {0,1}^r."""
    rng = make_rng(seed)
    return BitMatrix(rng.integers(0, 2, size=(n, r), dtype=np.uint8))


def all_inputs(r: int) -> BitMatrix:
    """All 2^r inputs as rows, in index order."""
    idx = np.arange(2**r)
    return BitMatrix(((idx[:, None] >> np.arange(r)) & 1).astype(np.uint8))


# -- dataset files ---------------------------------------------------------


def write_dataset(
    path_or_file, X: BitMatrix, y: BitVector, comments: Optional[list[str]] = None
) -> None:
    """Write a dataset as CSV rows of r input bits plus the output bit."""
    close = False
    if isinstance(path_or_file, (str, bytes)):
        fh = open(path_or_file, "w")
        close = True
    else:
        fh = path_or_file
    try:
        for line in comments or []:
            fh.write(f"# {line}\n")
        fh.write(f"# r={X.r} n={X.n}\n")
        yb = y.bits
        for i in range(X.n):
            fh.write(",".join(str(int(b)) for b in X.array[i]) + f",{int(yb[i])}\n")
    finally:
        if close:
            fh.close()


def read_dataset(path_or_file) -> tuple[BitMatrix, BitVector]:
    """Read a dataset written by write_dataset (header comments optional)."""
    if isinstance(path_or_file, (str, bytes)):
        with open(path_or_file) as fh:
            text = fh.read()
    else:
        text = path_or_file.read()
    rows = []
    for line in io.StringIO(text):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        rows.append([int(tok) for tok in line.split(",")])
    if not rows:
        raise ConfigError("dataset file contains no data rows")
    a = np.asarray(rows, dtype=np.uint8)
    return BitMatrix(a[:, :-1]), BitVector(a[:, -1])
