"""Boolean vector and matrix algebra.

Vectors are stored as contiguous numpy uint8 arrays with values in {0, 1};
all operations are vectorized, which keeps Monte Carlo loops over vectors of
length ~10^6 cheap. Empty vectors are legal everywhere.
"""

from __future__ import annotations

from typing import Iterable, Union

import numpy as np

from .exceptions import DimensionError

BitsLike = Union["BitVector", np.ndarray, Iterable[int]]


def _coerce_bits(data) -> np.ndarray:
    a = np.asarray(data, dtype=np.uint8)
    if a.ndim != 1:
        raise DimensionError(f"expected a 1-d bit sequence, got shape {a.shape}")
    if a.size and a.max() > 1:
        raise ValueError("bit values must be 0 or 1")
    return a


class BitVector:
    """An immutable sequence of bits."""

    __slots__ = ("_bits",)

    def __init__(self, bits: BitsLike):
        if isinstance(bits, BitVector):
            self._bits = bits._bits
        else:
            self._bits = _coerce_bits(bits)
            self._bits.setflags(write=False)

    @property
    def bits(self) -> np.ndarray:
        return self._bits

    def __len__(self) -> int:
        return self._bits.size

    def __getitem__(self, i) -> int:
        return int(self._bits[i])

    def __iter__(self):
        return iter(int(b) for b in self._bits)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitVector):
            other = BitVector(other)
        return self._bits.shape == other._bits.shape and bool(
            np.all(self._bits == other._bits)
        )

    def __hash__(self):
        return hash(self._bits.tobytes())

    def __repr__(self) -> str:
        return f"BitVector({self._bits.tolist()})"


class BitMatrix:
    """n rows of equal-length BitVectors, stored as an n x r uint8 array."""

    __slots__ = ("_rows",)

    def __init__(self, rows):
        if isinstance(rows, BitMatrix):
            a = rows._rows
        else:
            a = np.asarray(
                [BitVector(r).bits if not isinstance(r, np.ndarray) else r for r in rows]
                if not isinstance(rows, np.ndarray)
                else rows,
                dtype=np.uint8,
            )
        if a.ndim != 2:
            raise DimensionError(f"expected a 2-d bit array, got shape {a.shape}")
        if a.shape[0] < 1 or a.shape[1] < 1:
            raise DimensionError("a BitMatrix needs at least one row and one column")
        if a.size and a.max() > 1:
            raise ValueError("bit values must be 0 or 1")
        self._rows = a
        self._rows.setflags(write=False)

    @property
    def array(self) -> np.ndarray:
        return self._rows

    @property
    def n(self) -> int:
        return self._rows.shape[0]

    @property
    def r(self) -> int:
        return self._rows.shape[1]

    def row(self, i: int) -> BitVector:
        return BitVector(self._rows[i])

    def column(self, j: int) -> BitVector:
        return BitVector(self._rows[:, j])

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self._rows.shape == other._rows.shape and bool(
            np.all(self._rows == other._rows)
        )

    def __hash__(self):
        return hash(self._rows.tobytes())

    def __repr__(self) -> str:
        return f"BitMatrix(n={self.n}, r={self.r})"


def as_bit_array(v: BitsLike) -> np.ndarray:
    """Return the raw uint8 array behind any bits-like value."""
    if isinstance(v, BitVector):
        return v.bits
    return _coerce_bits(v)


def xor(a: BitsLike, b: BitsLike) -> BitVector:
    """Elementwise exclusive-or of two equal-length bit vectors."""
    aa, bb = as_bit_array(a), as_bit_array(b)
    if aa.size != bb.size:
        raise DimensionError(f"length mismatch: {aa.size} vs {bb.size}")
    return BitVector(np.bitwise_xor(aa, bb))


def hamming_length(a: BitsLike) -> int:
    """Number of 1-bits in a vector (the length ||a||)."""
    return int(as_bit_array(a).sum())


def hamming_distance(a: BitsLike, b: BitsLike) -> int:
    """Number of positions where two vectors differ."""
    return hamming_length(xor(a, b))


def negate(a: BitsLike) -> BitVector:
    """Flip every bit (xor with the all-ones vector)."""
    return BitVector(np.bitwise_xor(as_bit_array(a), 1))
