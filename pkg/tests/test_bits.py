import numpy as np
import pytest
from hypothesis import given, strategies as st

from votestab.bits import (
    BitMatrix,
    BitVector,
    hamming_distance,
    hamming_length,
    negate,
    xor,
)
from votestab.exceptions import DimensionError

bitlists = st.lists(st.integers(0, 1), max_size=64)


def test_xor_identity():
    assert xor([1, 0, 1], [0, 0, 0]) == BitVector([1, 0, 1])


def test_xor_self_annihilation():
    assert xor([1, 0, 1], [1, 0, 1]) == BitVector([0, 0, 0])


def test_xor_negation():
    assert xor([1, 0, 1], [1, 1, 1]) == BitVector([0, 1, 0])


def test_xor_length_mismatch():
    with pytest.raises(DimensionError):
        xor([1, 0], [1, 0, 1])


def test_hamming_length_examples():
    assert hamming_length([0, 0, 0]) == 0
    assert hamming_length([1, 1, 1]) == 3
    assert hamming_length([1, 0, 1, 0]) == 2


def test_negate_examples():
    assert negate([0, 1]) == BitVector([1, 0])
    assert negate([]) == BitVector([])


def test_xor_empty():
    assert xor([], []) == BitVector([])


def test_rejects_non_bits():
    with pytest.raises(ValueError):
        BitVector([0, 2])


@given(bitlists)
def test_negate_involution(a):
    assert negate(negate(a)) == BitVector(a)


@given(st.integers(0, 48).flatmap(
    lambda n: st.tuples(*[st.lists(st.integers(0, 1), min_size=n, max_size=n)] * 3)
))
def test_xor_laws(triple):
    a, b, c = triple
    zeros = [0] * len(a)
    ones = [1] * len(a)
    assert xor(a, zeros) == BitVector(a)                      # identity
    assert xor(a, ones) == negate(a)                          # negation
    assert xor(a, b) == xor(b, a)                             # commutative
    assert xor(a, a) == BitVector(zeros)                      # self-inverse
    assert xor(a, negate(a)) == BitVector(ones)
    assert xor(a, xor(b, c)) == xor(xor(a, b), c)             # associative


@given(bitlists.flatmap(
    lambda a: st.tuples(
        st.just(a), st.lists(st.integers(0, 1), min_size=len(a), max_size=len(a))
    )
))
def test_hamming_counts_differences(pair):
    a, b = pair
    assert hamming_distance(a, b) == sum(x != y for x, y in zip(a, b))


def test_matrix_row_column_access():
    m = BitMatrix([[1, 0, 1], [0, 1, 1]])
    assert m.n == 2 and m.r == 3
    assert m.row(0) == BitVector([1, 0, 1])
    assert m.column(2) == BitVector([1, 1])


def test_matrix_rejects_ragged_and_empty():
    with pytest.raises(Exception):
        BitMatrix([[1, 0], [1]])
    with pytest.raises(DimensionError):
        BitMatrix(np.zeros((0, 3), dtype=np.uint8))
