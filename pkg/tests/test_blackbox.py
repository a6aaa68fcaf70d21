import io
import math

import numpy as np
import pytest

from votestab import blackbox
from votestab.bits import BitMatrix, BitVector
from votestab.blackbox import (
    NoiseSpec,
    TargetFunction,
    all_inputs,
    draw_experiment,
    evaluate,
    read_dataset,
    repeat_input_bound,
    uniform_inputs,
    write_dataset,
)
from votestab.exceptions import ConfigError, DomainError


def test_evaluate_parity():
    f = TargetFunction.parity(2)
    X = BitMatrix([[0, 0], [0, 1], [1, 1]])
    assert evaluate(f, X) == BitVector([0, 1, 0])


def test_evaluate_constant_zero():
    f = TargetFunction.constant(3, 0)
    X = uniform_inputs(3, 20, seed=1)
    assert evaluate(f, X) == BitVector([0] * 20)


def test_evaluate_projection():
    f = TargetFunction.projection(2, 1)
    X = BitMatrix([[1, 0], [0, 1]])
    # attribute 1 is the second column
    assert evaluate(f, X) == BitVector([0, 1])


def test_evaluate_wrong_arity():
    f = TargetFunction.parity(3)
    with pytest.raises(DomainError):
        evaluate(f, BitMatrix([[0, 1]]))


def test_sparse_table_outside_support():
    f = TargetFunction(25, {0: 1, 1: 0})
    assert f([0] * 25) == 1
    with pytest.raises(DomainError):
        f([1] * 25)


def test_draw_no_noise():
    f = TargetFunction.majority(3)
    X = all_inputs(3)
    exp = draw_experiment(f, X, NoiseSpec(p=0.0, seed=9))
    assert exp.y1 == exp.truth and exp.y2 == exp.truth


def test_draw_certain_negation():
    f = TargetFunction.majority(3)
    X = all_inputs(3)
    exp = draw_experiment(f, X, NoiseSpec(p=1.0, seed=9))
    flipped = np.bitwise_xor(exp.truth.bits, 1)
    assert np.array_equal(exp.y1.bits, flipped)
    assert np.array_equal(exp.y2.bits, flipped)


def test_draw_noise_rate_large_n():
    n = 100_000
    f = TargetFunction.constant(4, 0)
    X = uniform_inputs(4, n, seed=2)
    exp = draw_experiment(f, X, NoiseSpec(p=0.2, seed=3))
    rate = int(np.count_nonzero(exp.y1.bits)) / n
    sigma = math.sqrt(0.2 * 0.8 / n)
    assert abs(rate - 0.2) <= 3 * sigma


def test_draw_determinism_and_independence():
    f = TargetFunction.parity(4)
    X = all_inputs(4)
    a = draw_experiment(f, X, NoiseSpec(p=0.3, seed=11))
    b = draw_experiment(f, X, NoiseSpec(p=0.3, seed=11))
    c = draw_experiment(f, X, NoiseSpec(p=0.3, seed=12))
    assert a.y1 == b.y1 and a.y2 == b.y2
    assert a.y1 != c.y1 or a.y2 != c.y2


def test_repeat_input_bound_values():
    assert repeat_input_bound(2, 4) == pytest.approx(0.31640625, abs=1e-15)
    assert repeat_input_bound(5, 0) == 1.0
    assert repeat_input_bound(1, 1) == 0.5
    with pytest.raises(ConfigError):
        repeat_input_bound(0, 4)


def test_noise_spec_range():
    with pytest.raises(ConfigError):
        NoiseSpec(p=1.5)


def test_family_lookup():
    assert blackbox.family("parity", 3)([1, 1, 0]) == 0
    assert blackbox.family("random", 4, seed=7)([0] * 4) in (0, 1)
    with pytest.raises(ConfigError):
        blackbox.family("nope", 3)


def test_dataset_roundtrip():
    f = TargetFunction.parity(3)
    X = all_inputs(3)
    exp = draw_experiment(f, X, NoiseSpec(p=0.2, seed=4))
    buf = io.StringIO()
    write_dataset(buf, X, exp.y1, comments=["seed=4"])
    text = buf.getvalue()
    assert text.startswith("# seed=4\n# r=3 n=8\n")
    X2, y2 = read_dataset(io.StringIO(text))
    assert X2 == X and y2 == exp.y1


def test_read_dataset_empty():
    with pytest.raises(ConfigError):
        read_dataset(io.StringIO("# r=3 n=0\n"))
