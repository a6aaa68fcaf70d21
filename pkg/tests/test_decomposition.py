import io

import numpy as np
import pytest

from votestab.decomposition import (
    ErrorDecomposition,
    bound_theorem2,
    check_theorem6,
    combine_theorem3,
    expected_rates_malpha,
    expected_rates_mbeta,
    observed_errors,
    write_error_report,
)
from votestab.exceptions import ConfigError, DimensionError


def test_observed_errors_memorizer():
    y1 = np.array([1, 0, 1, 1], dtype=np.uint8)
    y2 = np.array([1, 1, 0, 1], dtype=np.uint8)
    d = observed_errors(y1, y2, y1, y2)  # memorizer: pred_i = y_i
    assert d.e_t == 0
    assert d.e_c == d.e_s == 2


def test_observed_errors_stable_model():
    truth = np.array([0, 1, 0], dtype=np.uint8)
    y1 = np.array([0, 0, 0], dtype=np.uint8)
    y2 = np.array([1, 1, 0], dtype=np.uint8)
    d = observed_errors(truth, truth, y1, y2)  # oracle: both preds = f(X)
    assert d.e_s == 0


def test_observed_errors_identical_draws():
    y = np.array([1, 0, 1], dtype=np.uint8)
    pred = np.array([1, 1, 1], dtype=np.uint8)
    d = observed_errors(pred, pred, y, y)
    assert d.e_s == 0 and d.e_c == d.e_t == 1


def test_observed_errors_length_mismatch():
    with pytest.raises(DimensionError):
        observed_errors([1], [1], [1, 0], [1, 0])


def test_rates():
    d = ErrorDecomposition(e_c=3, e_t=1, e_s=2, n=10)
    assert d.p_c == 0.3 and d.p_t == 0.1 and d.p_s == 0.2


def test_bound_theorem2():
    assert bound_theorem2(0, 5) == 5
    # memorizer at p=0.2, n=100: bound equals the exact expectation
    beta = expected_rates_mbeta(0.2, 100)
    assert bound_theorem2(beta.e_t, beta.e_s) == pytest.approx(32.0)
    assert beta.e_c == pytest.approx(32.0)
    alpha = expected_rates_malpha(0.2, 100)
    assert bound_theorem2(alpha.e_t, alpha.e_s) == pytest.approx(20.0)
    assert alpha.e_c == pytest.approx(20.0)


def test_combine_theorem3():
    assert combine_theorem3(0, 7, 10) == 7
    assert combine_theorem3(50, 33, 100) == pytest.approx(50.0)  # p_t = 0.5
    assert combine_theorem3(20, 32, 100) == pytest.approx(39.2)
    with pytest.raises(ConfigError):
        combine_theorem3(1, 1, 0)


def test_expected_rates_malpha():
    assert expected_rates_malpha(0.0, 10).e_c == 0
    assert expected_rates_malpha(0.5, 10).e_c == 5
    assert expected_rates_malpha(0.8, 10).e_c == pytest.approx(2.0)
    assert expected_rates_malpha(0.3, 10).e_s == 0


def test_expected_rates_mbeta():
    assert expected_rates_mbeta(0.0, 10).e_c == 0
    assert expected_rates_mbeta(1.0, 10).e_c == 0
    assert expected_rates_mbeta(0.5, 10).e_c == 5
    assert expected_rates_mbeta(0.1, 100).e_c == pytest.approx(18.0)
    assert expected_rates_mbeta(0.3, 10).e_t == 0


def test_theorem6_examples():
    assert check_theorem6(0.5) == (0.5, 0.5)
    pa, pb = check_theorem6(0.9)
    assert pa == pytest.approx(0.1) and pb == pytest.approx(0.18)
    assert check_theorem6(0.0) == (0.0, 0.0)


def test_error_report_csv():
    buf = io.StringIO()
    write_error_report(
        [{"model": "m_beta", "p": 0.2, "n": 100, "E_ec": 32.0,
          "source": "closed_form", "stderr": 0.0}],
        buf,
        comments=["seed=0"],
    )
    lines = buf.getvalue().splitlines()
    assert lines[0] == "# seed=0"
    assert lines[1].startswith("model,p,n,k,t,E_ec,E_et,E_es,source,stderr")
    assert "m_beta,0.2,100,,,32.0,,,closed_form,0.0" in lines[2]
