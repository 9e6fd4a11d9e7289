import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from orlicz_lorentz.extended import INF, div, ext, is_inf, mul, power

nonneg = st.floats(min_value=0.0, max_value=1e150, allow_nan=False) | st.just(INF)


def test_conventions():
    assert mul(0.0, INF) == 0.0
    assert mul(INF, 0.0) == 0.0
    assert div(1.0, INF) == 0.0
    assert div(3.0, 0.0) == INF
    assert div(0.0, 0.0) == 0.0
    assert power(0.0, -1.0) == INF
    assert power(INF, -2.0) == 0.0


def test_ext_parses_and_rejects():
    assert ext("inf") == INF
    assert ext(2) == 2.0
    for bad in (-1.0, float("nan"), "-3"):
        with pytest.raises(ValueError):
            ext(bad)
    assert is_inf(INF) and not is_inf(1e308)


@given(nonneg, nonneg)
def test_mul_div_total(a, b):
    for v in (mul(a, b), div(a, b)):
        assert not math.isnan(float(v))
        assert float(v) >= 0


def test_vectorized():
    a = np.array([0.0, 1.0, INF])
    b = np.array([INF, 0.0, 2.0])
    assert list(mul(a, b)) == [0.0, 0.0, INF]
    assert list(div(a, b)) == [0.0, INF, INF]
