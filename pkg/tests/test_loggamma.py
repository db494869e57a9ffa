import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hemap.errors import DomainError
from hemap.loggamma import log_factorial, log_gamma, log_gamma_vec


def test_unit_values_exact():
    assert log_gamma(1.0) == 0.0
    assert log_gamma(2.0) == 0.0


def test_half_integer():
    # Gamma(1/2) = sqrt(pi)
    assert log_gamma(0.5) == pytest.approx(0.5 * math.log(math.pi), abs=1e-13)


def test_factorial_value():
    # Gamma(11) = 10! = 3628800
    assert log_gamma(11.0) == pytest.approx(math.log(3628800), rel=1e-13)
    assert log_factorial(10) == pytest.approx(math.log(3628800), rel=1e-13)


def test_domain_error():
    with pytest.raises(DomainError):
        log_gamma(0.0)
    with pytest.raises(DomainError):
        log_gamma(-3.5)
    with pytest.raises(DomainError):
        log_gamma_vec(np.array([1.0, -1.0]))


@given(st.floats(min_value=1e-3, max_value=1e6))
def test_matches_stdlib(x):
    ours = log_gamma(x)
    ref = math.lgamma(x)
    assert abs(ours - ref) <= 1e-12 * max(1.0, abs(ref))


def test_scalar_vector_consistency():
    xs = np.array([0.3, 1.0, 2.5, 9.99, 10.0, 123.456, 5e4])
    vec = log_gamma_vec(xs)
    for x, v in zip(xs, vec):
        assert log_gamma(float(x)) == v
