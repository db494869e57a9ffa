import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hemap import (
    CoeffStream,
    HarmonicMap,
    ScaledComplex,
    affine_combine,
    conjugate_map,
    derivative_stream,
    evaluate,
    f_rho_stream,
    jacobian,
    normalized_shifted_derivative,
)
from hemap.errors import (
    EmptyStreamError,
    EvaluationOverflowError,
    NormalizationError,
)
from helpers import exp_map, exp_stream, monomial, poly_map

finite_complex = st.complex_numbers(
    min_magnitude=1e-150, max_magnitude=1e150, allow_nan=False, allow_infinity=False
)


# -- ScaledComplex ----------------------------------------------------------


@given(finite_complex)
def test_round_trip_preserves_log_abs(z):
    sc = ScaledComplex.from_complex(z)
    back = ScaledComplex.from_complex(sc.to_complex())
    assert back.log_abs == pytest.approx(sc.log_abs, rel=1e-12, abs=1e-12)


def test_zero_is_canonical():
    assert ScaledComplex.from_complex(0j) == ScaledComplex.zero()
    assert ScaledComplex(-math.inf, 2.5).phase == 0.0
    assert ScaledComplex.zero().to_complex() == 0j


@given(finite_complex, finite_complex)
def test_multiplication_matches_complex(z1, z2):
    prod = ScaledComplex.from_complex(z1) * ScaledComplex.from_complex(z2)
    expect = ScaledComplex.from_complex(z1 * z2)
    assert prod.log_abs == pytest.approx(expect.log_abs, rel=1e-12, abs=1e-12)
    dphi = (prod.phase - expect.phase + math.pi) % (2 * math.pi) - math.pi
    assert abs(dphi) < 1e-9


def test_phase_stays_in_half_open_interval():
    sc = ScaledComplex(0.0, math.pi)
    assert sc.phase == math.pi
    sc2 = ScaledComplex(0.0, -math.pi)
    assert sc2.phase == math.pi
    sc3 = ScaledComplex(0.0, 3 * math.pi)
    assert sc3.phase == pytest.approx(math.pi)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        ScaledComplex.one() / ScaledComplex.zero()


# -- CoeffStream ------------------------------------------------------------


def test_coeff_deterministic():
    s = f_rho_stream(1.5)
    first = [s.coeff(n) for n in range(40)]
    second = [s.coeff(n) for n in range(40)]
    assert first == second


def test_reads_past_finite_end_are_zero():
    s = monomial(2)
    assert s.coeff(5).is_zero
    assert s.n_max == 2


# -- derivative_stream ------------------------------------------------------


def test_derivative_of_exponential_is_itself():
    s = exp_stream()
    d = derivative_stream(s, 1)
    for k in range(25):
        assert d.coeff(k).log_abs == pytest.approx(s.coeff(k).log_abs, abs=1e-12)
        assert d.coeff(k).phase == s.coeff(k).phase


def test_derivative_of_square():
    s = CoeffStream.from_complex_seq([0, 0, 1])
    d = derivative_stream(s, 1)
    assert d.coeff(0).is_zero
    assert d.coeff(1).to_complex() == pytest.approx(2.0)
    assert d.coeff(2).is_zero
    assert d.n_max == 1


def test_derivative_index0_matches_first_coefficient():
    # a_k = 2/(k+1)!: first derivative at index 0 equals 1 * a_1 = 1
    def fn(idx):
        log = math.log(2.0) - np.array([math.lgamma(k + 2.0) for k in idx])
        log[idx == 0] = -math.inf
        return log, np.zeros(idx.shape)

    s = CoeffStream.from_function(fn, None)
    d = derivative_stream(s, 1)
    assert d.coeff(0).to_complex() == pytest.approx(1.0, rel=1e-12)


def test_derivative_past_end_raises():
    with pytest.raises(EmptyStreamError):
        derivative_stream(monomial(2), 3)


@settings(max_examples=40, deadline=None)
@given(
    st.lists(finite_complex, min_size=12, max_size=16),
    st.integers(min_value=0, max_value=5),
    st.integers(min_value=0, max_value=5),
)
def test_derivative_composition(coeffs, m, n):
    s = CoeffStream.from_complex_seq(coeffs)
    once = derivative_stream(derivative_stream(s, m), n)
    direct = derivative_stream(s, m + n)
    for k in range(len(coeffs)):
        a, b = once.coeff(k), direct.coeff(k)
        if a.is_zero or b.is_zero:
            assert a.is_zero and b.is_zero
        else:
            assert a.log_abs == pytest.approx(b.log_abs, rel=1e-12, abs=1e-12)


# -- affine_combine ---------------------------------------------------------


def test_affine_zero_lambda():
    f = affine_combine(exp_stream(include_constant=False), 0.0)
    assert all(f.g.coeff(n).is_zero for n in range(10))


def test_affine_half_lambda():
    f = affine_combine(exp_stream(include_constant=False), 0.5)
    for n in range(1, 12):
        assert f.b(n).to_complex() == pytest.approx(0.5 / math.factorial(n), rel=1e-12)
    assert f.b(0).is_zero


def test_affine_linear_imaginary():
    f = affine_combine(CoeffStream.from_complex_seq([0, 1]), 0.5j)
    assert f.b(1).to_complex() == pytest.approx(0.5j)


def test_affine_warns_on_large_lambda():
    with pytest.warns(UserWarning):
        affine_combine(CoeffStream.from_complex_seq([0, 1]), 1.5)


# -- evaluate ---------------------------------------------------------------


def test_evaluate_exponential_constant():
    res = evaluate(exp_map(), 1.0, 60, 1e-14)
    assert res.value == pytest.approx(math.e, abs=1e-12)
    assert res.truncation_bound < 1e-20


def test_evaluate_linear_combination():
    f = poly_map([0, 1], [0, 0.5])
    res = evaluate(f, 1j, 10, 1e-12)
    assert res.value == pytest.approx(0.5j)
    assert res.truncation_bound == 0.0


def test_evaluate_reference_series_against_direct_sum():
    from helpers import f_rho_direct_sum

    f = HarmonicMap.analytic(f_rho_stream(1.0))
    res = evaluate(f, 2.0, 200, 1e-14)
    assert res.value == pytest.approx(f_rho_direct_sum(1.0, 2.0, 200), rel=1e-13)


def test_evaluate_at_zero_returns_constant_exactly():
    # bit-identical to the stored a_0 (plus conj(b_0) = 0)
    f = poly_map([3.25 - 1j, 2, 7])
    assert evaluate(f, 0.0, 5, 1e-12).value == f.h.coeff(0).to_complex()


def test_evaluate_overflow_error():
    s = CoeffStream.from_scaled_seq([ScaledComplex(800.0, 0.0)])
    with pytest.raises(EvaluationOverflowError):
        evaluate(HarmonicMap.analytic(s), 1.0, 0, 1e-12)


# -- jacobian ---------------------------------------------------------------


def test_jacobian_linear_affine():
    f = poly_map([0, 1], [0, 0.5])
    for z in (0.3 + 0.1j, -1.0, 2j):
        assert jacobian(f, z, 5) == pytest.approx(0.75)


def test_jacobian_exp_affine_at_zero():
    f = affine_combine(exp_stream(include_constant=False), 0.5)
    assert jacobian(f, 0.0, 30) == pytest.approx(0.75, rel=1e-12)


def test_jacobian_degenerate():
    f = poly_map([0, 1], [0, 1])
    assert jacobian(f, 0.7 + 0.2j, 5) == pytest.approx(0.0, abs=1e-15)


def test_jacobian_at_zero_exact_identity():
    # |a_1|^2 - |b_1|^2 computed from the stored coefficients, bit-identical
    f = poly_map([0, 3 + 4j, 9, 2], [0, 1j, 5])
    expect = abs(f.h.coeff(1).to_complex()) ** 2 - abs(f.g.coeff(1).to_complex()) ** 2
    assert jacobian(f, 0.0, 5) == expect


# -- normalized_shifted_derivative -----------------------------------------


def test_shifted_derivative_fixed_point_for_exponential():
    f = affine_combine(exp_stream(include_constant=False), 0.4)
    for n in (1, 3, 6):
        nsd = normalized_shifted_derivative(f, n)
        for k in range(10):
            expect = f.h.coeff(k)
            got = nsd.h.coeff(k)
            if expect.is_zero:
                assert got.is_zero
            else:
                assert got.log_abs == pytest.approx(expect.log_abs, abs=1e-10)


def test_shifted_derivative_example_coefficients():
    # analytic part a_k = 2/(k+1)! gives A_k = (n+2)/(k! (k+n+1))
    def fn(idx):
        log = math.log(2.0) - np.array([math.lgamma(k + 2.0) for k in idx])
        log[idx == 0] = -math.inf
        return log, np.zeros(idx.shape)

    f = HarmonicMap.analytic(CoeffStream.from_function(fn, None))
    n = 3
    nsd = normalized_shifted_derivative(f, n)
    for k in range(1, 12):
        expect = (n + 2) / (math.factorial(k) * (k + n + 1))
        assert nsd.h.coeff(k).to_complex() == pytest.approx(expect, rel=1e-11)


def test_shifted_derivative_unit_normalization_exact():
    f = HarmonicMap.analytic(f_rho_stream(2.0))
    for n in range(6):
        nsd = normalized_shifted_derivative(f, n)
        assert nsd.h.coeff(1) == ScaledComplex.one()
        assert nsd.h.coeff(0).is_zero
        assert nsd.g.coeff(0).is_zero


def test_shifted_derivative_degenerate_guard():
    f = poly_map([0, 1, 0, 5])  # a_2 = 0
    with pytest.raises(NormalizationError):
        normalized_shifted_derivative(f, 1)


# -- conjugate_map ----------------------------------------------------------


def test_conjugate_map_values():
    f = poly_map([1 + 1j, 2, 0.5j], [0, 0.25, 0.1j])
    g = conjugate_map(f)
    for z in (0.3, 0.2 - 0.4j, 1j):
        fv = evaluate(f, z, 5, 1e-13).value
        gv = evaluate(g, z, 5, 1e-13).value
        assert gv == pytest.approx(fv.conjugate(), abs=1e-13)


def test_harmonic_map_requires_vanishing_g0():
    with pytest.raises(ValueError):
        poly_map([0, 1], [1.0, 0.5])
