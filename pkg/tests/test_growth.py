import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hemap import (
    CoeffStream,
    HarmonicMap,
    affine_combine,
    cauchy_pair_bound_check,
    convergence_radii,
    empirical_order,
    evaluate,
    f_rho_stream,
    max_modulus,
    order_from_coeffs,
    order_of_sum_check,
    recover_coefficients,
    type_from_coeffs,
)
from hemap.errors import DomainError, InsufficientDataError
from helpers import exp_map, exp_stream, f_rho_direct_sum, order_oracle_exp, poly_map


def geometric_stream(q: float) -> CoeffStream:
    def fn(idx):
        return idx.astype(float) * math.log(q), np.zeros(idx.shape)

    return CoeffStream.from_function(fn, None, f"{q}^n")


# -- f_rho_stream -----------------------------------------------------------


def test_f_rho_values():
    s1 = f_rho_stream(1.0)
    assert s1.coeff(0).is_zero
    assert s1.coeff(1).log_abs == pytest.approx(1.0)
    assert s1.coeff(2).to_complex() == pytest.approx((2 / math.e) ** -2, rel=1e-12)
    s2 = f_rho_stream(2.0)
    assert s2.coeff(2).to_complex() == pytest.approx(math.e, rel=1e-12)


def test_f_rho_domain():
    with pytest.raises(DomainError):
        f_rho_stream(0.0)


# -- max_modulus ------------------------------------------------------------


def test_max_modulus_exponential():
    # max on the circle r = 1 sits at theta = 0, a grid point: M = e
    assert max_modulus(exp_map(), 1.0, 64, 80) == pytest.approx(1.0, abs=1e-12)


def test_max_modulus_reference_series_at_50():
    f = HarmonicMap.analytic(f_rho_stream(1.0))
    log_m = max_modulus(f, 50.0, 1024, 400)
    # positive coefficients: the grid hits the true max at theta = 0, so the
    # value must agree with a plain-double direct summation
    assert log_m == pytest.approx(math.log(f_rho_direct_sum(1.0, 50.0, 400)), abs=1e-9)
    # and sit within 10% (in M) of sqrt(2 pi) r^(1/2) e^r
    asymptotic = 0.5 * math.log(2 * math.pi) + 0.5 * math.log(50.0) + 50.0
    assert abs(math.exp(log_m - asymptotic) - 1.0) < 0.1


def test_max_modulus_two_sided_real_part():
    f = poly_map([0, 1], [0, 1])  # z + conj(z) = 2 Re z
    assert max_modulus(f, 2.0, 64, 10) == pytest.approx(math.log(4.0), abs=1e-12)


def test_max_modulus_monotone_in_grid():
    f = HarmonicMap.analytic(f_rho_stream(1.3))
    vals = [max_modulus(f, 3.0, m, 200) for m in (16, 32, 64, 128)]
    assert all(b >= a - 1e-12 for a, b in zip(vals, vals[1:]))


def test_max_modulus_validates_grid():
    with pytest.raises(ValueError):
        max_modulus(exp_map(), 1.0, 48, 10)


# -- order_from_coeffs ------------------------------------------------------


def test_order_reference_series():
    f = HarmonicMap.analytic(f_rho_stream(2.0))
    rep = order_from_coeffs(f, 2, 2000)
    assert rep.extrapolated == pytest.approx(2.0, rel=0.02)
    assert rep.converged


def test_order_polynomial_is_zero():
    rep = order_from_coeffs(poly_map([0, 1, 5, 2]), 2, 200)
    assert rep.extrapolated == 0.0
    assert rep.converged
    assert rep.samples == []


def test_order_exponential_with_independent_fit():
    rep = order_from_coeffs(exp_map(), 2, 2000)
    oracle = order_oracle_exp(2, 2000)
    assert rep.extrapolated == pytest.approx(1.0, rel=0.02)
    assert rep.extrapolated == pytest.approx(oracle, rel=1e-6)


def test_order_insufficient_data():
    with pytest.raises(InsufficientDataError):
        order_from_coeffs(poly_map([0, 1] + [0] * 6 + [1e-3]), 2, 9)


def test_order_window_validation():
    with pytest.raises(ValueError):
        order_from_coeffs(exp_map(), 1, 100)


@settings(max_examples=20, deadline=None)
@given(st.floats(min_value=-3, max_value=3).filter(lambda t: abs(t) > 1e-6))
def test_order_scaling_invariance(log_c):
    base = f_rho_stream(1.5)

    def fn(idx):
        log, ph = base.log_block(int(idx[0]), int(idx[-1]))
        return log + log_c, ph

    scaled = HarmonicMap.analytic(CoeffStream.from_function(fn, None))
    r1 = order_from_coeffs(HarmonicMap.analytic(base), 2, 600).extrapolated
    r2 = order_from_coeffs(scaled, 2, 600).extrapolated
    assert r2 == pytest.approx(r1, abs=1e-6)


def test_order_conjugation_symmetry():
    h = f_rho_stream(1.0)
    g = f_rho_stream(2.0)
    a = order_from_coeffs(HarmonicMap(h, g), 2, 800)
    b = order_from_coeffs(HarmonicMap(g, h), 2, 800)
    assert a.extrapolated == b.extrapolated
    assert a.samples == b.samples


# -- type_from_coeffs -------------------------------------------------------


@pytest.mark.parametrize("rho", [0.5, 1.0, 2.0])
def test_type_reference_series_exact(rho):
    f = HarmonicMap.analytic(f_rho_stream(rho))
    rep = type_from_coeffs(f, rho, 2, 500)
    assert all(abs(v - 1.0) < 1e-10 for _, v in rep.samples)
    assert rep.extrapolated == pytest.approx(1.0, abs=1e-10)


def test_type_exponential():
    rep = type_from_coeffs(exp_map(), 1.0, 2, 2000)
    assert rep.extrapolated == pytest.approx(1.0, rel=0.005)


def test_type_constant_scale_invariance():
    base = f_rho_stream(1.0)

    def fn(idx):
        log, ph = base.log_block(int(idx[0]), int(idx[-1]))
        return log + math.log(2.0), ph

    doubled = HarmonicMap.analytic(CoeffStream.from_function(fn, None))
    rep = type_from_coeffs(doubled, 1.0, 2, 1500)
    assert rep.extrapolated == pytest.approx(1.0, rel=0.01)


def test_type_domain():
    with pytest.raises(DomainError):
        type_from_coeffs(exp_map(), 0.0, 2, 100)


# -- empirical_order --------------------------------------------------------


def test_empirical_order_exponential_exact_point():
    res = empirical_order(exp_map(), [math.exp(4.0)], 64, 400)
    (r, eta), = res.points
    assert eta == pytest.approx(1.0, abs=1e-9)


def test_empirical_order_reference_series():
    f = HarmonicMap.analytic(f_rho_stream(1.0))
    res = empirical_order(f, [20.0, 40.0, 80.0], 256, 400)
    etas = [eta for _, eta in res.points]
    assert all(abs(e - 1.0) < 0.05 for e in etas)
    # approach to 1 from above as r grows
    assert abs(etas[-1] - 1.0) < abs(etas[0] - 1.0)


def test_empirical_order_cubic_polynomial():
    f = poly_map([0, 0, 0, 1.0])  # z^3: M(r) = r^3 exactly on the grid
    res = empirical_order(f, [100.0, 1000.0], 64, 10)
    for r, eta in res.points:
        assert eta == pytest.approx(math.log(3 * math.log(r)) / math.log(r), abs=1e-9)
    assert res.points[1][1] < res.points[0][1]


def test_empirical_order_omits_small_modulus():
    f = poly_map([0, 1e-9])
    res = empirical_order(f, [2.0], 64, 5)
    assert res.points == []
    assert len(res.notes) == 1


# -- cauchy_pair_bound_check -------------------------------------------------


def test_cauchy_bound_exponential():
    rows = cauchy_pair_bound_check(exp_map(), 1.0, N=20, n_theta=512, n_eval=200)
    assert all(row.ok for row in rows)


def test_cauchy_bound_quadratic():
    f = poly_map([0, 1], [0, 0, 1])  # z + conj(z^2)
    rows = cauchy_pair_bound_check(f, 2.0, N=5, n_theta=512, n_eval=50)
    assert all(row.ok for row in rows)
    # at n = 2 the bound reads 1 <= 2 * 2^-2 * M with M >= 2
    row2 = rows[2]
    assert row2.lhs_log == pytest.approx(0.0, abs=1e-12)
    assert row2.rhs_log >= math.log(2 * 0.25 * 2.0) - 1e-12


def test_cauchy_bound_constant_term():
    f = poly_map([7.0, 1.0])
    rows = cauchy_pair_bound_check(f, 1.5, N=0, n_theta=512, n_eval=10)
    assert rows[0].ok


# -- recover_coefficients ----------------------------------------------------


def test_recover_harmonic_polynomial_exact():
    def sampler(t):
        z = cmath.exp(1j * t)
        return z + 0.5 * (z**2).conjugate()

    a, b = recover_coefficients(sampler, 1.0, 8, 64)
    assert abs(a[1] - 1.0) < 1e-12
    assert abs(b[2] - 0.5) < 1e-12
    others = [abs(v) for n, v in enumerate(a) if n != 1] + [
        abs(v) for n, v in enumerate(b) if n != 2
    ]
    assert max(others) < 1e-12


def test_recover_exponential():
    a, b = recover_coefficients(lambda t: cmath.exp(cmath.exp(1j * t)), 1.0, 20, 256)
    for n in range(21):
        assert abs(a[n] - 1.0 / math.factorial(n)) < 1e-10
    assert max(abs(v) for v in b) < 1e-10


def test_recover_constant():
    a, b = recover_coefficients(lambda t: 7.0 + 0j, 1.0, 4, 64)
    assert abs(a[0] - 7.0) < 1e-12
    assert max(abs(v) for v in a[1:]) < 1e-12
    assert max(abs(v) for v in b) < 1e-12


def test_recover_validates_grid():
    with pytest.raises(ValueError):
        recover_coefficients(lambda t: 0j, 1.0, 20, 60)


def test_recover_inverts_evaluate_on_polynomials():
    f = poly_map([0, 1, 0.25, 0 + 0.5j], [0, 0.1, 0.2])

    def sampler(t):
        return evaluate(f, cmath.exp(1j * t), 10, 1e-14).value

    a, b = recover_coefficients(sampler, 1.0, 6, 64)
    for n in range(7):
        assert abs(a[n] - f.h.coeff(n).to_complex()) < 1e-12
        assert abs(b[n] - f.g.coeff(n).to_complex()) < 1e-12


# -- convergence_radii -------------------------------------------------------


def test_radius_geometric_unit():
    f = HarmonicMap.analytic(geometric_stream(1.0))
    rad = convergence_radii(f, 2, 800)
    assert rad.r_h == pytest.approx(1.0, rel=1e-6)
    assert rad.r_f == rad.r_h


def test_radius_geometric_half():
    f = HarmonicMap.analytic(geometric_stream(2.0))
    rad = convergence_radii(f, 2, 800)
    assert rad.r_h == pytest.approx(0.5, rel=1e-6)


def test_radius_entire():
    rad = convergence_radii(exp_map(), 2, 100000)
    assert math.isinf(rad.r_h)
    assert math.isinf(rad.r_g)


def test_radius_min_rule():
    f = HarmonicMap(geometric_stream(1.0), geometric_stream(2.0))
    rad = convergence_radii(f, 2, 800)
    assert rad.r_f == min(rad.r_h, rad.r_g) == rad.r_g


# -- order_of_sum_check ------------------------------------------------------


def test_order_of_sum_check_cases():
    assert order_of_sum_check(1.0, 0.0, 1.001, 0.01)
    assert order_of_sum_check(1.0, 2.0, 1.95, 0.1)
    assert not order_of_sum_check(1.0, 2.0, 1.7, 0.1)
    assert order_of_sum_check(math.inf, 1.0, math.inf, 0.1)
    assert order_of_sum_check(0.0, 0.0, 0.0, 1e-9)
