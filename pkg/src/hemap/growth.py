"""Order and type of harmonic entire mappings.

Coefficient-based estimators for the growth order and type, the grid
maximum modulus, empirical growth curves, the order-rho/type-1 reference
function, the coefficient-pair modulus bound, trapezoid coefficient
recovery, and radii of convergence.

The defining sequences converge like O(1/log n) (order) and O(1/n) (type),
so a raw tail maximum is biased at any desk-scale window; each estimator
therefore reports both the raw tail value and a least-squares extrapolation
of the sequence against 1/log n or 1/n over the top half-window.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple

import numpy as np

from .coeffcore import (
    NEG_INF,
    CoeffStream,
    HarmonicMap,
    eval_map_circle,
)
from .errors import DomainError, InsufficientDataError

_MIN_FIT_SAMPLES = 8


@dataclass(frozen=True)
class GrowthReport:
    """Estimate of a limsup-type growth quantity over an index window.

    raw_tail_value is the plain maximum of the defining sequence over
    [window_lo, window_hi]; extrapolated is the reported estimate.
    converged records whether the two half-window extrapolations agree to
    the configured relative tolerance.
    """

    raw_tail_value: float
    extrapolated: float
    window_lo: int
    window_hi: int
    converged: bool
    samples: list[tuple[int, float]] = field(default_factory=list)
    n_skipped_zero: int = 0
    n_skipped_large: int = 0


@dataclass(frozen=True)
class ConvergenceRadii:
    r_h: float
    r_g: float
    r_f: float

    def __post_init__(self) -> None:
        if self.r_f != min(self.r_h, self.r_g):
            raise ValueError("r_f must equal min(r_h, r_g)")


@dataclass(frozen=True)
class EmpiricalOrderResult:
    points: list[tuple[float, float]]
    notes: list[str] = field(default_factory=list)


class CauchyRow(NamedTuple):
    n: int
    lhs_log: float
    rhs_log: float
    ok: bool


def _fit_line(x: np.ndarray, y: np.ndarray) -> tuple[float, float]:
    """Least-squares fit y ~ A + B x with deterministic exact accumulation."""
    m = float(len(x))
    sx = math.fsum(x.tolist())
    sy = math.fsum(y.tolist())
    sxx = math.fsum((x * x).tolist())
    sxy = math.fsum((x * y).tolist())
    det = m * sxx - sx * sx
    if det == 0.0:
        raise InsufficientDataError("degenerate abscissas in tail fit")
    b = (m * sxy - sx * sy) / det
    a = (sy - b * sx) / m
    return a, b


def _fit_order_slope(n: np.ndarray, y: np.ndarray) -> float:
    """Slope of y ~ p log n + q + r/n by least squares (fsum normal equations).

    The reciprocal order sequence is y/log n = p + q/log n + r/(n log n);
    the 1/n column absorbs a constant coefficient rescaling exactly, which
    keeps the slope invariant under it.
    """
    cols = [np.log(n), np.ones_like(n), 1.0 / n]
    g = [[math.fsum((a * b).tolist()) for b in cols] for a in cols]
    rhs = [math.fsum((a * y).tolist()) for a in cols]
    # 3x3 Gaussian elimination with partial pivoting, fixed order
    m = [row[:] + [r] for row, r in zip(g, rhs)]
    for col in range(3):
        piv = max(range(col, 3), key=lambda i: abs(m[i][col]))
        if m[piv][col] == 0.0:
            raise InsufficientDataError("degenerate abscissas in tail fit")
        m[col], m[piv] = m[piv], m[col]
        for i in range(col + 1, 3):
            fac = m[i][col] / m[col][col]
            for j in range(col, 4):
                m[i][j] -= fac * m[col][j]
    sol = [0.0, 0.0, 0.0]
    for i in (2, 1, 0):
        sol[i] = (m[i][3] - sum(m[i][j] * sol[j] for j in range(i + 1, 3))) / m[i][i]
    return sol[0]


def _half_window_agreement(
    x: np.ndarray, y: np.ndarray, estimate: Callable[[float, float], float], rel_tol: float
) -> bool:
    half = len(x) // 2
    if half < 4:
        return False
    e1 = estimate(*_fit_line(x[:half], y[:half]))
    e2 = estimate(*_fit_line(x[half:], y[half:]))
    if math.isinf(e1) or math.isinf(e2):
        return math.isinf(e1) and math.isinf(e2)
    return abs(e1 - e2) <= rel_tol * max(abs(e1), abs(e2), 1e-300)


def _pair_logs(f: HarmonicMap, n_lo: int, n_hi: int) -> np.ndarray:
    """log(|a_n| + |b_n|) for n in [n_lo, n_hi]."""
    ha, _ = f.h.log_block(n_lo, n_hi)
    gb, _ = f.g.log_block(n_lo, n_hi)
    return np.logaddexp(ha, gb)


def _validate_window(n_lo: int, n_hi: int) -> None:
    if not (2 <= n_lo < n_hi):
        raise ValueError("window must satisfy 2 <= n_lo < n_hi")


def order_from_coeffs(
    f: HarmonicMap, n_lo: int = 2, n_hi: int = 2000, rel_tol: float = 0.05
) -> GrowthReport:
    """Growth-order estimate from s_n = n log n / log(1/(|a_n|+|b_n|)).

    Indices with zero pair-sum are skipped; indices with pair-sum >= 1 are
    excluded from the fit and counted in the diagnostics.  The reciprocal
    sequence is fitted against 1/log n over the top half-window and the
    estimate is the reciprocal of the intercept.  An identically zero tail
    reports order 0.
    """
    _validate_window(n_lo, n_hi)
    idx = np.arange(n_lo, n_hi + 1)
    logpair = _pair_logs(f, n_lo, n_hi)
    window_lo = max(n_lo, n_hi // 2)
    in_tail = idx >= window_lo

    zero = logpair == NEG_INF
    large = logpair >= 0.0
    usable = ~zero & ~large

    if not np.any(~zero & in_tail):
        # no nonzero coefficient pair in the tail window: polynomial-like
        return GrowthReport(
            raw_tail_value=0.0,
            extrapolated=0.0,
            window_lo=window_lo,
            window_hi=n_hi,
            converged=True,
            samples=[],
            n_skipped_zero=int(np.count_nonzero(zero)),
            n_skipped_large=int(np.count_nonzero(large)),
        )

    nn = idx[usable].astype(float)
    s = nn * np.log(nn) / (-logpair[usable])
    samples = list(zip(idx[usable].tolist(), s.tolist()))

    fit_mask = in_tail[usable]
    if np.count_nonzero(fit_mask) < _MIN_FIT_SAMPLES:
        raise InsufficientDataError(
            f"only {int(np.count_nonzero(fit_mask))} usable samples in "
            f"[{window_lo}, {n_hi}]; need {_MIN_FIT_SAMPLES}"
        )
    xf = 1.0 / np.log(nn[fit_mask])
    yf = 1.0 / s[fit_mask]

    def estimate(a: float, _b: float) -> float:
        return math.inf if a <= 0.0 else 1.0 / a

    a, b = _fit_line(xf, yf)
    return GrowthReport(
        raw_tail_value=float(np.max(s[fit_mask])),
        extrapolated=estimate(a, b),
        window_lo=window_lo,
        window_hi=n_hi,
        converged=_half_window_agreement(xf, yf, estimate, rel_tol),
        samples=samples,
        n_skipped_zero=int(np.count_nonzero(zero)),
        n_skipped_large=int(np.count_nonzero(large)),
    )


def type_from_coeffs(
    f: HarmonicMap,
    rho: float,
    n_lo: int = 2,
    n_hi: int = 2000,
    rel_tol: float = 0.05,
) -> GrowthReport:
    """Growth-type estimate at order rho from t_n = n (|a_n|+|b_n|)^(rho/n) / (e rho).

    Same windowing as order_from_coeffs; the sequence is fitted against 1/n
    and the intercept is reported.
    """
    if not (0.0 < rho < math.inf):
        raise DomainError("type is defined for finite positive order")
    _validate_window(n_lo, n_hi)
    idx = np.arange(n_lo, n_hi + 1)
    logpair = _pair_logs(f, n_lo, n_hi)
    window_lo = max(n_lo, n_hi // 2)
    in_tail = idx >= window_lo

    zero = logpair == NEG_INF
    usable = ~zero
    if not np.any(usable & in_tail):
        return GrowthReport(
            raw_tail_value=0.0,
            extrapolated=0.0,
            window_lo=window_lo,
            window_hi=n_hi,
            converged=True,
            samples=[],
            n_skipped_zero=int(np.count_nonzero(zero)),
        )

    nn = idx[usable].astype(float)
    log_t = np.log(nn) + (rho / nn) * logpair[usable] - 1.0 - math.log(rho)
    with np.errstate(over="ignore"):
        t = np.exp(log_t)
    samples = list(zip(idx[usable].tolist(), t.tolist()))

    fit_mask = in_tail[usable]
    if np.count_nonzero(fit_mask) < _MIN_FIT_SAMPLES:
        raise InsufficientDataError(
            f"only {int(np.count_nonzero(fit_mask))} usable samples in "
            f"[{window_lo}, {n_hi}]; need {_MIN_FIT_SAMPLES}"
        )
    xf = 1.0 / nn[fit_mask]
    yf = t[fit_mask]

    def estimate(a: float, _b: float) -> float:
        return max(a, 0.0)

    a, b = _fit_line(xf, yf)
    return GrowthReport(
        raw_tail_value=float(np.max(yf)),
        extrapolated=estimate(a, b),
        window_lo=window_lo,
        window_hi=n_hi,
        converged=_half_window_agreement(xf, yf, estimate, rel_tol),
        samples=samples,
        n_skipped_zero=int(np.count_nonzero(zero)),
    )


def _log_max_on_grid(f: HarmonicMap, log_r: float, n_theta: int, N: int) -> float:
    scale, vals = eval_map_circle(f, log_r, n_theta, N)
    mx = float(np.max(np.abs(vals)))
    if mx == 0.0:
        return NEG_INF
    return scale + math.log(mx)


def max_modulus(f: HarmonicMap, r: float, n_theta: int | None = None, N: int = 2000) -> float:
    """log of the grid maximum modulus of f on |z| = r.

    The series is summed fully in the log domain, so factorial-scale values
    never overflow.  With an explicit n_theta (a power of two, >= 16) a
    single grid is used; with n_theta=None the grid doubles from 64 until
    the result changes by less than 1e-10 or 8192 points are reached.  The
    result is monotone nondecreasing in n_theta because the grids nest.
    """
    if r <= 0:
        raise DomainError("radius must be positive")
    log_r = math.log(r)
    if n_theta is not None:
        if n_theta < 16 or n_theta & (n_theta - 1):
            raise ValueError("n_theta must be a power of two, at least 16")
        return _log_max_on_grid(f, log_r, n_theta, N)
    m = 64
    best = _log_max_on_grid(f, log_r, m, N)
    while m < 8192:
        m *= 2
        nxt = _log_max_on_grid(f, log_r, m, N)
        if nxt - best < 1e-10:
            return nxt
        best = nxt
    return best


def empirical_order(
    f: HarmonicMap,
    r_values: list[float],
    n_theta: int | None = None,
    N: int = 2000,
) -> EmpiricalOrderResult:
    """Samples of log(log M(r, f)) / log r on a radius grid.

    No limit is asserted; the caller inspects the trend.  Radii with
    log M <= 0 are omitted with a note.
    """
    points: list[tuple[float, float]] = []
    notes: list[str] = []
    for r in r_values:
        if r <= 1:
            raise DomainError("empirical order needs radii > 1")
        log_m = max_modulus(f, r, n_theta=n_theta, N=N)
        if log_m <= 0.0:
            notes.append(f"r={r:g}: log M(r) <= 0, point omitted")
            continue
        points.append((float(r), math.log(log_m) / math.log(r)))
    return EmpiricalOrderResult(points=points, notes=notes)


def cauchy_pair_bound_check(
    f: HarmonicMap,
    r: float,
    N: int = 50,
    n_theta: int = 1024,
    n_eval: int = 4096,
) -> list[CauchyRow]:
    """Check |a_n| + |b_n| <= 2 r^-n M(r, f) for n = 0..N, in logs.

    The grid maximum is a slight underestimate of M, so each comparison
    carries a 1e-9 slack; with n_theta >= 512 the slack covers grid error
    for the maps in the catalog.
    """
    if r <= 0:
        raise DomainError("radius must be positive")
    log_m = max_modulus(f, r, n_theta=n_theta, N=n_eval)
    ha, _ = f.h.log_block(0, N)
    gb, _ = f.g.log_block(0, N)
    lp = np.logaddexp(ha, gb)
    rows = []
    for n in range(N + 1):
        lhs = float(lp[n])
        rhs = math.log(2.0) - n * math.log(r) + log_m
        rows.append(CauchyRow(n, lhs, rhs, lhs <= rhs + 1e-9))
    return rows


def recover_coefficients(
    sampler: Callable[[float], complex],
    r: float,
    n_max: int,
    m: int,
) -> tuple[list[complex], list[complex]]:
    """Coefficient recovery by the m-point trapezoid rule on |z| = r.

    a_n ~ (1/2pi) int r^-n e^{-int} f(r e^{it}) dt and b_n likewise with
    conj(f); on the uniform full-period grid the trapezoid sums are exactly
    the DFT of the samples, so they are exact for harmonic polynomials of
    degree below m - n_max.  b_0 is pinned to zero, the normalization of
    the canonical decomposition.
    """
    if m < 4 * n_max or m & (m - 1):
        raise ValueError("m must be a power of two with m >= 4 n_max")
    ts = 2.0 * math.pi * np.arange(m) / m
    samples = np.array([complex(sampler(float(t))) for t in ts])
    fa = np.fft.fft(samples) / m
    fb = np.fft.fft(np.conj(samples)) / m
    a = [complex(fa[n]) * r ** (-n) for n in range(n_max + 1)]
    b = [0j] + [complex(fb[n]) * r ** (-n) for n in range(1, n_max + 1)]
    return a, b


def f_rho_stream(rho: float) -> CoeffStream:
    """Coefficients (n / (rho e))^(-n/rho): the order-rho, type-1 reference."""
    if not (rho > 0):
        raise DomainError("rho must be positive")

    def fn(idx: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        k = idx.astype(float)
        with np.errstate(divide="ignore", invalid="ignore"):
            log = -(k / rho) * (np.log(k) - math.log(rho) - 1.0)
        log = np.where(idx == 0, NEG_INF, log)
        return log, np.zeros(idx.shape)

    return CoeffStream.from_function(fn, None, f"F_{rho:g}")


def _radius_from_stream(
    s: CoeffStream, n_lo: int, n_hi: int, zero_tol: float
) -> float:
    idx = np.arange(n_lo, n_hi + 1)
    log, _ = s.log_block(n_lo, n_hi)
    valid = log > NEG_INF
    if not np.any(valid):
        return math.inf  # no mass in the window: polynomial tail
    window_lo = max(n_lo, n_hi // 2)
    tail = valid & (idx >= window_lo)
    if np.count_nonzero(tail) < _MIN_FIT_SAMPLES:
        raise InsufficientDataError(
            f"only {int(np.count_nonzero(tail))} nonzero samples in "
            f"[{window_lo}, {n_hi}]; need {_MIN_FIT_SAMPLES}"
        )
    nn = idx[tail].astype(float)
    with np.errstate(over="ignore"):
        u = np.exp(log[tail] / nn)
    if np.any(np.isinf(u)):
        return 0.0
    a, _b = _fit_line(1.0 / nn, u)
    est = max(a, 0.0)
    if est < zero_tol:
        return math.inf
    return 1.0 / est


def convergence_radii(
    f: HarmonicMap, n_lo: int = 2, n_hi: int = 2000, zero_tol: float = 1e-8
) -> ConvergenceRadii:
    """Radii of convergence from 1 / limsup |a_n|^(1/n), per part.

    The root sequence is fitted against 1/n over the top half-window; an
    intercept below zero_tol reports an infinite radius.
    """
    _validate_window(n_lo, n_hi)
    r_h = _radius_from_stream(f.h, n_lo, n_hi, zero_tol)
    r_g = _radius_from_stream(f.g, n_lo, n_hi, zero_tol)
    return ConvergenceRadii(r_h, r_g, min(r_h, r_g))


def order_of_sum_check(
    h_order: float, g_order: float, f_order: float, tol: float
) -> bool:
    """True when the combined order matches max of the part orders within tol."""
    expected = max(h_order, g_order)
    if math.isinf(expected) or math.isinf(f_order):
        return math.isinf(expected) and math.isinf(f_order)
    return abs(f_order - expected) <= tol
