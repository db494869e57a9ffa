"""Shared stream builders and independent oracles for the test suite.

Everything here is deliberately built from the standard library (math.lgamma,
plain double loops) rather than the package's own kernels, so tests compare
two independent routes to the same numbers.
"""
from __future__ import annotations

import math

import numpy as np

from hemap import CoeffStream, HarmonicMap


def exp_stream(include_constant: bool = True) -> CoeffStream:
    """Coefficients 1/n! via math.lgamma; a_0 optionally zeroed (e^z - 1)."""

    def fn(idx):
        log = -np.array([math.lgamma(k + 1.0) for k in idx], dtype=float)
        if not include_constant and idx[0] == 0:
            log[0] = -math.inf
        return log, np.zeros(idx.shape)

    return CoeffStream.from_function(fn, None, "exp(z)" if include_constant else "exp(z)-1")


def exp_map() -> HarmonicMap:
    return HarmonicMap.analytic(exp_stream())


def monomial(n: int, c: complex = 1.0) -> CoeffStream:
    vals = [0j] * n + [complex(c)]
    return CoeffStream.from_complex_seq(vals, label=f"{c}*z^{n}")


def poly_map(a: list[complex], b: list[complex] | None = None) -> HarmonicMap:
    """Map from plain coefficient lists starting at index 0."""
    h = CoeffStream.from_complex_seq(a, label="test-h")
    if b:
        g = CoeffStream.from_complex_seq(b, label="test-g")
    else:
        g = CoeffStream.zeros()
    return HarmonicMap(h, g)


def scaled_argument_stream(base: CoeffStream, s: float, label: str = "") -> CoeffStream:
    """Coefficients c_n s^n: the argument-rescaled series (type scales by s^rho)."""

    def fn(idx):
        log, ph = base.log_block(int(idx[0]), int(idx[-1]))
        return log + idx.astype(float) * math.log(s), ph

    return CoeffStream.from_function(fn, base.n_max, label or f"scaled({s})")


def f_rho_direct_sum(rho: float, r: float, n_terms: int = 400) -> float:
    """Brute-force partial sum of (n/(rho e))^(-n/rho) r^n in plain doubles.

    The two factors are folded into one n-th power so intermediate values
    stay inside the double range.
    """
    total = 0.0
    for n in range(1, n_terms + 1):
        total += ((rho * math.e / n) ** (1.0 / rho) * r) ** n
    return total


def order_oracle_exp(n_lo: int, n_hi: int) -> float:
    """Independent order fit for 1/n! coefficients: numpy polyfit on 1/log n."""
    n = np.arange(max(n_lo, n_hi // 2), n_hi + 1, dtype=float)
    inv_s = np.array([math.lgamma(k + 1.0) for k in n]) / (n * np.log(n))
    a = np.polyfit(1.0 / np.log(n), inv_s, 1)[1]
    return 1.0 / a
