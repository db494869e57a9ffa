"""Named example mappings and the special-function series behind them.

Catalog entries are harmonic maps built from closed-form coefficient
streams: the order-rho/type-1 reference series, the exponential affine
family, the shifted-exponential family with a_k = 2/(k+1)!, and three
families whose analytic parts are normalized Bessel, Struve and Lommel
series expressed through the 1F2 hypergeometric coefficients.  Only
coefficient streams are generated; nothing ever evaluates the named
special functions themselves.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from .coeffcore import (
    NEG_INF,
    CoeffStream,
    HarmonicMap,
    affine_combine,
)
from .errors import ParameterError
from .growth import f_rho_stream
from .loggamma import log_gamma, log_gamma_vec  # noqa: F401  (log_gamma is public API)

# Unique root of d/dz f_nu(z) at z = 1 as a function of nu on (-1, inf);
# revalidated by a sign-change check when the first Bessel entry is built.
NU0 = -0.5623

_QUARTER_LOG = math.log(0.25)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    params: dict
    map: HarmonicMap
    notes: str = ""


def _pochhammer_log_sign(p: float, n: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """log |(p)_n| and the sign of the rising factorial, vectorized over n."""
    n = np.asarray(n)
    nf = n.astype(float)
    if p > 0:
        return log_gamma_vec(p + nf) - log_gamma(p), np.ones(n.shape)
    if p == int(p):  # nonpositive integer: (p)_n vanishes once n passes -p
        stop = int(-p) + 1
        log = np.full(n.shape, NEG_INF)
        sign = np.zeros(n.shape)
        small = n < stop
        if np.any(small):
            ls, ss = _negative_prefix(p, int(n[small].max()) if np.any(small) else 0)
            log[small] = ls[n[small]]
            sign[small] = ss[n[small]]
        return log, sign
    c = math.ceil(-p)  # factors p..p+c-1 are negative, the rest positive
    prefix_log, prefix_sign = _negative_prefix(p, c)
    log = np.empty(n.shape, dtype=float)
    sign = np.empty(n.shape, dtype=float)
    small = n <= c
    if np.any(small):
        log[small] = prefix_log[n[small]]
        sign[small] = prefix_sign[n[small]]
    big = ~small
    if np.any(big):
        log[big] = prefix_log[c] + log_gamma_vec(p + nf[big]) - log_gamma(p + c)
        sign[big] = prefix_sign[c]
    return log, sign


def _negative_prefix(p: float, upto: int) -> tuple[np.ndarray, np.ndarray]:
    """Cumulative log|.| and sign of prod_{j<k}(p+j) for k = 0..upto."""
    log = np.zeros(upto + 1)
    sign = np.ones(upto + 1)
    acc_log, acc_sign = 0.0, 1.0
    for k in range(1, upto + 1):
        factor = p + (k - 1)
        if factor == 0.0:
            acc_log, acc_sign = NEG_INF, 0.0
        elif acc_sign != 0.0:
            acc_log += math.log(abs(factor))
            acc_sign *= math.copysign(1.0, factor)
        log[k] = acc_log
        sign[k] = acc_sign
    return log, sign


def hyp1f2_coeffs(a: float, b: float, c: float) -> CoeffStream:
    """Series coefficients (a)_n / ((b)_n (c)_n n!) with sign tracking.

    b and c must not be nonpositive integers (poles of the series).  A
    nonpositive integer a is allowed and truncates the series.
    """
    for name, p in (("b", b), ("c", c)):
        if p <= 0 and p == int(p):
            raise ParameterError(f"parameter {name} = {p} is a pole of the series")

    def fn(idx: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        la, sa = _pochhammer_log_sign(a, idx)
        lb, sb = _pochhammer_log_sign(b, idx)
        lc, sc = _pochhammer_log_sign(c, idx)
        log = la - lb - lc - log_gamma_vec(idx.astype(float) + 1.0)
        sign = sa * sb * sc
        log = np.where(sign == 0.0, NEG_INF, log)
        phase = np.where(sign < 0.0, math.pi, 0.0)
        return log, phase

    return CoeffStream.from_function(fn, None, f"1F2({a};{b},{c})")


def _hyp_transform_stream(hyp: CoeffStream, label: str) -> CoeffStream:
    """Coefficients of z * F(-z/4): index k+1 carries hyp(k) (-1/4)^k."""

    def fn(idx: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        lo = int(idx[0])
        hi = int(idx[-1])
        log = np.full(idx.shape, NEG_INF)
        ph = np.zeros(idx.shape)
        if hi >= 1:
            base_lo = max(lo, 1)
            hl, hp = hyp.log_block(base_lo - 1, hi - 1)
            k = np.arange(base_lo - 1, hi, dtype=float)
            log[base_lo - lo :] = hl + k * _QUARTER_LOG
            ph[base_lo - lo :] = hp + k * math.pi
        return log, ph

    return CoeffStream.from_function(fn, None, label)


@functools.lru_cache(maxsize=None)
def _bessel_root_checked() -> bool:
    """Confirm the derivative-at-one root lies in [-0.57, -0.55].

    The sign of sum (n+1) a_{n+1}(nu) at z = 1 must change across the
    bracket around NU0; evaluated directly from the coefficient formula.
    """

    def deriv_at_one(nu: float) -> float:
        terms = []
        log_g = log_gamma(nu + 1.0)
        for n in range(80):
            mag = math.exp(
                log_g - n * math.log(4.0) - log_gamma(n + 1.0) - log_gamma(nu + n + 1.0)
            )
            terms.append((n + 1) * mag * (-1.0 if n % 2 else 1.0))
        return math.fsum(terms)

    lo, hi = deriv_at_one(-0.57), deriv_at_one(-0.55)
    if lo * hi >= 0:
        raise RuntimeError("parameter-floor root check failed: no sign change")
    return True


def _exp_affine_stream() -> CoeffStream:
    def fn(idx: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        log = -log_gamma_vec(idx.astype(float) + 1.0)
        log = np.where(idx == 0, NEG_INF, log)
        return log, np.zeros(idx.shape)

    return CoeffStream.from_function(fn, None, "exp(z)-1")


def _example3_stream() -> CoeffStream:
    def fn(idx: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        log = math.log(2.0) - log_gamma_vec(idx.astype(float) + 2.0)
        log = np.where(idx == 0, NEG_INF, log)
        return log, np.zeros(idx.shape)

    return CoeffStream.from_function(fn, None, "2(exp(z)-1-z)/z")


def _parse_coeff_list(value) -> list[complex]:
    if isinstance(value, str):
        parts = [p for p in value.split(",") if p.strip()]
        return [complex(p.strip().replace("i", "j")) for p in parts]
    return [complex(v) for v in value]


def _get_lambda(params: dict) -> complex:
    lam = complex(params.get("lambda", 0.0))
    if abs(lam) >= 1.0:
        raise ParameterError("lambda must satisfy |lambda| < 1 (sense preservation)")
    return lam


CATALOG_SCHEMA: dict[str, dict[str, str]] = {
    "f_rho": {
        "rho": "real > 0 (growth order of the reference series; type is 1)",
        "lambda": "complex, |lambda| < 1, optional affine part (default 0)",
    },
    "exp_affine": {
        "lambda": "complex, |lambda| < 1, optional (default 0); map exp(z)-1 + lambda conj(exp(z)-1)"
    },
    "example3": {
        "lambda": "complex, |lambda| < 1, optional (default 0); analytic part 2(exp(z)-(1+z))/z"
    },
    "bessel_f": {
        "nu": f"real >= {NU0} (normalized Bessel-series analytic part)",
        "lambda": "complex, |lambda| < 1, optional (default 0)",
    },
    "struve_h": {
        "nu": "real with |nu| <= 1/2 (normalized Struve-series analytic part)",
        "lambda": "complex, |lambda| < 1, optional (default 0)",
    },
    "lommel_l": {
        "mu": "real in (-1, 1), mu != 0 (normalized Lommel-series analytic part)",
        "lambda": "complex, |lambda| < 1, optional (default 0)",
    },
    "poly": {
        "coeffs": "comma list or array: analytic coefficients a_1, a_2, ...",
        "bcoeffs": "comma list or array: co-analytic coefficients b_1, b_2, ... (optional)",
        "lambda": "complex, |lambda| < 1, optional; used when bcoeffs is absent",
    },
}


def catalog_map(name: str, params: dict | None = None) -> CatalogEntry:
    """Build a named catalog entry; parameters are validated against the schema."""
    params = dict(params or {})
    if name not in CATALOG_SCHEMA:
        known = ", ".join(sorted(CATALOG_SCHEMA))
        raise ParameterError(f"unknown catalog map {name!r}; known: {known}")

    if name == "f_rho":
        rho = float(params.get("rho", 1.0))
        if rho <= 0:
            raise ParameterError("rho must be positive")
        lam = _get_lambda(params)
        h = f_rho_stream(rho)
        fmap = affine_combine(h, lam)
        notes = f"order {rho:g}, type 1 reference series; positive coefficients"
        return CatalogEntry(name, {"rho": rho, "lambda": lam}, fmap, notes)

    if name == "exp_affine":
        lam = _get_lambda(params)
        fmap = affine_combine(_exp_affine_stream(), lam)
        notes = (
            "order 1, type 1; the map and all its derivative maps are convex "
            "and univalent in the unit disk"
        )
        return CatalogEntry(name, {"lambda": lam}, fmap, notes)

    if name == "example3":
        lam = _get_lambda(params)
        fmap = affine_combine(_example3_stream(), lam)
        notes = (
            "order 1; normalized shifted derivatives have decreasing k*A_k, "
            "so every derivative map is close-to-convex in the unit disk"
        )
        return CatalogEntry(name, {"lambda": lam}, fmap, notes)

    if name == "bessel_f":
        nu = float(params.get("nu", 0.0))
        if nu < NU0:
            raise ParameterError(
                f"nu must be >= {NU0} (below it the analytic part is no longer starlike)"
            )
        _bessel_root_checked()
        lam = _get_lambda(params)
        h = _hyp_transform_stream(hyp1f2_coeffs(1.0, 1.0, nu + 1.0), f"bessel_f(nu={nu:g})")
        fmap = affine_combine(h, lam)
        notes = "order 1/2, type 1; alternating coefficients; starlike analytic part"
        return CatalogEntry(name, {"nu": nu, "lambda": lam}, fmap, notes)

    if name == "struve_h":
        nu = float(params.get("nu", 0.0))
        if abs(nu) > 0.5:
            raise ParameterError("struve_h requires |nu| <= 1/2")
        lam = _get_lambda(params)
        h = _hyp_transform_stream(hyp1f2_coeffs(1.0, 1.5, nu + 1.5), f"struve_h(nu={nu:g})")
        fmap = affine_combine(h, lam)
        notes = "order 1/2, type 1; alternating coefficients; starlike analytic part"
        return CatalogEntry(name, {"nu": nu, "lambda": lam}, fmap, notes)

    if name == "lommel_l":
        mu = float(params.get("mu", 0.5))
        if not (-1.0 < mu < 1.0) or mu == 0.0:
            raise ParameterError("lommel_l requires mu in (-1, 1) with mu != 0")
        lam = _get_lambda(params)
        h = _hyp_transform_stream(
            hyp1f2_coeffs(1.0, mu / 2.0 + 1.0, mu / 2.0 + 1.5), f"lommel_l(mu={mu:g})"
        )
        fmap = affine_combine(h, lam)
        notes = "order 1/2, type 1; alternating coefficients; starlike analytic part"
        return CatalogEntry(name, {"mu": mu, "lambda": lam}, fmap, notes)

    # poly
    coeffs = _parse_coeff_list(params.get("coeffs", [1.0]))
    h = CoeffStream.from_complex_seq([0j] + coeffs, label="poly")
    if "bcoeffs" in params:
        b = _parse_coeff_list(params["bcoeffs"])
        if any(v != 0 for v in b):
            g = CoeffStream.from_complex_seq([0j] + b, label="poly-b")
        else:
            g = CoeffStream.zeros()
        fmap = HarmonicMap(h, g)
        used = {"coeffs": coeffs, "bcoeffs": b}
    else:
        lam = _get_lambda(params)
        fmap = affine_combine(h, lam)
        used = {"coeffs": coeffs, "lambda": lam}
    return CatalogEntry("poly", used, fmap, "harmonic polynomial")
