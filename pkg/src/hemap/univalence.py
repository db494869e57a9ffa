"""Univalence machinery for harmonic maps given by coefficient streams.

Sense classification at the origin, the coefficient sufficient condition
for univalence in the unit disk, certified lower/upper bounds for the
radius of univalence of derivative maps, the Ozaki close-to-convexity
test for affine maps, the empirical second-coefficient ratio gamma, the
exponential-type modulus bound, the induced coefficient growth bound, the
quadratic coefficient-size screen, and the coefficient-ratio delta.

Lower bounds come from sufficient conditions only and are therefore
conservative; certificates carry the method tag so consumers can tell a
certified-univalent radius from the true one.  Upper bounds come from a
confirmed Jacobian sign change or a confirmed collision and are certified
up to the scan grid resolution.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .coeffcore import (
    NEG_INF,
    CoeffStream,
    HarmonicMap,
    ScaledComplex,
    _eval_stream_plain,
    derivative_stream,
    eval_stream_circle,
    normalized_shifted_derivative,
    shifted_derivative_map,
)
from .errors import (
    DegenerateMapError,
    DomainError,
    InsufficientDataError,
    NormalizationError,
    NotApplicableError,
)
from .growth import max_modulus

SENSE_PRESERVING = "preserving"
SENSE_REVERSING = "reversing"
SENSE_DEGENERATE = "degenerate"

LOWER_COEFFICIENT_LEMMA = "coefficient-lemma"
LOWER_OZAKI_AFFINE = "ozaki-affine"

UPPER_JACOBIAN_ZERO = "jacobian-zero"
UPPER_COLLISION = "collision"
UPPER_NONE_FOUND = "none-found"


@dataclass(frozen=True)
class AnalysisConfig:
    """Tunable constants for univalence and gap analysis.

    alpha and beta default to 3, the quadratic coefficient screen evaluated
    at n = 2; the true suprema over the univalent families are unknown, so
    they are configuration rather than constants.  alpha0/beta0 are the
    optional tighter values for maps whose every derivative is univalent.
    """

    alpha: float = 3.0
    beta: float = 3.0
    alpha0: Optional[float] = None
    beta0: Optional[float] = None
    collision_tol: float = 1e-8
    bisect_tol: float = 1e-9
    series_terms: int = 240
    radius_cap: float = 1e6
    upper_r_max: float = 1.0
    upper_grid: int = 64
    upper_radii: int = 40
    upper_r_min_factor: float = 1.0 / 64.0
    collision_sep_factor: float = 1e-4
    proportionality_tol: float = 1e-10
    ozaki_terms: int = 60
    shc_terms: int = 50
    eval_terms: int = 400
    tail_fraction: float = 0.5

    def __post_init__(self) -> None:
        if self.alpha <= 0 or self.beta <= 0:
            raise DomainError("alpha and beta must be positive")


@dataclass(frozen=True)
class UnivalenceCertificate:
    """Interval certificate [r_lower, r_upper] for a radius of univalence.

    r_lower is certified by a sufficient condition (method recorded);
    r_upper comes from a confirmed violation witness, exact up to the scan
    grid parameters recorded alongside.
    """

    n: int
    r_lower: float
    r_upper: float
    lower_method: str
    upper_method: str
    witness: object = None
    degenerate: bool = False
    lower_capped: bool = False
    grid_params: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.r_lower > self.r_upper:
            raise ValueError("certificate requires r_lower <= r_upper")


@dataclass(frozen=True)
class CoefficientTestResult:
    passed: bool
    margin: float
    inconclusive: bool = False
    tail_bound: float = 0.0


@dataclass(frozen=True)
class LowerBoundResult:
    radius: float
    capped: bool = False


def sense_preserving_at_origin(f: HarmonicMap) -> str:
    """Classify the map at 0 by comparing |a_1| and |b_1|."""
    la = f.h.coeff(1).log_abs
    lb = f.g.coeff(1).log_abs
    if la > lb:
        return SENSE_PRESERVING
    if la < lb:
        return SENSE_REVERSING
    return SENSE_DEGENERATE


def normalize_map(f: HarmonicMap) -> HarmonicMap:
    """Rescale to a_0 = 0, a_1 = 1 by dropping the constant and dividing by a_1."""
    a1 = f.h.coeff(1)
    if a1.is_zero:
        raise NormalizationError("a_1 = 0; the map cannot be normalized")

    def scale(s: CoeffStream, label: str) -> CoeffStream:
        def fn(idx: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
            log, ph = s.log_block(int(idx[0]), int(idx[-1]))
            log = log - a1.log_abs
            ph = ph - a1.phase
            if idx[0] == 0:
                log = log.copy()
                ph = ph.copy()
                log[0] = NEG_INF
                ph[0] = 0.0
            return log, ph

        return CoeffStream.from_function(fn, s.n_max, label)

    return HarmonicMap(scale(f.h, f"norm[{f.h.label}]"), scale(f.g, f"norm[{f.g.label}]"))


def _weighted_tail_terms(f: HarmonicMap, N: int) -> np.ndarray:
    """log(n (|a_n| + |b_n|)) for n = 2..N."""
    idx = np.arange(2, N + 1)
    ha, _ = f.h.log_block(2, N)
    gb, _ = f.g.log_block(2, N)
    return np.log(idx.astype(float)) + np.logaddexp(ha, gb)


def _tail_is_finite(f: HarmonicMap, N: int) -> bool:
    hn, gn = f.h.n_max, f.g.n_max
    return hn is not None and gn is not None and N >= max(hn, gn)


def _geometric_tail(log_terms: np.ndarray) -> float:
    """Tail sum bound from the trailing term ratios; inf when not certifiable."""
    finite = np.flatnonzero(log_terms > NEG_INF)
    if finite.size == 0:
        return 0.0
    if finite.size == 1:
        return math.inf
    tail_idx = finite[-3:]
    ratios = []
    for i, j in zip(tail_idx[:-1], tail_idx[1:]):
        ratios.append((log_terms[j] - log_terms[i]) / (j - i))
    log_q = max(ratios)
    if log_q >= 0.0:
        return math.inf
    q = math.exp(log_q)
    try:
        t = math.exp(float(log_terms[finite[-1]]))
    except OverflowError:
        return math.inf
    return t * q / (1.0 - q)


def coefficient_univalence_test(f: HarmonicMap, N: int) -> CoefficientTestResult:
    """Sufficient condition: sum n(|a_n|+|b_n|) <= 1 - |b_1| after normalization.

    margin is the slack of the truncated sum.  The test passes only when
    the margin survives a certified bound on the tail beyond N; a positive
    margin with an uncertifiable tail is reported as inconclusive.
    """
    fn = normalize_map(f)
    b1 = fn.g.coeff(1).abs_value()
    log_terms = _weighted_tail_terms(fn, N)
    with np.errstate(over="ignore"):
        terms = np.exp(log_terms)
    total = math.fsum(terms.tolist())
    margin = (1.0 - b1) - total
    if _tail_is_finite(fn, N):
        return CoefficientTestResult(passed=margin >= 0.0, margin=margin)
    tail = _geometric_tail(log_terms)
    if math.isinf(tail):
        return CoefficientTestResult(
            passed=False, margin=margin, inconclusive=margin >= 0.0, tail_bound=tail
        )
    certified = margin - tail >= 0.0
    return CoefficientTestResult(
        passed=margin >= 0.0 and certified,
        margin=margin,
        inconclusive=margin >= 0.0 and not certified,
        tail_bound=tail,
    )


def _lemma_sum_exceeds(f: HarmonicMap, log_r: float, rhs_log: float, N: int) -> bool:
    """Whether sum n(|a_n|+|b_n|) r^(n-1) certifiably stays <= rhs (False) or not."""
    idx = np.arange(2, N + 1).astype(float)
    log_terms = _weighted_tail_terms(f, N) + (idx - 1.0) * log_r
    finite = log_terms[log_terms > NEG_INF]
    if finite.size == 0:
        return False
    m = float(np.max(finite))
    total = m + math.log(math.fsum(np.exp(log_terms - m).tolist()))
    if not _tail_is_finite(f, N):
        tail = _geometric_tail(log_terms)
        if math.isinf(tail):
            return True  # cannot certify the tail at this radius
        if tail > 0.0:
            total = np.logaddexp(total, math.log(tail))
    return total > rhs_log


def univalence_radius_lower(
    f: HarmonicMap, config: AnalysisConfig = AnalysisConfig()
) -> LowerBoundResult:
    """Largest certified r with sum n(|a_n|+|b_n|) r^(n-1) <= |a_1| - |b_1|.

    The left side is strictly increasing in r, so bisection is valid.  The
    rescaled map f(rz)/a_1 then satisfies the coefficient condition, which
    certifies univalence on |z| < r.  Returns radius 0 when |b_1| >= |a_1|
    and the search cap (flagged) when no failing radius exists below it.
    """
    a1 = f.h.coeff(1)
    if a1.is_zero:
        raise NormalizationError("a_1 = 0; no univalence radius from the coefficient test")
    b1 = f.g.coeff(1)
    if b1.log_abs >= a1.log_abs:
        return LowerBoundResult(0.0)
    # rhs = |a_1| - |b_1| in logs
    rhs_log = a1.log_abs + math.log1p(-math.exp(b1.log_abs - a1.log_abs))
    N = config.series_terms
    if f.h.n_max is not None and f.g.n_max is not None:
        N = max(2, min(N, max(f.h.n_max, f.g.n_max)))

    def fails(r: float) -> bool:
        return _lemma_sum_exceeds(f, math.log(r), rhs_log, N)

    hi = 1e-2
    while not fails(hi):
        hi *= 2.0
        if hi > config.radius_cap:
            return LowerBoundResult(config.radius_cap, capped=True)
    lo = 0.0 if hi <= 1e-2 else hi / 2.0
    while hi - lo > config.bisect_tol * max(1.0, lo):
        mid = 0.5 * (lo + hi)
        if fails(mid):
            hi = mid
        else:
            lo = mid
    return LowerBoundResult(lo)


def _plain_circle_values(
    s: CoeffStream, log_r: float, n_theta: int, N: int
) -> np.ndarray:
    scale, vals = eval_stream_circle(s, log_r, n_theta, N)
    return vals * math.exp(scale) if scale > NEG_INF else vals


def _jacobian_on_grid(
    dh: CoeffStream, dg: CoeffStream, log_r: float, n_theta: int, N: int
) -> np.ndarray:
    mh, vh = eval_stream_circle(dh, log_r, n_theta, N)
    mg, vg = eval_stream_circle(dg, log_r, n_theta, N)
    scale = max(mh, mg)
    if scale == NEG_INF:
        return np.zeros(n_theta)
    jh = np.abs(vh) ** 2 * math.exp(2.0 * (mh - scale))
    jg = np.abs(vg) ** 2 * math.exp(2.0 * (mg - scale))
    with np.errstate(over="ignore"):
        return (jh - jg) * math.exp(2.0 * scale)


def _eval_point(s: CoeffStream, z: complex, N: int) -> complex:
    v, _, _ = _eval_stream_plain(s, z, N, 1e-280)
    return v


def _map_value(f: HarmonicMap, z: complex, N: int) -> complex:
    return _eval_point(f.h, z, N) + _eval_point(f.g, z, N).conjugate()


def _refine_collision(
    f: HarmonicMap,
    dh: CoeffStream,
    dg: CoeffStream,
    z1: complex,
    z2: complex,
    r: float,
    N: int,
    config: AnalysisConfig,
) -> Optional[tuple[complex, complex]]:
    """Damped Newton on z1 with z2 fixed: drive f(z1) - f(z2) to zero.

    The update inverts the R-linear differential dh'(z) dz + conj(dg'(z) dz).
    A confirmed pair must stay inside the closed disk, keep the two points
    separated, and meet the collision tolerance.
    """
    target = _map_value(f, z2, N)
    for _ in range(40):
        d = _map_value(f, z1, N) - target
        hp = _eval_point(dh, z1, N)
        gp = _eval_point(dg, z1, N)
        denom = abs(hp) ** 2 - abs(gp) ** 2
        if denom == 0.0:
            return None
        step = (hp.conjugate() * d - gp * d.conjugate()) / denom
        z1 = z1 - 0.5 * step
        if abs(z1) > r:
            z1 = z1 * (r / abs(z1))
    gap = abs(_map_value(f, z1, N) - target)
    sep = abs(z1 - z2)
    if gap < config.collision_tol and sep > config.collision_sep_factor * r:
        return z1, z2
    return None


def univalence_radius_upper(
    f: HarmonicMap,
    r_max: float,
    grid: int,
    config: AnalysisConfig = AnalysisConfig(),
) -> tuple[float, str, object, dict]:
    """Smallest scanned radius with a confirmed injectivity violation.

    Scans a geometric radius grid upward; each radius is checked for a
    nonpositive Jacobian on the theta grid (then the onset radius is
    refined by bisection) and for pairwise collisions among the grid
    images (confirmed by local refinement).  Returns (inf, none-found)
    when the scan is clean.  A returned radius bounds the univalence
    radius from above only up to the recorded grid resolution.
    """
    if r_max <= 0:
        raise DomainError("r_max must be positive")
    N = config.eval_terms
    dh = derivative_stream(f.h, 1)
    dg = derivative_stream(f.g, 1)
    r_lo = r_max * config.upper_r_min_factor
    k = config.upper_radii
    radii = [r_lo * (r_max / r_lo) ** (i / (k - 1)) for i in range(k)]
    grid_params = {
        "r_min": r_lo,
        "r_max": r_max,
        "radii": k,
        "n_theta": grid,
        "eval_terms": N,
    }
    thetas = 2.0 * math.pi * np.arange(grid) / grid
    prev_clean = 0.0
    for r in radii:
        log_r = math.log(r)
        jac = _jacobian_on_grid(dh, dg, log_r, grid, N)
        j_idx = int(np.argmin(jac))
        if jac[j_idx] <= 0.0:
            r_ref, witness = _refine_jacobian_zero(
                dh, dg, prev_clean, r, grid, N, thetas, config
            )
            return r_ref, UPPER_JACOBIAN_ZERO, witness, grid_params
        w = _plain_circle_values(f.h, log_r, grid, N) + np.conj(
            _plain_circle_values(f.g, log_r, grid, N)
        )
        pair = _collision_candidates(w, config)
        for i, j in pair:
            z1 = r * complex(math.cos(thetas[i]), math.sin(thetas[i]))
            z2 = r * complex(math.cos(thetas[j]), math.sin(thetas[j]))
            confirmed = _refine_collision(f, dh, dg, z1, z2, r, N, config)
            if confirmed is not None:
                return r, UPPER_COLLISION, confirmed, grid_params
        prev_clean = r
    return math.inf, UPPER_NONE_FOUND, None, grid_params


def _collision_candidates(
    w: np.ndarray, config: AnalysisConfig
) -> list[tuple[int, int]]:
    m = w.size
    scale = float(np.max(np.abs(w))) if m else 0.0
    coarse = max(100.0 * config.collision_tol, 2e-3 * scale)
    diff = np.abs(w[:, None] - w[None, :])
    ii, jj = np.nonzero(diff < coarse)
    out = []
    for i, j in zip(ii.tolist(), jj.tolist()):
        if i >= j:
            continue
        gap = min(j - i, m - (j - i))
        if gap <= 1:
            continue  # neighbours are close by continuity, not by folding
        out.append((i, j))
    return out


def _refine_jacobian_zero(
    dh: CoeffStream,
    dg: CoeffStream,
    lo: float,
    hi: float,
    grid: int,
    N: int,
    thetas: np.ndarray,
    config: AnalysisConfig,
) -> tuple[float, complex]:
    """Bisect the onset radius of min_theta J <= 0; witness on the hi side."""

    def min_j(r: float) -> tuple[float, int]:
        jac = _jacobian_on_grid(dh, dg, math.log(r), grid, N)
        i = int(np.argmin(jac))
        return float(jac[i]), i

    for _ in range(80):
        if hi - lo <= config.bisect_tol * max(1.0, hi):
            break
        mid = 0.5 * (lo + hi)
        if mid <= 0.0:
            break
        val, _ = min_j(mid)
        if val <= 0.0:
            hi = mid
        else:
            lo = mid
    val, i = min_j(hi)
    witness = hi * complex(math.cos(thetas[i]), math.sin(thetas[i]))
    return hi, witness


def ozaki_close_to_convex_check(s: CoeffStream, N: int) -> tuple[bool, float]:
    """Close-to-convexity via the nonincreasing n*coefficient condition.

    Requires a normalized stream (coefficient 1 at index 1, 0 at index 0)
    with real nonnegative coefficients up to N.  When {k c_k} is
    nonincreasing the absolute second-difference series telescopes to
    c_1 - N c_N, and the analytic map is close-to-convex, hence univalent,
    in the unit disk.
    """
    n_eff = N if s.n_max is None else min(N, s.n_max)
    log, ph = s.log_block(0, n_eff)
    if not s.coeff(0).is_zero:
        raise NotApplicableError("criterion requires coefficient 0 at index 0")
    if abs(log[1]) > 1e-9 or abs(ph[1]) > 1e-9:
        raise NotApplicableError("criterion requires coefficient 1 at index 1")
    nonzero = log > NEG_INF
    if np.any(np.abs(ph[nonzero]) > 1e-9):
        raise NotApplicableError("criterion requires real nonnegative coefficients")
    idx = np.arange(n_eff + 1, dtype=float)
    with np.errstate(divide="ignore"):
        weighted = np.log(idx) + log  # log(k c_k)
    w = weighted[1:]
    nonincreasing = bool(np.all(np.diff(w) <= 1e-12))
    k_ck_last = math.exp(w[-1]) if w[-1] > NEG_INF else 0.0
    telescoped = math.exp(float(w[0])) - k_ck_last
    tail_limit_ok = k_ck_last >= 0.0
    return nonincreasing and tail_limit_ok, telescoped


def _is_affine_of_analytic(
    f: HarmonicMap, n_terms: int, tol: float
) -> Optional[complex]:
    """Detect g = lambda h with |lambda| < 1; returns lambda or None."""
    n_eff = n_terms
    if f.h.n_max is not None and f.g.n_max is not None:
        # cover the longer stream so a trailing g coefficient cannot hide
        n_eff = min(n_eff, max(f.h.n_max, f.g.n_max))
    ha, hp = f.h.log_block(0, n_eff)
    ga, gp = f.g.log_block(0, n_eff)
    first = None
    for k in range(1, n_eff + 1):
        if ha[k] > NEG_INF:
            first = k
            break
    if first is None:
        return None
    if ga[first] == NEG_INF:
        lam_candidates = np.flatnonzero(ga > NEG_INF)
        if lam_candidates.size == 0:
            return 0j  # g identically zero on the prefix
        return None
    lam = ScaledComplex(float(ga[first] - ha[first]), float(gp[first] - hp[first]))
    if lam.log_abs >= 0.0:
        return None
    for k in range(1, n_eff + 1):
        if ha[k] == NEG_INF and ga[k] == NEG_INF:
            continue
        if ha[k] == NEG_INF or ga[k] == NEG_INF:
            return None
        dlog = ga[k] - ha[k] - lam.log_abs
        dph = (gp[k] - hp[k] - lam.phase + math.pi) % (2.0 * math.pi) - math.pi
        if abs(dlog) > tol or abs(dph) > tol:
            return None
    return lam.to_complex()


def radius_certificate(
    f: HarmonicMap,
    n: int,
    config: AnalysisConfig = AnalysisConfig(),
    compute_upper: bool = True,
) -> UnivalenceCertificate:
    """Certified interval for the univalence radius of the n-th derivative.

    The derivative map is analyzed translation-free.  A sense-reversing map
    is replaced by its conjugate (parts swapped), so certificates agree for
    a map and its conjugate.  The lower bound is the better of the
    coefficient-lemma bisection and, for affine maps with a normalized
    analytic part that meets the Ozaki condition, the full unit disk.
    """
    dmap = shifted_derivative_map(f, n)
    lead_a = dmap.h.coeff(1)
    lead_b = dmap.g.coeff(1)
    if lead_a.is_zero and lead_b.is_zero:
        raise DegenerateMapError(
            f"both coefficients at index {n + 1} vanish; derivative {n} is degenerate"
        )
    if lead_a.log_abs == lead_b.log_abs:
        return UnivalenceCertificate(
            n=n,
            r_lower=0.0,
            r_upper=0.0,
            lower_method=LOWER_COEFFICIENT_LEMMA,
            upper_method=UPPER_NONE_FOUND,
            degenerate=True,
        )
    if lead_a.log_abs < lead_b.log_abs:
        dmap = HarmonicMap(dmap.g, dmap.h)  # analyze conj(f^(n))

    lower = univalence_radius_lower(dmap, config)
    r_lower, lower_method, capped = lower.radius, LOWER_COEFFICIENT_LEMMA, lower.capped

    lam = _is_affine_of_analytic(dmap, config.ozaki_terms, config.proportionality_tol)
    if lam is not None and r_lower < 1.0:
        try:
            norm = normalized_shifted_derivative(dmap, 0)
            ok, _ = ozaki_close_to_convex_check(norm.h, config.ozaki_terms)
        except (NotApplicableError, NormalizationError):
            ok = False
        if ok:
            r_lower, lower_method, capped = 1.0, LOWER_OZAKI_AFFINE, False

    if compute_upper:
        r_upper, upper_method, witness, grid_params = univalence_radius_upper(
            dmap, config.upper_r_max, config.upper_grid, config
        )
    else:
        r_upper, upper_method, witness, grid_params = math.inf, UPPER_NONE_FOUND, None, {}

    return UnivalenceCertificate(
        n=n,
        r_lower=r_lower,
        r_upper=r_upper,
        lower_method=lower_method,
        upper_method=upper_method,
        witness=witness,
        lower_capped=capped,
        grid_params=grid_params,
    )


def gamma_empirical(f: HarmonicMap, N: int) -> float:
    """Smallest constant gamma with (n+2) max(|a_{n+2}|,|b_{n+2}|) <= 2 gamma |a_{n+1}|.

    Maximized over the prefix 0 <= n <= N-2.  Indices whose numerator pair
    vanishes contribute nothing; a vanishing a_{n+1} under a nonzero
    numerator is an error.
    """
    if N < 2:
        return 0.0
    ha, _ = f.h.log_block(0, N)
    gb, _ = f.g.log_block(0, N)
    best = NEG_INF
    for n in range(0, N - 1):
        num = max(ha[n + 2], gb[n + 2])
        if num == NEG_INF:
            continue
        if ha[n + 1] == NEG_INF:
            raise NormalizationError(f"a_{n + 1} = 0 with a nonzero successor pair")
        log_ratio = math.log(n + 2.0) + num - math.log(2.0) - ha[n + 1]
        best = max(best, log_ratio)
    return 0.0 if best == NEG_INF else math.exp(best)


def exponential_type_bound_check(
    f: HarmonicMap,
    gamma: float,
    r_values: list[float],
    n_theta: int = 1024,
    N: int = 2000,
) -> list[tuple[float, float, float, bool]]:
    """Check log M(r, f) <= log((e^(2 gamma r) - 1)/gamma) on a radius grid.

    Requires the normalization a_0 = 0, a_1 = 1.
    """
    if gamma <= 0:
        raise DomainError("gamma must be positive")
    if not f.h.coeff(0).is_zero:
        raise NormalizationError("bound check requires a_0 = 0")
    a1 = f.h.coeff(1)
    if abs(a1.log_abs) > 1e-9 or abs(a1.phase) > 1e-9:
        raise NormalizationError("bound check requires a_1 = 1")
    rows = []
    for r in r_values:
        log_m = max_modulus(f, r, n_theta=n_theta, N=N)
        x = 2.0 * gamma * r
        log_bound = x + math.log1p(-math.exp(-x)) - math.log(gamma)
        rows.append((float(r), log_m, log_bound, log_m <= log_bound + 1e-9))
    return rows


def coeff_growth_bound_check(
    f: HarmonicMap, gamma: float, N: int
) -> list[tuple[int, bool]]:
    """Check |a_n| <= (2 gamma)^(n-1)/n! and the same for b_n, n = 1..N."""
    if gamma <= 0:
        raise DomainError("gamma must be positive")
    idx = np.arange(1, N + 1, dtype=float)
    from .loggamma import log_factorial_vec

    bound = (idx - 1.0) * math.log(2.0 * gamma) - log_factorial_vec(idx)
    ha, _ = f.h.log_block(1, N)
    gb, _ = f.g.log_block(1, N)
    ok = (ha <= bound + 1e-12) & (gb <= bound + 1e-12)
    return [(int(n), bool(o)) for n, o in zip(range(1, N + 1), ok)]


def shc_membership_check(f: HarmonicMap, N: int) -> tuple[bool, list[int]]:
    """Quadratic coefficient screen: |a_n|, |b_n| < (2 n^2 + 1)/3 for 2 <= n <= N.

    A necessary-condition screen only; univalence itself is certified
    separately.  Requires a_1 = 1.
    """
    a1 = f.h.coeff(1)
    if abs(a1.log_abs) > 1e-6 or abs(a1.phase) > 1e-6:
        raise NormalizationError("membership screen requires a_1 = 1")
    if N < 2:
        return True, []
    idx = np.arange(2, N + 1, dtype=float)
    bound = np.log((2.0 * idx * idx + 1.0) / 3.0)
    ha, _ = f.h.log_block(2, N)
    gb, _ = f.g.log_block(2, N)
    bad = (ha >= bound) | (gb >= bound)
    violations = [int(n) for n, b in zip(range(2, N + 1), bad) if b]
    return not violations, violations


def coefficient_ratio_delta(
    f: HarmonicMap, n_lo: int, n_hi: int
) -> tuple[float, str]:
    """Tail-max estimates of limsup |b_n/a_n| and |a_n/b_n| over the window.

    Returns the smaller estimate with its direction ('g-over-h' or
    'h-over-g'), or 'mixed' when both estimates are >= 1.
    """
    if not (0 <= n_lo < n_hi):
        raise ValueError("invalid window")
    ha, _ = f.h.log_block(n_lo, n_hi)
    gb, _ = f.g.log_block(n_lo, n_hi)

    def tail_max(num: np.ndarray, den: np.ndarray) -> Optional[float]:
        valid = den > NEG_INF
        if not np.any(valid):
            return None
        diff = num[valid] - den[valid]
        m = float(np.max(diff))
        return math.exp(m) if m > NEG_INF else 0.0

    d_gh = tail_max(gb, ha)
    d_hg = tail_max(ha, gb)
    if d_gh is None and d_hg is None:
        raise InsufficientDataError("no nonzero coefficient pairs in the window")
    if d_gh is None:
        return d_hg, "h-over-g"
    if d_hg is None:
        return d_gh, "g-over-h"
    if d_gh >= 1.0 and d_hg >= 1.0:
        return min(d_gh, d_hg), "mixed"
    if d_gh <= d_hg:
        return d_gh, "g-over-h"
    return d_hg, "h-over-g"
