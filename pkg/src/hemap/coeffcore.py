"""Value types and arithmetic for harmonic-map coefficient streams.

A harmonic map f = h + conj(g) is represented by two coefficient streams.
Coefficients are stored in log-polar form (ScaledComplex) because the
quantities under study mix factorial-scale magnitudes with geometric
factors; plain doubles fail past n ~ 170.

All types are immutable values and every operation is a pure function, so
everything here is safe for concurrent reads.  Reductions (series sums,
maxima) run in a fixed index order, which makes results bit-reproducible
across runs.
"""
from __future__ import annotations

import math
import sys
import warnings
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import (
    DegenerateMapError,
    EmptyStreamError,
    EvaluationOverflowError,
    NormalizationError,
)
from .loggamma import log_gamma_vec

NEG_INF = float("-inf")
_TWO_PI = 2.0 * math.pi
_LOG_MAX = math.log(sys.float_info.max)  # ~ 709.78
_SKIP_MARGIN = 40.0  # nats below the tolerance at which terms may be dropped

_OVERFLOW_MSG = "value exceeds representable range; use log-domain norms"


def _wrap_phase(p: float) -> float:
    """Reduce an angle into (-pi, pi]."""
    w = p % _TWO_PI
    if w > math.pi:
        w -= _TWO_PI
    return w


def _wrap_phase_arr(p: np.ndarray) -> np.ndarray:
    w = np.mod(p, _TWO_PI)
    return np.where(w > math.pi, w - _TWO_PI, w)


@dataclass(frozen=True)
class ScaledComplex:
    """A complex number stored as (log of magnitude, phase).

    log_abs = -inf encodes zero, in which case the phase is forced to 0 so
    zero has a single representation.  Phases are kept in (-pi, pi].
    """

    log_abs: float
    phase: float = 0.0

    def __post_init__(self) -> None:
        if math.isnan(self.log_abs) or math.isnan(self.phase):
            raise ValueError("ScaledComplex fields must not be NaN")
        if self.log_abs == NEG_INF:
            object.__setattr__(self, "phase", 0.0)
        else:
            object.__setattr__(self, "phase", _wrap_phase(self.phase))

    @classmethod
    def zero(cls) -> "ScaledComplex":
        return cls(NEG_INF, 0.0)

    @classmethod
    def one(cls) -> "ScaledComplex":
        return cls(0.0, 0.0)

    @classmethod
    def from_complex(cls, z: complex) -> "ScaledComplex":
        z = complex(z)
        if z == 0:
            return cls.zero()
        # math.atan2 handles subnormal components where cmath.phase overflows
        return cls(math.log(abs(z)), math.atan2(z.imag, z.real))

    @classmethod
    def from_real(cls, x: float) -> "ScaledComplex":
        if x == 0:
            return cls.zero()
        return cls(math.log(abs(x)), 0.0 if x > 0 else math.pi)

    @property
    def is_zero(self) -> bool:
        return self.log_abs == NEG_INF

    def to_complex(self) -> complex:
        """Ordinary complex value; raises OverflowError past the double range."""
        if self.is_zero:
            return 0j
        m = math.exp(self.log_abs)  # OverflowError for log_abs > ~709.78
        return complex(m * math.cos(self.phase), m * math.sin(self.phase))

    def abs_value(self) -> float:
        if self.is_zero:
            return 0.0
        return math.exp(self.log_abs)

    def conjugate(self) -> "ScaledComplex":
        return ScaledComplex(self.log_abs, -self.phase)

    def scaled(self, log_delta: float, phase_delta: float = 0.0) -> "ScaledComplex":
        """Multiply by the number with log-magnitude log_delta and given phase."""
        if self.is_zero:
            return self
        return ScaledComplex(self.log_abs + log_delta, self.phase + phase_delta)

    def __mul__(self, other: "ScaledComplex") -> "ScaledComplex":
        if self.is_zero or other.is_zero:
            return ScaledComplex.zero()
        return ScaledComplex(self.log_abs + other.log_abs, self.phase + other.phase)

    def __truediv__(self, other: "ScaledComplex") -> "ScaledComplex":
        if other.is_zero:
            raise ZeroDivisionError("division by scaled-complex zero")
        if self.is_zero:
            return self
        return ScaledComplex(self.log_abs - other.log_abs, self.phase - other.phase)


def scaled_sum(log_abs: np.ndarray, phase: np.ndarray) -> ScaledComplex:
    """Exact-compensated sum of scaled terms, returned in scaled form.

    The common exponent is the maximum log-magnitude, so the intermediate
    sum never overflows regardless of the term scale.
    """
    log_abs = np.asarray(log_abs, dtype=float)
    phase = np.asarray(phase, dtype=float)
    finite = log_abs > NEG_INF
    if not np.any(finite):
        return ScaledComplex.zero()
    m = float(np.max(log_abs[finite]))
    mag = np.exp(log_abs - m)
    re = math.fsum((mag * np.cos(phase)).tolist())
    im = math.fsum((mag * np.sin(phase)).tolist())
    if re == 0.0 and im == 0.0:
        return ScaledComplex.zero()
    return ScaledComplex(m + math.log(math.hypot(re, im)), math.atan2(im, re))


class CoeffStream:
    """Indexed access to series coefficients a_0, a_1, ... in log-polar form.

    A stream is either finite (all values materialized, declared length
    ``n_max``) or a closed-form generator (``n_max`` is None, meaning
    unbounded).  Indices past a finite ``n_max`` read as zero.  Streams are
    immutable after construction; the lazy materialization cache only grows
    and is idempotent, so concurrent reads are safe.
    """

    def __init__(
        self,
        fn: Callable[[np.ndarray], tuple[np.ndarray, np.ndarray]] | None,
        n_max: int | None,
        label: str = "",
    ) -> None:
        self._fn = fn
        self.n_max = n_max
        self.label = label
        self._log = np.empty(0, dtype=float)
        self._ph = np.empty(0, dtype=float)

    # -- construction -------------------------------------------------

    @classmethod
    def from_function(
        cls,
        fn: Callable[[np.ndarray], tuple[np.ndarray, np.ndarray]],
        n_max: int | None = None,
        label: str = "",
    ) -> "CoeffStream":
        """Stream backed by a vectorized index -> (log_abs, phase) rule.

        ``fn`` is always called with a contiguous ascending index range.
        """
        return cls(fn, n_max, label)

    @classmethod
    def from_complex_seq(cls, values: Iterable[complex], label: str = "") -> "CoeffStream":
        vals = [complex(v) for v in values]
        if not vals:
            vals = [0j]
        sc = [ScaledComplex.from_complex(v) for v in vals]
        return cls.from_scaled_seq(sc, label)

    @classmethod
    def from_scaled_seq(cls, values: Sequence[ScaledComplex], label: str = "") -> "CoeffStream":
        if not values:
            values = [ScaledComplex.zero()]
        s = cls(None, len(values) - 1, label)
        s._log = np.array([v.log_abs for v in values], dtype=float)
        s._ph = np.array([v.phase for v in values], dtype=float)
        return s

    @classmethod
    def zeros(cls, label: str = "0") -> "CoeffStream":
        def fn(idx: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
            z = np.full(idx.shape, NEG_INF)
            return z, np.zeros(idx.shape)

        return cls(fn, None, label)

    # -- access -------------------------------------------------------

    def _ensure(self, n: int) -> None:
        have = self._log.size
        hi = n if self.n_max is None else min(n, self.n_max)
        if hi < have:
            return
        if self._fn is None:
            return  # finite, fully materialized; reads past the end are zero
        new_hi = max(hi, 2 * have, 64)
        if self.n_max is not None:
            new_hi = min(new_hi, self.n_max)
        idx = np.arange(have, new_hi + 1, dtype=np.int64)
        log, ph = self._fn(idx)
        log = np.asarray(log, dtype=float)
        ph = np.asarray(ph, dtype=float)
        if log.shape != idx.shape or ph.shape != idx.shape:
            raise ValueError(f"stream rule returned wrong shape for {self.label!r}")
        ph = _wrap_phase_arr(ph)
        ph = np.where(log == NEG_INF, 0.0, ph)
        self._log = np.concatenate([self._log, log])
        self._ph = np.concatenate([self._ph, ph])

    def log_block(self, n0: int, n1: int) -> tuple[np.ndarray, np.ndarray]:
        """(log_abs, phase) arrays for indices n0..n1 inclusive, zero-padded."""
        if n0 < 0 or n1 < n0:
            raise ValueError("invalid index range")
        self._ensure(n1)
        size = n1 - n0 + 1
        log = np.full(size, NEG_INF)
        ph = np.zeros(size)
        avail = min(n1, self._log.size - 1)
        if avail >= n0:
            log[: avail - n0 + 1] = self._log[n0 : avail + 1]
            ph[: avail - n0 + 1] = self._ph[n0 : avail + 1]
        return log, ph

    def coeff(self, n: int) -> ScaledComplex:
        """Coefficient at index n; deterministic across repeated calls."""
        if n < 0:
            raise ValueError("coefficient index must be >= 0")
        log, ph = self.log_block(n, n)
        return ScaledComplex(float(log[0]), float(ph[0]))

    def __repr__(self) -> str:  # pragma: no cover
        length = "unbounded" if self.n_max is None else str(self.n_max)
        return f"CoeffStream({self.label!r}, n_max={length})"


def _with_index0(s: CoeffStream, value: ScaledComplex, label: str | None = None) -> CoeffStream:
    """Copy of a stream with the index-0 coefficient replaced."""

    def fn(idx: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        log, ph = s.log_block(int(idx[0]), int(idx[-1]))
        if idx[0] == 0:
            log = log.copy()
            ph = ph.copy()
            log[0] = value.log_abs
            ph[0] = value.phase
        return log, ph

    return CoeffStream.from_function(fn, s.n_max, label if label is not None else s.label)


@dataclass(frozen=True)
class HarmonicMap:
    """Pair of coefficient streams for f = h + conj(g), with g(0) = 0."""

    h: CoeffStream
    g: CoeffStream

    def __post_init__(self) -> None:
        if not self.g.coeff(0).is_zero:
            raise ValueError("harmonic map requires g(0) = 0")

    @classmethod
    def analytic(cls, h: CoeffStream) -> "HarmonicMap":
        return cls(h, CoeffStream.zeros())

    def a(self, n: int) -> ScaledComplex:
        return self.h.coeff(n)

    def b(self, n: int) -> ScaledComplex:
        return self.g.coeff(n)


def conjugate_map(f: HarmonicMap) -> HarmonicMap:
    """The map z -> conj(f(z)).

    conj(f) = g + conj(h); the constant term of h moves (conjugated) into
    the analytic part so the g(0) = 0 normalization is preserved.
    """
    a0 = f.h.coeff(0)
    new_h = _with_index0(f.g, a0.conjugate(), label=f"conj[{f.h.label}]")
    new_g = _with_index0(f.h, ScaledComplex.zero(), label=f.h.label)
    return HarmonicMap(new_h, new_g)


@dataclass(frozen=True)
class EvalResult:
    """Series evaluation output with a documented tail estimate.

    truncation_bound bounds the absolute tail error under the geometric
    estimate: the last per-step term ratio is assumed to persist.
    """

    value: complex
    terms_used: int
    truncation_bound: float


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------


def derivative_stream(s: CoeffStream, n: int) -> CoeffStream:
    """Coefficient stream of the n-th derivative.

    Index k of the result is ((n+k)!/k!) * coeff(n+k), with the factorial
    ratio computed in the log domain.
    """
    if n < 0 or int(n) != n:
        raise ValueError("derivative order must be a nonnegative integer")
    n = int(n)
    if n == 0:
        return s
    if s.n_max is not None and n > s.n_max:
        raise EmptyStreamError(
            f"derivative order {n} exceeds stream length {s.n_max} of {s.label!r}"
        )

    def fn(idx: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        log, ph = s.log_block(int(idx[0]) + n, int(idx[-1]) + n)
        k = idx.astype(float)
        fac = log_gamma_vec(k + (n + 1.0)) - log_gamma_vec(k + 1.0)
        return log + fac, ph

    new_max = None if s.n_max is None else s.n_max - n
    return CoeffStream.from_function(fn, new_max, f"D{n}[{s.label}]")


def affine_combine(h: CoeffStream, lam: complex) -> HarmonicMap:
    """The map h + lam * conj(h), with the constant stripped from the g part."""
    lam = complex(lam)
    if abs(lam) >= 1.0:
        warnings.warn(
            "affine parameter has modulus >= 1; the map is not sense-preserving",
            stacklevel=2,
        )
    if lam == 0:
        return HarmonicMap(h, CoeffStream.zeros())
    ls = ScaledComplex.from_complex(lam)

    def fn(idx: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        log, ph = h.log_block(int(idx[0]), int(idx[-1]))
        log = log + ls.log_abs
        ph = ph + ls.phase
        if idx[0] == 0:
            log = log.copy()
            log[0] = NEG_INF
            ph = ph.copy()
            ph[0] = 0.0
        return log, ph

    g = CoeffStream.from_function(fn, h.n_max, f"{lam}*[{h.label}]")
    return HarmonicMap(h, g)


def _geometric_tail_bound(log_terms: np.ndarray, exhausted: bool) -> float:
    """Tail bound from the per-step ratio of the last two nonzero terms."""
    if exhausted:
        return 0.0
    finite = np.flatnonzero(log_terms > NEG_INF)
    if finite.size == 0:
        return 0.0
    if finite.size == 1:
        return math.inf
    i1, i2 = int(finite[-2]), int(finite[-1])
    log_q = (log_terms[i2] - log_terms[i1]) / (i2 - i1)
    if log_q >= 0.0:
        return math.inf
    q = math.exp(log_q)
    try:
        t = math.exp(log_terms[i2])
    except OverflowError:
        return math.inf
    return t * q / (1.0 - q)


def _eval_stream_plain(
    s: CoeffStream, z: complex, N: int, tol: float
) -> tuple[complex, int, float]:
    if z == 0:
        try:
            v = s.coeff(0).to_complex()
        except OverflowError:
            raise EvaluationOverflowError(_OVERFLOW_MSG) from None
        return v, 1, 0.0
    n_eff = N if s.n_max is None else min(N, s.n_max)
    log_r = math.log(abs(z))
    th = math.atan2(z.imag, z.real)
    idx = np.arange(n_eff + 1, dtype=float)
    log, ph = s.log_block(0, n_eff)
    L = log + idx * log_r
    PH = ph + idx * th
    keep = L >= math.log(tol) - _SKIP_MARGIN
    if np.any(L[keep] > _LOG_MAX):
        raise EvaluationOverflowError(_OVERFLOW_MSG)
    mags = np.exp(L[keep])
    phs = PH[keep]
    re = math.fsum((mags * np.cos(phs)).tolist())
    im = math.fsum((mags * np.sin(phs)).tolist())
    exhausted = s.n_max is not None and n_eff >= s.n_max
    bound = _geometric_tail_bound(L, exhausted)
    return complex(re, im), int(np.count_nonzero(keep)), bound


def evaluate(f: HarmonicMap, z: complex, N: int, tol: float) -> EvalResult:
    """Partial-sum value of f at z with N+1 terms per part.

    Terms are reconstructed from the log domain and summed with exact
    compensated summation in a fixed index order; terms whose log-magnitude
    falls below log(tol) - 40 may be skipped.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    z = complex(z)
    vh, uh, bh = _eval_stream_plain(f.h, z, N, tol)
    vg, ug, bg = _eval_stream_plain(f.g, z, N, tol)
    return EvalResult(vh + vg.conjugate(), uh + ug, bh + bg)


def jacobian(f: HarmonicMap, z: complex, N: int) -> float:
    """|h'(z)|^2 - |g'(z)|^2 from the derivative streams."""
    dh = derivative_stream(f.h, 1)
    dg = derivative_stream(f.g, 1)
    vh, _, _ = _eval_stream_plain(dh, complex(z), N, 1e-280)
    vg, _, _ = _eval_stream_plain(dg, complex(z), N, 1e-280)
    return abs(vh) ** 2 - abs(vg) ** 2


def _normalized_tail(s: CoeffStream, lead: ScaledComplex, label: str) -> CoeffStream:
    """Stream with index 0 zeroed and every other index divided by lead."""

    def fn(idx: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        log, ph = s.log_block(int(idx[0]), int(idx[-1]))
        log = log - lead.log_abs
        ph = ph - lead.phase
        if idx[0] == 0:
            log = log.copy()
            log[0] = NEG_INF
            ph = ph.copy()
            ph[0] = 0.0
        return log, ph

    return CoeffStream.from_function(fn, s.n_max, label)


def normalized_shifted_derivative(f: HarmonicMap, n: int) -> HarmonicMap:
    """The renormalized n-th derivative with unit coefficient at index 1.

    Returns (h^(n) - n! a_n)/((n+1)! a_{n+1}) + conj of the matching g part
    divided by the same normalizer.  The analytic coefficient at index 1 is
    exactly one by construction.
    """
    dh = derivative_stream(f.h, n)
    dg = derivative_stream(f.g, n)
    lead = dh.coeff(1)
    if lead.is_zero:
        raise NormalizationError(
            f"coefficient a_{n + 1} vanishes; the shifted derivative cannot be normalized"
        )
    H = _normalized_tail(dh, lead, f"N{n}h[{f.h.label}]")
    G = _normalized_tail(dg, lead, f"N{n}g[{f.g.label}]")
    return HarmonicMap(H, G)


def shifted_derivative_map(f: HarmonicMap, n: int) -> HarmonicMap:
    """n-th derivative map with constant terms removed.

    Dropping the constants changes the map by a translation only, so the
    Jacobian and every univalence radius are unchanged.
    """
    dh = derivative_stream(f.h, n)
    dg = derivative_stream(f.g, n)
    H = _with_index0(dh, ScaledComplex.zero())
    G = _with_index0(dg, ScaledComplex.zero())
    return HarmonicMap(H, G)


def eval_stream_circle(
    s: CoeffStream, log_r: float, n_theta: int, N: int
) -> tuple[float, np.ndarray]:
    """Scaled values of sum coeff(n) z^n on the uniform circle grid.

    Returns (scale, vals) with the true values equal to vals * exp(scale)
    at theta_k = 2 pi k / n_theta.  Powers beyond the grid size alias onto
    n mod n_theta, which is exact on this grid, so the whole evaluation is
    one inverse FFT of the folded coefficient vector.
    """
    n_eff = N if s.n_max is None else min(N, s.n_max)
    idx = np.arange(n_eff + 1, dtype=float)
    log, ph = s.log_block(0, n_eff)
    L = log + idx * log_r
    finite = L > NEG_INF
    if not np.any(finite):
        return NEG_INF, np.zeros(n_theta, dtype=complex)
    m = float(np.max(L[finite]))
    c = np.exp(L - m) * np.exp(1j * ph)
    pad = (-c.size) % n_theta
    if pad:
        c = np.concatenate([c, np.zeros(pad, dtype=complex)])
    folded = c.reshape(-1, n_theta).sum(axis=0)
    vals = np.fft.ifft(folded) * n_theta
    return m, vals


def eval_map_circle(
    f: HarmonicMap, log_r: float, n_theta: int, N: int
) -> tuple[float, np.ndarray]:
    """Scaled values of f on the uniform circle grid: (scale, values)."""
    mh, vh = eval_stream_circle(f.h, log_r, n_theta, N)
    mg, vg = eval_stream_circle(f.g, log_r, n_theta, N)
    scale = max(mh, mg)
    if scale == NEG_INF:
        return 0.0, np.zeros(n_theta, dtype=complex)
    vals = vh * math.exp(mh - scale) + np.conj(vg) * math.exp(mg - scale)
    return scale, vals
