"""Gap-sequence calculus for derivative indices with univalent derivatives.

Statistics of strictly increasing index sequences, the convergence-radius
lower bounds driven by lambda = liminf n_p / n_{p+1}, the order upper
bound driven by the gap-log ratio, the constant-gap exponential-type
bound, the factorial sandwich used in those proofs, the second-difference
diagnostic, and the end-to-end analysis that gates indices by certified
univalence of the normalized shifted derivatives.

liminf/limsup over finite prefixes are reported as tail-window min/max
with the window size explicit; the bound formulas accept the statistic as
a plain real so they can also be driven by analytically known values.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .coeffcore import HarmonicMap, normalized_shifted_derivative
from .errors import (
    DegenerateMapError,
    DomainError,
    EmptyStreamError,
    NormalizationError,
)
from .loggamma import HALF_LOG_TWO_PI
from .univalence import AnalysisConfig, radius_certificate, shc_membership_check


@dataclass(frozen=True)
class GapSequence:
    """Strictly increasing nonnegative integers, at least three of them."""

    n: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.n) < 3:
            raise ValueError("gap sequence needs at least 3 entries")
        if self.n[0] < 0 or any(b <= a for a, b in zip(self.n, self.n[1:])):
            raise ValueError("gap sequence must be strictly increasing and nonnegative")

    @classmethod
    def from_iterable(cls, values: Sequence[int]) -> "GapSequence":
        return cls(tuple(int(v) for v in values))

    def __len__(self) -> int:
        return len(self.n)


@dataclass(frozen=True)
class GapStats:
    """Tail-window statistics of a gap sequence.

    lambda_tail estimates liminf n_p/n_{p+1} by the minimum over the
    trailing pairs; gaplog_tail estimates limsup log(n_p - n_{p-1})/log n_p
    by the maximum over the trailing gaps; second_diff_ratios lists
    (n_{p+2} - 2 n_{p+1} + n_p)/n_p over the whole sequence.
    """

    lambda_tail: float
    gaplog_tail: float
    second_diff_ratios: list[float] = field(default_factory=list)


def _tail_count(total: int, tail_fraction: float) -> int:
    return max(1, math.ceil(tail_fraction * total))


def gap_stats(seq: GapSequence, tail_fraction: float) -> GapStats:
    """Min/max tail statistics over the trailing tail_fraction of entries."""
    if not (0.0 < tail_fraction <= 1.0):
        raise DomainError("tail_fraction must lie in (0, 1]")
    n = seq.n
    pairs = list(zip(n, n[1:]))
    k = _tail_count(len(pairs), tail_fraction)
    lambda_tail = min(a / b for a, b in pairs[-k:])
    ratios = [
        math.log(b - a) / math.log(b) for a, b in pairs if b >= 2
    ]
    if ratios:
        k2 = _tail_count(len(ratios), tail_fraction)
        gaplog_tail = max(ratios[-k2:])
    else:
        gaplog_tail = 0.0
    second = [
        (n[p + 2] - 2 * n[p + 1] + n[p]) / n[p]
        for p in range(len(n) - 2)
        if n[p] > 0
    ]
    return GapStats(lambda_tail, gaplog_tail, second)


def rf_lower_bound(lam: float) -> float:
    """Convergence-radius lower bound from lambda = liminf n_p/n_{p+1}.

    lambda = 1 forces an entire map (infinite radius); for 0 < lambda < 1
    the bound is lambda^(lambda/(lambda-1)) / (1 - lambda); lambda = 0
    gives 1.
    """
    if not (0.0 <= lam <= 1.0):
        raise DomainError("lambda must lie in [0, 1]")
    if lam == 1.0:
        return math.inf
    if lam == 0.0:
        return 1.0
    return lam ** (lam / (lam - 1.0)) / (1.0 - lam)


def rho_upper_bound(gaplog: float) -> float:
    """Order upper bound 1/(1 - gaplog); gaplog = 1 yields no bound (inf)."""
    if not (0.0 <= gaplog <= 1.0):
        raise DomainError("gap-log ratio must lie in [0, 1]")
    if gaplog == 1.0:
        return math.inf
    return 1.0 / (1.0 - gaplog)


def exp_type_bound(mu: int) -> float:
    """Exponential-type bound sqrt(2 pi) e^(-47/24) (mu+1)^(9/2) for gaps <= mu."""
    if mu < 0 or int(mu) != mu:
        raise DomainError("mu must be a nonnegative integer")
    return math.sqrt(2.0 * math.pi) * math.exp(-47.0 / 24.0) * (mu + 1.0) ** 4.5


def stirling_sandwich(n: int) -> tuple[float, float]:
    """Logs of A n^(1/2) (n/e)^n and B n^(1/2) (n/e)^n, A = sqrt(2 pi), B = A e^(1/24).

    The sandwich brackets log n! for every n >= 2.  At n = 1 the upper
    bound fails (B/e = 0.9614 < 1 = 1!), so callers should start at 2.
    """
    if n < 1 or int(n) != n:
        raise DomainError("n must be a positive integer")
    lower = HALF_LOG_TWO_PI + 0.5 * math.log(n) + n * (math.log(n) - 1.0)
    return lower, lower + 1.0 / 24.0


def second_difference_report(seq: GapSequence) -> list[tuple[int, float]]:
    """(p, (n_{p+2} - 2 n_{p+1} + n_p)/n_p) with 1-based p; zero bases skipped.

    No verdict is attached: a vanishing-trend claim is undecidable from a
    finite prefix, so the report only shows the ratios.
    """
    n = seq.n
    return [
        (p + 1, (n[p + 2] - 2 * n[p + 1] + n[p]) / n[p])
        for p in range(len(n) - 2)
        if n[p] > 0
    ]


@dataclass(frozen=True)
class GapAnalysis:
    """Output of the certified-derivative gap analysis."""

    indices: tuple[int, ...]
    inconclusive: bool
    seq: Optional[GapSequence] = None
    stats: Optional[GapStats] = None
    rf_bound: Optional[float] = None
    rho_bound: Optional[float] = None
    lambda_used: Optional[float] = None
    skipped: dict[int, str] = field(default_factory=dict)


def univalent_gap_analysis(
    f: HarmonicMap, n_max: int, config: AnalysisConfig = AnalysisConfig()
) -> GapAnalysis:
    """Collect derivative indices passing the certification gate and bound R_f, rho.

    An index n qualifies when the normalized shifted derivative passes the
    quadratic coefficient screen and the radius certificate proves
    univalence in the full unit disk (r_lower >= 1).  The gate uses
    sufficient conditions only, so the collected set is a subsequence of
    the maximal hypothesis set and the derived bounds stay valid for it.

    When the trailing gaps are constant the sequence extends to an
    arithmetic progression whose ratio limit is exactly 1, so the radius
    bound is evaluated at lambda = 1; otherwise the finite tail minimum is
    used.  Fewer than three qualifying indices is reported as inconclusive.
    """
    if n_max < 3:
        raise DomainError("n_max must be at least 3")
    indices: list[int] = []
    skipped: dict[int, str] = {}
    for n in range(n_max + 1):
        try:
            nsd = normalized_shifted_derivative(f, n)
        except (NormalizationError, EmptyStreamError, DegenerateMapError) as exc:
            skipped[n] = str(exc)
            continue
        ok, _violations = shc_membership_check(nsd, config.shc_terms)
        if not ok:
            skipped[n] = "coefficient screen failed"
            continue
        try:
            cert = radius_certificate(f, n, config, compute_upper=False)
        except (NormalizationError, DegenerateMapError) as exc:
            skipped[n] = str(exc)
            continue
        if cert.degenerate or cert.r_lower < 1.0:
            skipped[n] = "no unit-disk univalence certificate"
            continue
        indices.append(n)

    if len(indices) < 3:
        return GapAnalysis(tuple(indices), inconclusive=True, skipped=skipped)

    seq = GapSequence.from_iterable(indices)
    stats = gap_stats(seq, config.tail_fraction)
    gaps = [b - a for a, b in zip(seq.n, seq.n[1:])]
    k = _tail_count(len(gaps), config.tail_fraction)
    tail_gaps = gaps[-k:]
    arithmetic_tail = len(set(tail_gaps)) == 1
    lambda_used = 1.0 if arithmetic_tail else stats.lambda_tail
    rf = rf_lower_bound(lambda_used)
    rho = rho_upper_bound(min(max(stats.gaplog_tail, 0.0), 1.0))
    return GapAnalysis(
        indices=tuple(indices),
        inconclusive=False,
        seq=seq,
        stats=stats,
        rf_bound=rf,
        rho_bound=rho,
        lambda_used=lambda_used,
        skipped=skipped,
    )
