"""Vertical increments h_{j,m} between consecutive vertices and their two-sided bounds."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import numpy as np

from . import constants
from .errors import InvalidInput
from .ifs import Word, apply_word, check_index, fixed_points
from .logging_utils import get_logger
from .parameters import (
    FractalParams,
    Reading,
    cell_width,
    degenerate_j,
    fixed_abscissa,
    lower_bound_constants,
    scale_factor,
)
from .settings import DEFAULT_SETTINGS, Settings

LOGGER = get_logger(__name__)


@dataclass(frozen=True)
class IncrementRecord:
    word: Word
    j: int
    l_m: float
    h: float
    lower: float
    upper: float
    lower_raw: float

    @property
    def ratio_lower(self) -> Optional[float]:
        """|h| / lower, or None when the lower bound is vacuous."""
        if self.lower <= 0.0:
            return None
        return abs(self.h) / self.lower

    @property
    def ratio_upper(self) -> float:
        return abs(self.h) / self.upper

    def to_dict(self, n_b: int) -> Dict[str, object]:
        return {
            "word": self.word.encode(n_b),
            "j": self.j,
            "l_m": self.l_m,
            "h": self.h,
            "lower": self.lower,
            "upper": self.upper,
            "ratio_lower": self.ratio_lower,
            "ratio_upper": self.ratio_upper,
        }


@dataclass(frozen=True)
class BoundsReport:
    m: int
    pairs_checked: int
    exhaustive: bool
    violations_lower: int
    violations_upper: int
    skipped_nonpositive_lower: int
    min_ratio_lower: Optional[float]
    max_ratio_upper: float
    worst: List[IncrementRecord] = field(default_factory=list)
    max_decomposition_residual: float = 0.0
    reading: Reading = Reading.PRINTED

    @property
    def passed(self) -> bool:
        return self.violations_lower == 0 and self.violations_upper == 0

    def to_payload(self, n_b: int) -> Dict[str, object]:
        return {
            "m": self.m,
            "pairs_checked": self.pairs_checked,
            "exhaustive": self.exhaustive,
            "violations_lower": self.violations_lower,
            "violations_upper": self.violations_upper,
            "skipped_nonpositive_lower": self.skipped_nonpositive_lower,
            "min_ratio_lower": self.min_ratio_lower,
            "max_ratio_upper": self.max_ratio_upper,
            "worst": [record.to_dict(n_b) for record in self.worst],
        }


def _check_pair(p: FractalParams, w: Word, j: int) -> int:
    w.validate(p.n_b)
    return check_index(p, j, p.n_b - 2)


def increment_h(p: FractalParams, w: Word, j: int) -> float:
    """y(T_M P_(j+1)) - y(T_M P_j)."""

    j = _check_pair(p, w, j)
    points = fixed_points(p)
    return apply_word(p, w, points[j + 1]).y - apply_word(p, w, points[j]).y


def _xi(p: FractalParams, w: Word, j: int) -> List[Fraction]:
    """xi_1 .. xi_m for the vertex P_j of the cell ``w``."""
    xi = fixed_abscissa(p, j)
    values = []
    for s in range(1, w.length + 1):
        xi = (xi + w.digits[w.length - s]) / p.n_b
        values.append(xi)
    return values


def _sin_pi(value: Fraction) -> float:
    reduced = value % 2
    return math.sin(math.pi * (reduced.numerator / reduced.denominator))


def increment_decomposition(p: FractalParams, w: Word, j: int) -> Tuple[float, float]:
    """Split h into the lambda^m (y_(j+1) - y_j) term and the cosine-difference series."""

    j = _check_pair(p, w, j)
    m = w.length
    n = p.n_b
    if j == degenerate_j(p):
        leading = 0.0
    else:
        leading = (
            -2.0 * p.lam**m / (1.0 - p.lam)
            * math.sin(math.pi / (n - 1))
            * _sin_pi(Fraction(2 * j + 1, n - 1))
        )
    series = 0.0
    for s, (left, right) in enumerate(zip(_xi(p, w, j), _xi(p, w, j + 1)), start=1):
        series += p.lam ** (m - s) * math.sin(math.pi / ((n - 1) * n**s)) * _sin_pi(left + right)
    return leading, -2.0 * series


def series_majorant(p: FractalParams, m: int) -> Tuple[float, float]:
    """(2 sum_s lambda^(m-s) sin(pi / ((N_b-1) N_b^s)), lambda^m 2 pi / ((N_b-1)(lambda N_b - 1)))."""

    n = p.n_b
    exact = 2.0 * sum(p.lam ** (m - s) * math.sin(math.pi / ((n - 1) * n**s)) for s in range(1, m + 1))
    ceiling = p.lam**m * 2.0 * math.pi / ((n - 1) * (p.lam * n - 1.0))
    return exact, ceiling


def theorem_bounds(p: FractalParams, m: int, reading: Reading = Reading.PRINTED) -> Tuple[float, float]:
    constants_ = lower_bound_constants(p, reading)
    scale = scale_factor(p, m)
    return max(0.0, constants_.effective_lower) * scale, constants_.eta_w * scale


def _pair_digits(
    p: FractalParams, m: int, budget: int, rng: np.random.Generator
) -> Tuple[np.ndarray, np.ndarray, bool]:
    n = p.n_b
    total = (n - 1) * n**m
    if total <= budget:
        cells = np.repeat(np.arange(n**m, dtype=np.int64), n - 1)
        js = np.tile(np.arange(n - 1, dtype=np.int64), n**m)
        powers = n ** np.arange(m - 1, -1, -1, dtype=np.int64)
        digits = (cells[:, None] // powers[None, :]) % n
        return digits, js, True
    digits = rng.integers(0, n, size=(budget, m), dtype=np.int64)
    js = rng.integers(0, n - 1, size=budget, dtype=np.int64)
    return digits, js, False


def _trace(p: FractalParams, digits: np.ndarray, start: np.ndarray) -> Tuple[np.ndarray, np.ndarray, List[np.ndarray]]:
    """Apply T_(M_m) first and T_(M_1) last to the fixed points at ``start``."""

    n = p.n_b
    xs = start / (n - 1)
    ys = np.cos(2.0 * np.pi * xs) / (1.0 - p.lam)
    xis = []
    for column in range(digits.shape[1] - 1, -1, -1):
        xs = (xs + digits[:, column]) / n
        ys = p.lam * ys + np.cos(2.0 * np.pi * xs)
        xis.append(xs)
    return xs, ys, xis


def verify_theorem(
    p: FractalParams,
    m: int,
    budget: Optional[int] = None,
    seed: int = constants.DEFAULT_SEED,
    reading: Reading = Reading.PRINTED,
    settings: Settings = DEFAULT_SETTINGS,
) -> BoundsReport:
    """Check lower <= |h_(j,m)| <= upper over within-cell pairs.

    Every pair is checked when (N_b - 1) N_b^m fits the budget; otherwise
    ``budget`` pairs are drawn with a seeded PCG64 generator.
    """

    if isinstance(m, bool) or not isinstance(m, int) or m < 1:
        raise InvalidInput(f"level m must be an integer >= 1, got {m!r}")
    if budget is None:
        budget = settings.verify_budget
    if budget < 1:
        raise InvalidInput(f"budget must be positive, got {budget}")

    bound_constants = lower_bound_constants(p, reading)
    lower_raw = bound_constants.effective_lower
    lower, upper = theorem_bounds(p, m, reading)
    digits, js, exhaustive = _pair_digits(p, m, budget, np.random.default_rng(seed))
    count = js.shape[0]
    LOGGER.debug(
        "Checking %d pairs at m=%d (%s), bounds [%r, %r]",
        count,
        m,
        "exhaustive" if exhaustive else f"sampled, seed {seed}",
        lower,
        upper,
    )

    _, left, left_xis = _trace(p, digits, js.astype(np.float64))
    _, right, right_xis = _trace(p, digits, (js + 1).astype(np.float64))
    h = right - left
    magnitude = np.abs(h)

    n = p.n_b
    skip = degenerate_j(p)
    leading = -2.0 * p.lam**m / (1.0 - p.lam) * math.sin(math.pi / (n - 1)) * np.sin(np.pi * (2 * js + 1) / (n - 1))
    if skip is not None:
        leading = np.where(js == skip, 0.0, leading)
    series = np.zeros(count)
    for s, (xi_left, xi_right) in enumerate(zip(left_xis, right_xis), start=1):
        series += p.lam ** (m - s) * math.sin(math.pi / ((n - 1) * n**s)) * np.sin(np.pi * (xi_left + xi_right))
    residual = float(np.max(np.abs(leading - 2.0 * series - h))) if count else 0.0

    upper_slack = constants.ABSOLUTE_SLACK + constants.RELATIVE_SLACK * upper
    violations_upper = int(np.count_nonzero(magnitude > upper + upper_slack))
    ratio_upper = magnitude / upper

    if lower_raw > 0.0:
        lower_slack = constants.ABSOLUTE_SLACK + constants.RELATIVE_SLACK * lower
        violations_lower = int(np.count_nonzero(magnitude < lower - lower_slack))
        skipped = 0
        min_ratio_lower: Optional[float] = float(np.min(magnitude) / lower)
        with np.errstate(divide="ignore"):
            lower_severity = lower / magnitude
    else:
        violations_lower = 0
        skipped = count
        min_ratio_lower = None
        lower_severity = np.zeros(count)

    severity = np.maximum(lower_severity, ratio_upper)
    # lexsort: last key is primary; ties fall back to word order, then j
    keys = [js] + [digits[:, column] for column in range(m - 1, -1, -1)] + [-severity]
    order = np.lexsort(keys)[: settings.worst_count]
    l_m = cell_width(p, m)
    worst = [
        IncrementRecord(
            word=Word(tuple(int(d) for d in digits[index])),
            j=int(js[index]),
            l_m=l_m,
            h=float(h[index]),
            lower=lower,
            upper=upper,
            lower_raw=lower_raw * scale_factor(p, m),
        )
        for index in order
    ]

    report = BoundsReport(
        m=m,
        pairs_checked=count,
        exhaustive=exhaustive,
        violations_lower=violations_lower,
        violations_upper=violations_upper,
        skipped_nonpositive_lower=skipped,
        min_ratio_lower=min_ratio_lower,
        max_ratio_upper=float(np.max(ratio_upper)),
        worst=worst,
        max_decomposition_residual=residual,
        reading=reading,
    )
    LOGGER.debug(
        "m=%d: %d lower and %d upper violations, decomposition residual %.3e",
        m,
        violations_lower,
        violations_upper,
        residual,
    )
    return report


def check_increment(p: FractalParams, w: Word, j: int, reading: Reading = Reading.PRINTED) -> IncrementRecord:
    """Single-pair version of the verification, used for spot checks."""

    h = increment_h(p, w, j)
    lower, upper = theorem_bounds(p, w.length, reading)
    raw = lower_bound_constants(p, reading).effective_lower * scale_factor(p, w.length)
    return IncrementRecord(
        word=w, j=j, l_m=cell_width(p, w.length), h=h, lower=lower, upper=upper, lower_raw=raw
    )
