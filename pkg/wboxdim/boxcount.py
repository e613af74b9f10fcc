"""Column box counting on the graph and the log-log dimension fit."""
from __future__ import annotations

import math
import numbers
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from . import constants
from .errors import BudgetExceeded, InvalidInput
from .logging_utils import get_logger
from .parameters import FractalParams, cell_width, lower_bound_constants
from .series import Graph, WeierstrassGraph
from .settings import DEFAULT_SETTINGS, Settings

LOGGER = get_logger(__name__)

_CHUNK_COLUMNS = 4096


@dataclass(frozen=True)
class FitResult:
    slope: float
    intercept: float
    r_squared: float
    slope_stderr: float


@dataclass(frozen=True)
class BoxCountResult:
    levels: List[int]
    scales: List[float]
    counts: List[int]
    slope: float
    intercept: float
    r_squared: float
    certified_fraction: List[float]
    slope_stderr: float = 0.0

    def rows(self) -> List[Tuple[int, float, int]]:
        return list(zip(self.levels, self.scales, self.counts))

    def to_dict(self) -> Dict[str, object]:
        return {
            "levels": self.levels,
            "scales": self.scales,
            "counts": self.counts,
            "slope": self.slope,
            "intercept": self.intercept,
            "r_squared": self.r_squared,
            "slope_stderr": self.slope_stderr,
            "certified_fraction": self.certified_fraction,
        }


@dataclass(frozen=True)
class CoverSpec:
    m: int
    n_columns: int
    rows_per_column: int
    c_const: float

    @property
    def product(self) -> int:
        return self.n_columns * self.rows_per_column

    def to_dict(self) -> Dict[str, object]:
        return {
            "m": self.m,
            "n_columns": self.n_columns,
            "rows_per_column": self.rows_per_column,
            "c_const": self.c_const,
            "product": self.product,
        }


def column_count(p: FractalParams, m: int) -> int:
    """N_m = (N_b - 1) N_b^m, the number of width-L_m columns over [0, 1]."""
    return (p.n_b - 1) * p.n_b**m


def _check_level(m: object, minimum: int = 0) -> int:
    if isinstance(m, bool) or not isinstance(m, numbers.Integral) or m < minimum:
        raise InvalidInput(f"level must be an integer >= {minimum}, got {m!r}")
    return int(m)


def _column_oscillations(
    p: FractalParams, m: int, graph: Graph, settings: Settings
) -> Tuple[np.ndarray, int]:
    """Per-column sampled oscillation and the number of certified columns.

    Column c is sampled at the exact rationals (c S + t) / (S N_m), t = 0..S;
    S doubles for the columns whose variation bound is still above
    ``settings.refine_threshold`` times their oscillation.
    """

    n_columns = column_count(p, m)
    if n_columns > settings.vertex_budget:
        raise BudgetExceeded(f"box count at m={m}", n_columns, settings.vertex_budget)
    width = 1.0 / n_columns

    oscillations = np.empty(n_columns, dtype=np.float64)
    certified_total = 0
    for start in range(0, n_columns, _CHUNK_COLUMNS):
        columns = np.arange(start, min(start + _CHUNK_COLUMNS, n_columns), dtype=np.int64)
        samples = settings.box_samples
        offsets = np.arange(samples + 1, dtype=np.int64)
        values = graph.at_rationals(columns[:, None] * samples + offsets[None, :], samples * n_columns)
        lo = values.min(axis=1)
        hi = values.max(axis=1)
        active = graph.variation_bound(width / samples) > settings.refine_threshold * (hi - lo)

        while active.any() and 2 * samples <= settings.box_sample_cap:
            samples *= 2
            odd = np.arange(1, samples, 2, dtype=np.int64)
            values = graph.at_rationals(columns[active][:, None] * samples + odd[None, :], samples * n_columns)
            lo[active] = np.minimum(lo[active], values.min(axis=1))
            hi[active] = np.maximum(hi[active], values.max(axis=1))
            active = graph.variation_bound(width / samples) > settings.refine_threshold * (hi - lo)

        oscillations[start : start + columns.shape[0]] = hi - lo
        certified_total += int(np.count_nonzero(~active))
    return oscillations, certified_total


def column_counts(
    p: FractalParams,
    m: int,
    graph: Optional[Graph] = None,
    settings: Settings = DEFAULT_SETTINGS,
) -> np.ndarray:
    """floor(osc_c / L_m) + 1 for every column c."""

    m = _check_level(m)
    if graph is None:
        graph = WeierstrassGraph(p, settings.box_tolerance)
    oscillations, _ = _column_oscillations(p, m, graph, settings)
    return _boxes_per_column(oscillations, column_count(p, m))


def _boxes_per_column(oscillations: np.ndarray, n_columns: int) -> np.ndarray:
    return np.floor(oscillations * n_columns + constants.COUNT_SNAP).astype(np.int64) + 1


def count_boxes(
    p: FractalParams,
    m: int,
    graph: Optional[Graph] = None,
    settings: Settings = DEFAULT_SETTINGS,
) -> int:
    return int(column_counts(p, m, graph, settings).sum())


def linear_fit(x: np.ndarray, y: np.ndarray) -> FitResult:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    slope, intercept = np.polyfit(x, y, 1)
    fitted = slope * x + intercept
    ss_res = float(np.sum((y - fitted) ** 2))
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r_squared = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    n = len(x)
    sxx = float(np.sum((x - x.mean()) ** 2))
    sigma2 = ss_res / (n - 2) if n > 2 else 0.0
    slope_stderr = math.sqrt(sigma2 / sxx) if sxx > 0 else 0.0
    return FitResult(float(slope), float(intercept), r_squared, slope_stderr)


def estimate_dimension(
    p: FractalParams,
    m_min: int,
    m_max: int,
    graph: Optional[Graph] = None,
    settings: Settings = DEFAULT_SETTINGS,
) -> BoxCountResult:
    """Slope of log N(eps) against log(1/eps) over eps = L_m, m in [m_min, m_max]."""

    m_min = _check_level(m_min, minimum=1)
    m_max = _check_level(m_max, minimum=1)
    if not m_min < m_max:
        raise InvalidInput(f"need 1 <= m_min < m_max, got [{m_min}, {m_max}]")
    if column_count(p, m_max) > settings.vertex_budget:
        raise BudgetExceeded(f"box count at m={m_max}", column_count(p, m_max), settings.vertex_budget)
    if graph is None:
        graph = WeierstrassGraph(p, settings.box_tolerance)

    levels = list(range(m_min, m_max + 1))
    scales: List[float] = []
    counts: List[int] = []
    certified: List[float] = []
    for m in levels:
        oscillations, certified_columns = _column_oscillations(p, m, graph, settings)
        n_columns = column_count(p, m)
        count = int(_boxes_per_column(oscillations, n_columns).sum())
        scales.append(cell_width(p, m))
        counts.append(count)
        certified.append(certified_columns / n_columns)
        LOGGER.debug(
            "m=%d: %d boxes over %d columns, %d certified", m, count, n_columns, certified_columns
        )

    fit = linear_fit(np.log(1.0 / np.asarray(scales)), np.log(np.asarray(counts, dtype=float)))
    return BoxCountResult(
        levels=levels,
        scales=scales,
        counts=counts,
        slope=fit.slope,
        intercept=fit.intercept,
        r_squared=fit.r_squared,
        certified_fraction=certified,
        slope_stderr=fit.slope_stderr,
    )


def corollary_cover(p: FractalParams, m: int) -> CoverSpec:
    """The explicit cover: N_m columns of floor(C L_m^(1 - D_W)) + 1 boxes each."""

    m = _check_level(m)
    c_const = lower_bound_constants(p).cover_c
    n_columns = column_count(p, m)
    # L_m^(1 - D_W) = N_m^(D_W - 1)
    rows = int(math.floor(c_const * float(n_columns) ** (p.d_w - 1.0))) + 1
    return CoverSpec(m=m, n_columns=n_columns, rows_per_column=rows, c_const=c_const)


def cover_power_law(p: FractalParams, m_min: int, m_max: int) -> List[Tuple[int, float]]:
    """r_m = N_m * rows_m * L_m^(D_W) for each level; tends to C."""

    m_min = _check_level(m_min)
    m_max = _check_level(m_max)
    if m_min > m_max:
        raise InvalidInput(f"need m_min <= m_max, got [{m_min}, {m_max}]")
    ratios = []
    for m in range(m_min, m_max + 1):
        cover = corollary_cover(p, m)
        ratios.append((m, cover.product * cell_width(p, m) ** p.d_w))
    return ratios
