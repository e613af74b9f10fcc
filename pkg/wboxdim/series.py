"""Truncated Weierstrass series with exact phase reduction, plus sampled oscillation."""
from __future__ import annotations

import math
import numbers
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Protocol, Union

import numpy as np

from . import constants
from .errors import InvalidInput, ToleranceTooSmall
from .logging_utils import get_logger
from .parameters import FractalParams, eta_w
from .settings import DEFAULT_SETTINGS, Settings

LOGGER = get_logger(__name__)

Abscissa = Union[int, float, Fraction]

_TWO_PI = 2.0 * math.pi
_PHASE_UNIT = _TWO_PI / 2.0**64


@dataclass(frozen=True)
class SeriesTruncation:
    k_terms: int
    tail_bound: float
    phase_error_budget: float


@dataclass(frozen=True)
class OscillationEstimate:
    lo: float
    hi: float
    samples_used: int
    certified: bool = False

    @property
    def osc(self) -> float:
        return self.hi - self.lo

    def to_dict(self) -> dict:
        return {
            "lo": self.lo,
            "hi": self.hi,
            "osc": self.osc,
            "samples_used": self.samples_used,
            "certified": self.certified,
        }


def truncation_for(p: FractalParams, tol: float, cap: Optional[int] = None) -> SeriesTruncation:
    """Smallest K with lambda^(K+1) / (1 - lambda) <= tol."""

    if cap is None:
        cap = DEFAULT_SETTINGS.truncation_cap
    if not isinstance(tol, numbers.Real) or not math.isfinite(tol) or tol <= 0:
        raise InvalidInput(f"tolerance must be a positive finite number, got {tol!r}")

    k_terms = 0
    tail = p.lam / (1.0 - p.lam)
    while tail > tol:
        k_terms += 1
        if k_terms > cap:
            needed = math.ceil(math.log(tol * (1.0 - p.lam)) / math.log(p.lam) - 1.0)
            raise ToleranceTooSmall(tol, max(needed, k_terms), cap)
        tail *= p.lam

    budget = sum(p.lam**n * _TWO_PI * n * p.n_b for n in range(k_terms + 1)) * 2.0**-52
    LOGGER.debug(
        "Truncating at K=%d (tail %.3e, phase error budget %.3e)", k_terms, tail, budget
    )
    return SeriesTruncation(k_terms=k_terms, tail_bound=tail, phase_error_budget=budget)


def _as_fraction(x: Abscissa) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, numbers.Real):
        raise InvalidInput(f"abscissa must be a real number, got {x!r}")
    try:
        return Fraction(x)
    except (ValueError, OverflowError) as exc:
        raise InvalidInput(f"abscissa must be finite, got {x!r}") from exc


def eval_w(p: FractalParams, x: Abscissa, tol: float = constants.DEFAULT_TOLERANCE) -> float:
    """W(x) truncated to the tolerance.

    The phases N_b^n x mod 1 are carried as integer residues of the exact
    rational value of ``x``, so only the final cosine sees rounding.
    """

    k_terms = truncation_for(p, tol).k_terms
    frac = _as_fraction(x)
    den = frac.denominator
    residue = frac.numerator % den
    total = 0.0
    weight = 1.0
    for _ in range(k_terms + 1):
        total += weight * math.cos(_TWO_PI * (residue / den))
        weight *= p.lam
        residue = (residue * p.n_b) % den
    return total


def series_at(p: FractalParams, xs: np.ndarray, k_terms: int) -> np.ndarray:
    """Vectorized partial sum at float abscissae.

    Each fractional part is held as a uint64 count of 2**-64 turns; the
    multiplication by N_b wraps modulo 2**64, which is reduction mod 1.
    The conversion to turns is exact only when the fractional part is at
    least 2**-11 (or zero, or on a dyadic grid no finer than 2**-64).
    Smaller fractional parts lose the bits below 2**-64 and that error is
    multiplied by N_b at every term; use ``series_at_rationals`` there.
    """

    xs = np.asarray(xs, dtype=np.float64)
    frac = xs - np.floor(xs)
    frac = np.where(frac >= 1.0, 0.0, frac)
    phase = np.ldexp(frac, 64).astype(np.uint64)
    base = np.uint64(p.n_b)
    total = np.zeros(xs.shape, dtype=np.float64)
    weight = 1.0
    for _ in range(k_terms + 1):
        total += weight * np.cos(phase.astype(np.float64) * _PHASE_UNIT)
        weight *= p.lam
        phase = phase * base
    return total


def series_at_rationals(
    p: FractalParams, numerators: np.ndarray, denominator: int, k_terms: int
) -> np.ndarray:
    """Vectorized partial sum at numerators / denominator using int64 residues."""

    denominator = int(denominator)
    if denominator <= 0:
        raise InvalidInput(f"denominator must be positive, got {denominator}")
    if denominator * p.n_b >= 2**63:
        raise InvalidInput(f"denominator {denominator} is too large for int64 residues")
    residues = np.mod(np.asarray(numerators, dtype=np.int64), denominator)
    total = np.zeros(residues.shape, dtype=np.float64)
    weight = 1.0
    for _ in range(k_terms + 1):
        total += weight * np.cos(residues * (_TWO_PI / denominator))
        weight *= p.lam
        residues = (residues * p.n_b) % denominator
    return total


class Graph(Protocol):
    """Anything box counting and oscillation sampling can evaluate."""

    def at(self, xs: np.ndarray) -> np.ndarray:
        ...

    def at_rationals(self, numerators: np.ndarray, denominator: int) -> np.ndarray:
        ...

    def variation_bound(self, spacing: float) -> float:
        ...


class WeierstrassGraph:
    """The truncated series together with its Holder-type variation bound."""

    def __init__(self, p: FractalParams, tol: float = constants.DEFAULT_TOLERANCE) -> None:
        self.params = p
        self.truncation = truncation_for(p, tol)
        self.tol = tol
        self._eta = eta_w(p)

    @property
    def k_terms(self) -> int:
        return self.truncation.k_terms

    def at(self, xs: np.ndarray) -> np.ndarray:
        return series_at(self.params, xs, self.k_terms)

    def at_rationals(self, numerators: np.ndarray, denominator: int) -> np.ndarray:
        return series_at_rationals(self.params, numerators, denominator, self.k_terms)

    def variation_bound(self, spacing: float) -> float:
        exponent = 2.0 - self.params.d_w
        return self._eta * spacing**exponent * float(self.params.n_b - 1) ** exponent


class FunctionGraph:
    """Wrap a vectorized callable on [0, 1]; samples are taken as exact."""

    def __init__(self, func: Callable[[np.ndarray], np.ndarray]) -> None:
        self.func = func

    def at(self, xs: np.ndarray) -> np.ndarray:
        xs = np.asarray(xs, dtype=np.float64)
        return np.asarray(self.func(xs), dtype=np.float64) * np.ones_like(xs)

    def at_rationals(self, numerators: np.ndarray, denominator: int) -> np.ndarray:
        return self.at(np.asarray(numerators, dtype=np.float64) / float(denominator))

    def variation_bound(self, spacing: float) -> float:
        return 0.0


def oscillation(
    p: FractalParams,
    x1: float,
    x2: float,
    n_samples: int,
    tol: float = constants.DEFAULT_TOLERANCE,
    refine: bool = True,
    settings: Settings = DEFAULT_SETTINGS,
    graph: Optional[Graph] = None,
) -> OscillationEstimate:
    """Sampled max - min of W over [x1, x2].

    With ``refine`` the grid is bisected, keeping every earlier sample, until
    the variation bound at the current spacing falls below
    ``settings.refine_threshold * osc`` or ``settings.oscillation_cap``
    samples are in use.
    """

    if isinstance(n_samples, bool) or not isinstance(n_samples, numbers.Integral) or n_samples < 2:
        raise InvalidInput(f"n_samples must be an integer >= 2, got {n_samples!r}")
    if not (math.isfinite(x1) and math.isfinite(x2)) or not x1 < x2:
        raise InvalidInput(f"need x1 < x2, got x1={x1!r}, x2={x2!r}")
    if graph is None:
        graph = WeierstrassGraph(p, tol)

    x1, x2 = float(x1), float(x2)
    width = x2 - x1
    intervals = int(n_samples) - 1
    values = graph.at(x1 + width * (np.arange(intervals + 1) / intervals))
    lo, hi = float(values.min()), float(values.max())

    def certified() -> bool:
        return graph.variation_bound(width / intervals) <= settings.refine_threshold * (hi - lo)

    while refine and not certified() and 2 * intervals + 1 <= settings.oscillation_cap:
        intervals *= 2
        odd = np.arange(1, intervals, 2)
        values = graph.at(x1 + width * (odd / intervals))
        lo = min(lo, float(values.min()))
        hi = max(hi, float(values.max()))

    LOGGER.debug("Oscillation on [%r, %r] used %d samples", x1, x2, intervals + 1)
    return OscillationEstimate(lo=lo, hi=hi, samples_used=intervals + 1, certified=certified())
