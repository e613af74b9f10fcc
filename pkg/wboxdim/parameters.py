"""Validated (lambda, n_b) parameters and the closed-form constants of the bounds."""
from __future__ import annotations

import enum
import math
import numbers
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from rich.table import Table

from .errors import BaseTooSmall, ContractivityViolation, OutOfRange
from .logging_utils import get_logger
from .utils import console, format_real

LOGGER = get_logger(__name__)


class Reading(str, enum.Enum):
    """Which j range the even-case minimum of the lower constant runs over."""

    PRINTED = "printed"
    NON_DEGENERATE = "non-degenerate"


@dataclass(frozen=True)
class FractalParams:
    """The pair (lambda, n_b); the single source of truth for every formula."""

    lam: float
    n_b: int

    @property
    def d_w(self) -> float:
        return 2.0 + math.log(self.lam) / math.log(self.n_b)

    @property
    def is_even(self) -> bool:
        return self.n_b % 2 == 0

    @property
    def y_bound(self) -> float:
        """Bound on |W| and on every vertex ordinate."""
        return 1.0 / (1.0 - self.lam)

    def to_dict(self) -> Dict[str, object]:
        return {"lambda": self.lam, "n_b": self.n_b}


@dataclass(frozen=True)
class DimensionValue:
    d_w: float

    def lambda_roundtrip(self, n_b: int) -> float:
        return float(n_b) ** (self.d_w - 2.0)


@dataclass(frozen=True)
class BoundConstants:
    """Every constant of the two-sided increment bounds and of the column cover.

    ``effective_lower`` is the raw branch constant for the parity of n_b under
    ``reading``; it may be negative and callers clamp it at 0.
    """

    lower_odd: float
    lower_even_first: float
    lower_even_second: float
    eta_w: float
    cover_c: float
    lower_even_all_j: float
    min_sine_all: float
    min_sine_nondegenerate: float
    effective_lower: float
    reading: Reading

    def is_negative(self, name: str) -> bool:
        return getattr(self, name) <= 0.0

    def rows(self) -> List[Tuple[str, float]]:
        return [
            ("lower_odd", self.lower_odd),
            ("lower_even_first", self.lower_even_first),
            ("lower_even_all_j", self.lower_even_all_j),
            ("lower_even_second", self.lower_even_second),
            ("effective_lower", self.effective_lower),
            ("eta_w", self.eta_w),
            ("cover_c", self.cover_c),
        ]

    def to_dict(self) -> Dict[str, object]:
        data: Dict[str, object] = {name: value for name, value in self.rows()}
        data["min_sine_all"] = self.min_sine_all
        data["min_sine_nondegenerate"] = self.min_sine_nondegenerate
        data["reading"] = self.reading.value
        return data


def new_params(lam: float, n_b: int) -> FractalParams:
    """Validate (lambda, n_b) and return the parameter container."""

    if isinstance(lam, bool) or not isinstance(lam, numbers.Real):
        raise OutOfRange(lam)
    lam = float(lam)
    if not math.isfinite(lam) or not 0.0 < lam < 1.0:
        raise OutOfRange(lam)
    if isinstance(n_b, bool) or not isinstance(n_b, numbers.Integral):
        if isinstance(n_b, float) and n_b.is_integer():
            n_b = int(n_b)
        else:
            raise BaseTooSmall(n_b)
    n_b = int(n_b)
    if n_b < 3:
        raise BaseTooSmall(n_b)
    if lam * n_b <= 1.0:
        raise ContractivityViolation(lam, n_b)
    return FractalParams(lam=lam, n_b=n_b)


def box_dimension(p: FractalParams) -> DimensionValue:
    return DimensionValue(d_w=p.d_w)


def eta_w(p: FractalParams) -> float:
    lam, n = p.lam, float(p.n_b)
    first = (2 * n - 1) * lam * (n * n - 1) / ((n - 1) ** 2 * (1 - lam) * (lam * n * n - 1))
    second = 2 * n / ((lam * n * n - 1) * (lam * n**3 - 1))
    return 2 * math.pi**2 * (first + second)


def degenerate_j(p: FractalParams) -> Optional[int]:
    """The j where sin(pi (2j+1)/(n_b-1)) vanishes; only exists for even n_b."""
    if p.is_even:
        return p.n_b // 2 - 1
    return None


def _sines(p: FractalParams) -> List[float]:
    return [abs(math.sin(math.pi * (2 * j + 1) / (p.n_b - 1))) for j in range(p.n_b)]


def _bracket(p: FractalParams, min_sine: float) -> float:
    n = p.n_b
    leading = 2.0 / (1.0 - p.lam) * math.sin(math.pi / (n - 1)) * min_sine
    correction = 2.0 * math.pi / (n * (n - 1)) / (p.lam * n - 1.0)
    return leading - correction


def lower_bound_constants(p: FractalParams, reading: Reading = Reading.PRINTED) -> BoundConstants:
    sines = _sines(p)
    skip = degenerate_j(p)
    # the exact zero at the degenerate j comes out of sin() as ~1e-16
    min_all = 0.0 if skip is not None else min(sines)
    min_nondegenerate = min(value for j, value in enumerate(sines) if j != skip)

    n = float(p.n_b)
    lower_odd = _bracket(p, min_all)
    lower_even_all_j = lower_odd
    lower_even_first = _bracket(p, min_nondegenerate)
    lower_even_second = 4.0 / n**2 * (1.0 - n**-2) / (n**2 - 1.0)

    if not p.is_even:
        effective = lower_odd
    elif reading is Reading.NON_DEGENERATE:
        effective = max(lower_even_first, lower_even_second)
    else:
        effective = max(lower_even_all_j, lower_even_second)

    eta = eta_w(p)
    constants = BoundConstants(
        lower_odd=lower_odd,
        lower_even_first=lower_even_first,
        lower_even_second=lower_even_second,
        eta_w=eta,
        cover_c=max(effective, eta),
        lower_even_all_j=lower_even_all_j,
        min_sine_all=min_all,
        min_sine_nondegenerate=min_nondegenerate,
        effective_lower=effective,
        reading=reading,
    )
    if effective <= 0.0:
        LOGGER.debug("Lower constant %s is non-positive for %s", effective, p)
    return constants


def cell_width(p: FractalParams, m: int) -> float:
    """L_m, the abscissa gap between consecutive vertices of one level-m cell."""
    return 1.0 / ((p.n_b - 1) * float(p.n_b) ** m)


def scale_factor(p: FractalParams, m: int) -> float:
    """L_m^(2-D_W) (n_b-1)^(2-D_W), which equals lambda^m."""
    exponent = 2.0 - p.d_w
    return cell_width(p, m) ** exponent * float(p.n_b - 1) ** exponent


def fixed_abscissa(p: FractalParams, i: int) -> Fraction:
    return Fraction(i, p.n_b - 1)


def display_parameters(p: FractalParams, constants: BoundConstants) -> None:
    table = Table(title=f"lambda={format_real(p.lam)}  n_b={p.n_b}")
    table.add_column("Quantity", style="bold")
    table.add_column("Value")
    table.add_column("Sign", style="cyan")
    table.add_row("D_W", format_real(p.d_w), "")
    table.add_row("lambda round-trip", format_real(box_dimension(p).lambda_roundtrip(p.n_b)), "")
    for name, value in constants.rows():
        table.add_row(name, format_real(value), "negative" if value <= 0 else "positive")
    table.add_row("reading", constants.reading.value, "")
    skip = degenerate_j(p)
    table.add_row("degenerate j", "none" if skip is None else str(skip), "")
    console.print(table)
