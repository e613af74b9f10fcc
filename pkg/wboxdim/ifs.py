"""The contractions T_i, words, and the prefractal vertex sets V_m."""
from __future__ import annotations

import math
import numbers
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import numpy as np

from . import constants
from .errors import BudgetExceeded, DigitOutOfRange, IndexOutOfRange, InvalidInput
from .logging_utils import get_logger
from .parameters import FractalParams, fixed_abscissa
from .settings import DEFAULT_SETTINGS

LOGGER = get_logger(__name__)

_DIGITS = "0123456789abcdefghijklmnopqrstuvwxyz"


@dataclass(frozen=True)
class Point2:
    x: float
    y: float

    def to_dict(self) -> Dict[str, float]:
        return {"x": self.x, "y": self.y}


def _check_digit(digit: object, n_b: int) -> int:
    if isinstance(digit, bool) or not isinstance(digit, numbers.Integral) or not 0 <= digit < n_b:
        raise DigitOutOfRange(digit, n_b)  # type: ignore[arg-type]
    return int(digit)


@dataclass(frozen=True)
class Word:
    """Cell address M_1 ... M_m; M_1 is applied last and is the most significant digit."""

    digits: Tuple[int, ...] = ()

    @property
    def length(self) -> int:
        return len(self.digits)

    def validate(self, n_b: int) -> "Word":
        for digit in self.digits:
            _check_digit(digit, n_b)
        return self

    @classmethod
    def from_cell(cls, index: int, m: int, n_b: int) -> "Word":
        if not 0 <= index < n_b**m:
            raise InvalidInput(f"cell index {index} is outside 0..{n_b**m - 1}")
        digits = []
        for _ in range(m):
            index, digit = divmod(index, n_b)
            digits.append(digit)
        return cls(tuple(reversed(digits)))

    def cell_index(self, n_b: int) -> int:
        index = 0
        for digit in self.validate(n_b).digits:
            index = index * n_b + digit
        return index

    def encode(self, n_b: int) -> str:
        self.validate(n_b)
        if n_b <= len(_DIGITS):
            return "".join(_DIGITS[digit] for digit in self.digits)
        return ".".join(str(digit) for digit in self.digits)

    @classmethod
    def decode(cls, text: str, n_b: int) -> "Word":
        if not text:
            return cls(())
        if n_b <= len(_DIGITS):
            digits = []
            for char in text:
                index = _DIGITS.find(char.lower())
                if index < 0:
                    raise InvalidInput(f"cannot decode word character {char!r}")
                digits.append(index)
        else:
            try:
                digits = [int(part) for part in text.split(".")]
            except ValueError as exc:
                raise InvalidInput(f"cannot decode word {text!r}") from exc
        return cls(tuple(digits)).validate(n_b)

    def __str__(self) -> str:
        return "(" + ",".join(str(digit) for digit in self.digits) + ")"


@dataclass(frozen=True, eq=False)
class VertexSet:
    """Sorted vertices of Gamma_{W_m} with the address of the copy kept at each junction.

    Abscissae are exact: ``xs[i] == numerators[i] / denominator``.
    """

    level: int
    n_b: int
    xs: np.ndarray
    ys: np.ndarray
    cells: np.ndarray
    js: np.ndarray
    numerators: np.ndarray

    @property
    def denominator(self) -> int:
        return (self.n_b - 1) * self.n_b**self.level

    def __len__(self) -> int:
        return int(self.xs.shape[0])

    @property
    def points(self) -> List[Point2]:
        return [Point2(float(x), float(y)) for x, y in zip(self.xs, self.ys)]

    @property
    def edges(self) -> List[Tuple[int, int]]:
        return [(i, i + 1) for i in range(len(self) - 1)]

    def word_at(self, i: int) -> Word:
        return Word.from_cell(int(self.cells[i]), self.level, self.n_b)

    def exact_x(self, i: int) -> Fraction:
        return Fraction(int(self.numerators[i]), self.denominator)


@dataclass(frozen=True)
class Polygon:
    cell_word: Word
    vertices: Tuple[Point2, ...]

    @property
    def edges(self) -> List[Tuple[int, int]]:
        count = len(self.vertices)
        return [(j, (j + 1) % count) for j in range(count)]


@dataclass(frozen=True)
class AdjacencyPairs:
    within: List[Tuple[Word, int]] = field(default_factory=list)
    junctions: List[Tuple[Word, Word]] = field(default_factory=list)


def apply_t(p: FractalParams, i: int, pt: Point2) -> Point2:
    i = _check_digit(i, p.n_b)
    shifted = (pt.x + i) / p.n_b
    return Point2(shifted, p.lam * pt.y + math.cos(2.0 * math.pi * shifted))


def fixed_points(p: FractalParams) -> List[Point2]:
    points = []
    for i in range(p.n_b):
        x = i / (p.n_b - 1)
        points.append(Point2(x, math.cos(2.0 * math.pi * x) / (1.0 - p.lam)))
    return points


def check_index(p: FractalParams, j: int, upper: int) -> int:
    if isinstance(j, bool) or not isinstance(j, numbers.Integral) or not 0 <= j <= upper:
        raise IndexOutOfRange(j, upper)  # type: ignore[arg-type]
    return int(j)


def apply_word(p: FractalParams, w: Word, pt: Point2) -> Point2:
    w.validate(p.n_b)
    for digit in reversed(w.digits):
        pt = apply_t(p, digit, pt)
    return pt


def exact_abscissa(p: FractalParams, w: Word, j: int) -> Fraction:
    """x_j / N_b^m + sum_k M_k / N_b^k as an exact fraction."""

    j = check_index(p, j, p.n_b - 1)
    w.validate(p.n_b)
    value = fixed_abscissa(p, j) / p.n_b**w.length
    for k, digit in enumerate(w.digits, start=1):
        value += Fraction(digit, p.n_b**k)
    return value


def closed_form_x(p: FractalParams, w: Word, j: int) -> float:
    return float(exact_abscissa(p, w, j))


def closed_form_y(p: FractalParams, w: Word, j: int) -> float:
    """lambda^m y_j + sum_s lambda^(m-s) cos(2 pi xi_s), xi_0 = x_j, xi_s = (xi_(s-1) + M_(m-s+1)) / N_b."""

    j = check_index(p, j, p.n_b - 1)
    w.validate(p.n_b)
    m = w.length
    xi = fixed_abscissa(p, j)
    y_j = math.cos(2.0 * math.pi * xi) / (1.0 - p.lam)
    total = p.lam**m * y_j
    for s in range(1, m + 1):
        xi = (xi + w.digits[m - s]) / p.n_b
        total += p.lam ** (m - s) * math.cos(2.0 * math.pi * (xi.numerator / xi.denominator))
    return total


def build_v_m(p: FractalParams, m: int, budget: Optional[int] = None) -> VertexSet:
    """V_m as the union of T_i(V_(m-1)) over i, starting from the fixed points."""

    if isinstance(m, bool) or not isinstance(m, numbers.Integral) or m < 0:
        raise InvalidInput(f"level m must be a non-negative integer, got {m!r}")
    if budget is None:
        budget = DEFAULT_SETTINGS.vertex_budget
    cells_needed = p.n_b**m
    if cells_needed > budget:
        raise BudgetExceeded(f"V_{m}", cells_needed, budget)

    n_b = p.n_b
    denominator = n_b - 1
    numerators = np.arange(n_b, dtype=np.int64)
    ys = np.cos(2.0 * np.pi * (numerators / denominator)) / (1.0 - p.lam)
    cells = np.zeros(n_b, dtype=np.int64)
    js = np.arange(n_b, dtype=np.int64)

    for level in range(1, m + 1):
        copies = []
        for i in range(n_b):
            shifted = numerators + i * denominator
            residues = shifted % (denominator * n_b)
            angle = 2.0 * np.pi * (residues / (denominator * n_b))
            copies.append(
                (shifted, p.lam * ys + np.cos(angle), cells + i * n_b ** (level - 1), js)
            )
        numerators = np.concatenate([copy[0] for copy in copies])
        ys = np.concatenate([copy[1] for copy in copies])
        cells = np.concatenate([copy[2] for copy in copies])
        js = np.concatenate([copy[3] for copy in copies])
        denominator *= n_b

        xs = numerators / denominator
        keep = np.ones(xs.shape[0], dtype=bool)
        keep[1:] = ~(
            (np.abs(np.diff(xs)) <= constants.MERGE_X_TOLERANCE / n_b**level)
            & (np.abs(np.diff(ys)) <= constants.MERGE_Y_TOLERANCE)
        )
        numerators, ys, cells, js = numerators[keep], ys[keep], cells[keep], js[keep]

    vertices = VertexSet(
        level=m,
        n_b=n_b,
        xs=numerators / denominator,
        ys=ys,
        cells=cells,
        js=js,
        numerators=numerators,
    )
    expected = n_b**m * (n_b - 1) + 1
    if len(vertices) != expected:
        LOGGER.warning("V_%d has %d vertices, expected %d", m, len(vertices), expected)
    LOGGER.debug(
        "Built V_%d: %d vertices (printed count formula gives %d)",
        m,
        len(vertices),
        printed_vertex_count(p, m),
    )
    return vertices


def vertex_count(p: FractalParams, m: int) -> int:
    return p.n_b**m * (p.n_b - 1) + 1


def printed_vertex_count(p: FractalParams, m: int) -> int:
    return 2 * p.n_b**m + p.n_b - 2


def vertex_index(n_b: int, cell: int, j: int) -> int:
    """Position of T_M(P_j) in V_m for the cell with index ``cell``."""
    return cell * (n_b - 1) + j


def adjacency_pairs(p: FractalParams, m: int, budget: Optional[int] = None) -> AdjacencyPairs:
    if budget is None:
        budget = DEFAULT_SETTINGS.vertex_budget
    if p.n_b**m > budget:
        raise BudgetExceeded(f"adjacency pairs of V_{m}", p.n_b**m, budget)
    words = [Word.from_cell(cell, m, p.n_b) for cell in range(p.n_b**m)]
    within = [(word, j) for word in words for j in range(p.n_b - 1)]
    junctions = list(zip(words[:-1], words[1:]))
    return AdjacencyPairs(within=within, junctions=junctions)


def polygons(p: FractalParams, m: int, budget: Optional[int] = None) -> List[Polygon]:
    """The N_b^m cell polygons in lexicographic word order."""

    vertices = build_v_m(p, m, budget)
    result = []
    for cell in range(p.n_b**m):
        start = vertex_index(p.n_b, cell, 0)
        corners = tuple(
            Point2(float(vertices.xs[start + j]), float(vertices.ys[start + j]))
            for j in range(p.n_b)
        )
        result.append(Polygon(cell_word=Word.from_cell(cell, m, p.n_b), vertices=corners))
    return result

