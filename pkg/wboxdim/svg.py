"""Plain-text SVG rendering of the prefractal graphs."""
from __future__ import annotations

import json
from typing import Dict, Iterable, List, Optional, Tuple
from xml.sax.saxutils import escape

import numpy as np

from . import constants
from .errors import BudgetExceeded
from .ifs import build_v_m, polygons, vertex_count
from .logging_utils import get_logger
from .parameters import FractalParams
from .settings import DEFAULT_SETTINGS, Settings

LOGGER = get_logger(__name__)

PREAMBLE = """\
<?xml version="1.0" standalone="no"?>
<!DOCTYPE svg PUBLIC "-//W3C//DTD SVG 1.1//EN"
"http://www.w3.org/Graphics/SVG/1.1/DTD/svg11.dtd">
<svg width="%(width)d" height="%(height)d" viewBox="0 0 %(width)d %(height)d" version="1.1"
    xmlns="http://www.w3.org/2000/svg">
<metadata>%(metadata)s</metadata>
<rect x="0" y="0" width="%(width)d" height="%(height)d" style="fill:#ffffff"/>
"""

POSTAMBLE = """\
</svg>
"""


class SvgCanvas:
    """Maps [0, 1] x [-y_bound, y_bound] onto the canvas with y pointing up."""

    def __init__(
        self,
        y_bound: float,
        width: int = constants.SVG_WIDTH,
        height: int = constants.SVG_HEIGHT,
        margin: int = constants.SVG_MARGIN,
    ) -> None:
        self.y_bound = y_bound
        self.width = width
        self.height = height
        self.margin = margin
        self.commands: List[str] = []

    def _project(self, xs: np.ndarray, ys: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        span_x = self.width - 2 * self.margin
        span_y = self.height - 2 * self.margin
        px = self.margin + np.asarray(xs) * span_x
        py = self.margin + (self.y_bound - np.asarray(ys)) / (2.0 * self.y_bound) * span_y
        return px, py

    def _coordinates(self, xs: np.ndarray, ys: np.ndarray) -> List[str]:
        px, py = self._project(xs, ys)
        return ["%.3f,%.3f" % item for item in zip(px, py)]

    def polyline(self, xs: np.ndarray, ys: np.ndarray, color: str, width: float, css_class: str) -> None:
        self.commands.append(
            '<polyline class="%s" points="%s" style="fill:none;stroke:%s;stroke-width:%.2f"/>'
            % (css_class, " ".join(self._coordinates(xs, ys)), color, width)
        )

    def closed_path(self, points: Iterable[Tuple[float, float]], color: str, css_class: str) -> None:
        xs, ys = zip(*points)
        coordinates = [item.replace(",", " ") for item in self._coordinates(np.array(xs), np.array(ys))]
        data = "M" + " L".join(coordinates) + " Z"
        self.commands.append(
            '<path class="%s" d="%s" style="fill:none;stroke:%s;stroke-width:0.50"/>'
            % (css_class, data, color)
        )

    def render(self, metadata: Dict[str, object]) -> str:
        header = PREAMBLE % {
            "width": self.width,
            "height": self.height,
            "metadata": escape(json.dumps(metadata, sort_keys=True)),
        }
        return header + "".join(item + "\n" for item in self.commands) + POSTAMBLE


def proxy_level(p: FractalParams, settings: Settings = DEFAULT_SETTINGS) -> int:
    """Deepest level up to ``plot_proxy_level`` whose vertex count fits ``plot_point_budget``."""

    level = settings.plot_proxy_level
    while level > 0 and vertex_count(p, level) > settings.plot_point_budget:
        level -= 1
    return level


def render_plot(
    p: FractalParams,
    m: int,
    metadata: Optional[Dict[str, object]] = None,
    show_polygons: bool = False,
    settings: Settings = DEFAULT_SETTINGS,
) -> str:
    """SVG text with Gamma_{W_0} .. Gamma_{W_m} over a cyan high-level proxy of Gamma_W."""

    if m > settings.plot_budget:
        raise BudgetExceeded(f"plot of levels 0..{m}", m, settings.plot_budget)
    canvas = SvgCanvas(p.y_bound)

    proxy = build_v_m(p, proxy_level(p, settings), settings.vertex_budget)
    canvas.polyline(proxy.xs, proxy.ys, constants.PROXY_COLOR, 0.5, "graph-proxy")
    for level in range(m + 1):
        vertices = build_v_m(p, level, settings.vertex_budget)
        color = constants.LEVEL_COLORS[level % len(constants.LEVEL_COLORS)]
        canvas.polyline(vertices.xs, vertices.ys, color, 1.0, f"prefractal-{level}")
    if show_polygons:
        for polygon in polygons(p, m, settings.vertex_budget):
            canvas.closed_path(
                [(vertex.x, vertex.y) for vertex in polygon.vertices],
                constants.POLYGON_COLOR,
                "cell-polygon",
            )
    LOGGER.debug("Rendered %d SVG elements", len(canvas.commands))
    return canvas.render(metadata or {})
