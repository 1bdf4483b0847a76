"""SVG and ASCII drawings of tangles.

Layers are drawn top to bottom; a wire occupies the column of its position
in each layer and a swap shows up as two crossing diagonals between
consecutive rows.
"""

from __future__ import annotations

import re
import xml.etree.ElementTree as ET
from collections.abc import Mapping
from dataclasses import dataclass, field
from typing import Optional

from .core import Layer, Tangle

SVG_NS = "http://www.w3.org/2000/svg"


@dataclass(frozen=True)
class RenderOptions:
    format: str = "ascii"
    column_width: Optional[int] = None  # ascii: characters (default fits ids); svg: units
    row_height: Optional[int] = None  # ascii: connector rows; svg: units
    highlight: frozenset[int] = frozenset()
    labels: Mapping[int, str] = field(default_factory=dict)

    def __post_init__(self):
        if self.format not in ("ascii", "svg"):
            raise ValueError(f"unknown format {self.format!r}")
        for name in ("column_width", "row_height"):
            value = getattr(self, name)
            if value is not None and value <= 0:
                raise ValueError(f"{name} must be positive")


def render_tangle(t: Tangle, opts: RenderOptions = RenderOptions()) -> str:
    layers = t.layers  # raises InvalidTangle
    if opts.format == "svg":
        return _render_svg(t, layers, opts)
    return _render_ascii(t, layers, opts)


# ---------------------------------------------------------------------------
# ASCII
# ---------------------------------------------------------------------------


def _render_ascii(t: Tangle, layers: tuple[Layer, ...], opts: RenderOptions) -> str:
    mark = 1 if opts.highlight else 0
    cw = max(opts.column_width or 1, len(str(t.n)) + mark)
    h = opts.row_height or 1
    step = cw + 1
    lines = [f"# {w}: {opts.labels[w]}" for w in sorted(opts.labels)]

    def row(layer: Layer) -> str:
        cells = []
        for w in layer:
            s = str(w) + ("*" if w in opts.highlight else "")
            cells.append(s.rjust(cw))
        return " ".join(cells).rstrip()

    mid = (h - 1) // 2
    anchor = cw - 1 - mark  # last digit of a right-aligned id
    for k, move in enumerate(t.moves):
        lines.append(row(layers[k]))
        for r in range(h):
            buf = [" "] * (step * t.n)
            for q in range(t.n):
                buf[q * step + anchor] = "|"
            for p in move:
                left, right = (p - 1) * step + anchor, p * step + anchor
                buf[left] = buf[right] = " "
                if r == mid:
                    buf[(left + right) // 2] = "X"
                elif r < mid:
                    buf[left], buf[right] = "\\", "/"
                else:
                    buf[left], buf[right] = "/", "\\"
            lines.append("".join(buf).rstrip())
    lines.append(row(layers[-1]))
    return "\n".join(lines) + "\n"


_LAYER_ROW = re.compile(r"^[\s\d*]*\d[\s\d*]*$")


def parse_ascii(text: str) -> list[Layer]:
    """Layer sequence of an ASCII drawing made by :func:`render_tangle`."""
    layers = []
    for line in text.splitlines():
        if line.startswith("#") or not _LAYER_ROW.match(line):
            continue
        layers.append(tuple(int(x) for x in re.findall(r"\d+", line)))
    return layers


# ---------------------------------------------------------------------------
# SVG
# ---------------------------------------------------------------------------


def _render_svg(t: Tangle, layers: tuple[Layer, ...], opts: RenderOptions) -> str:
    cw = opts.column_width or 30
    rh = opts.row_height or 30
    margin = cw
    top = margin + (rh if opts.labels else 0)
    width = 2 * margin + (t.n - 1) * cw
    height = top + margin + (len(layers) - 1) * rh

    ET.register_namespace("", SVG_NS)
    svg = ET.Element(
        "svg",
        {
            "xmlns": SVG_NS,
            "version": "1.1",
            "width": str(width),
            "height": str(height),
            "viewBox": f"0 0 {width} {height}",
        },
    )

    def x(pos: int) -> int:
        return margin + pos * cw

    def y(k: int) -> int:
        return top + k * rh

    for k in range(len(layers)):
        ET.SubElement(
            svg,
            "line",
            {
                "x1": str(x(0) - cw // 3),
                "y1": str(y(k)),
                "x2": str(x(t.n - 1) + cw // 3),
                "y2": str(y(k)),
                "stroke": "#cccccc",
                "stroke-width": str(max(2, rh // 5)),
            },
        )
    pos_of = [{w: p for p, w in enumerate(layer)} for layer in layers]
    for w in range(1, t.n + 1):
        d = " ".join(
            f"{'M' if k == 0 else 'L'} {x(pos_of[k][w])} {y(k)}" for k in range(len(layers))
        )
        if len(layers) == 1:
            d += f" L {x(pos_of[0][w])} {y(0)}"
        ET.SubElement(
            svg,
            "path",
            {
                "d": d,
                "fill": "none",
                "stroke": "#d62728" if w in opts.highlight else "#000000",
                "stroke-width": "2",
            },
        )
    for p, w in enumerate(layers[0]):
        ET.SubElement(
            svg,
            "text",
            {"x": str(x(p)), "y": str(top - rh // 3), "text-anchor": "middle", "font-size": "10"},
        ).text = str(w)
        if w in opts.labels:
            ET.SubElement(
                svg,
                "text",
                {
                    "x": str(x(p)),
                    "y": str(top - rh),
                    "text-anchor": "middle",
                    "font-size": "8",
                    "transform": f"rotate(-45 {x(p)} {top - rh})",
                },
            ).text = opts.labels[w]
    for p, w in enumerate(layers[-1]):
        ET.SubElement(
            svg,
            "text",
            {"x": str(x(p)), "y": str(y(len(layers) - 1) + rh // 2), "text-anchor": "middle", "font-size": "10"},
        ).text = str(w)
    return ET.tostring(svg, encoding="unicode") + "\n"
