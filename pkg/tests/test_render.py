import random
import xml.etree.ElementTree as ET

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tanglekit.core import Tangle, gen_ln
from tanglekit.errors import InvalidTangle
from tanglekit.render import SVG_NS, RenderOptions, parse_ascii, render_tangle
from tanglekit.search import decide_feasible

from .conftest import random_tangle

SVG = "{%s}" % SVG_NS


def test_ascii_small(small_tangle):
    text = render_tangle(small_tangle)
    assert text == "1 2 3\n X  |\n2 1 3\n|  X\n2 3 1\n"
    assert parse_ascii(text) == list(small_tangle.layers)


def test_ascii_taller_rows(small_tangle):
    text = render_tangle(small_tangle, RenderOptions(row_height=3))
    rows = text.splitlines()
    assert rows[1:4] == ["\\ / |", " X  |", "/ \\ |"]
    assert parse_ascii(text) == list(small_tangle.layers)


def test_ascii_highlight_and_labels(small_tangle):
    opts = RenderOptions(highlight=frozenset({1}), labels={1: "lambda"})
    text = render_tangle(small_tangle, opts)
    assert text.splitlines()[0] == "# 1: lambda"
    assert "1*" in text
    assert parse_ascii(text) == list(small_tangle.layers)


@given(st.integers(0, 2**32), st.integers(2, 12), st.integers(0, 8), st.integers(1, 4), st.integers(1, 4))
@settings(max_examples=60)
def test_ascii_round_trip(seed, n, k, cw, rh):
    t = random_tangle(random.Random(seed), n, k)
    hl = frozenset(range(1, n + 1, 3))
    text = render_tangle(t, RenderOptions(column_width=cw, row_height=rh, highlight=hl))
    assert parse_ascii(text) == list(t.layers)


def test_svg_ln7():
    t = decide_feasible(gen_ln(7)).witness
    text = render_tangle(t, RenderOptions(format="svg", highlight=frozenset({6, 7})))
    root = ET.fromstring(text)
    assert root.tag == SVG + "svg"
    paths = root.findall(SVG + "path")
    assert len(paths) == 7
    assert len(root.findall(SVG + "line")) == t.height
    red = [p for p in paths if p.get("stroke") != "#000000"]
    assert len(red) == 2
    for p in paths:
        assert p.get("d").count("L") == t.height - 1


def test_svg_labels_and_single_layer():
    t = Tangle((1, 2))
    root = ET.fromstring(render_tangle(t, RenderOptions(format="svg", labels={1: "c[1]"})))
    texts = [e.text for e in root.findall(SVG + "text")]
    assert "c[1]" in texts
    assert len(root.findall(SVG + "path")) == 2


def test_options_validated():
    with pytest.raises(ValueError):
        RenderOptions(format="png")
    with pytest.raises(ValueError):
        RenderOptions(column_width=0)


def test_invalid_tangle():
    with pytest.raises(InvalidTangle):
        render_tangle(Tangle((1, 2, 3), (frozenset({1, 2}),)))
