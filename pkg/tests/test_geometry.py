from fractions import Fraction

import pytest

from planarskein.chord import CrossingCapExceeded
from planarskein.geometry import (PLLoop, StackedDiagram, assemble_stacked_diagram, embed_subset_curve,
                                  ray_parity, svg_render)

from conftest import M


def puncture(k):
    return (Fraction(k), Fraction(0))


@pytest.mark.parametrize("S,n", [((2,), 3), ((1, 3), 3), ((1, 2, 3), 3), ((1, 3, 6), 6), ((2, 5), 6)])
def test_encloses_exactly(S, n):
    loop = embed_subset_curve(S, 0, n)
    for v in range(1, n + 1):
        assert ray_parity(puncture(v), loop) == (v in S)


def test_singleton_rectangle():
    loop = embed_subset_curve((2,), 0, 3)
    xs = {x for x, _ in loop.vertices}
    ys = {y for _, y in loop.vertices}
    assert len(loop.vertices) == 4
    assert max(xs) - 2 == 2 - min(xs) == max(ys) == -min(ys) == Fraction(2, 5)


def test_finger_dips_below_axis():
    loop = embed_subset_curve((1, 3), 0, 3)
    assert len(loop.vertices) == 8
    assert min(y for x, y in loop.vertices if abs(x - 2) < 1) < 0


def test_slots_nest():
    outer = embed_subset_curve((1, 2, 3), 0, 3)
    inner = embed_subset_curve((1, 2, 3), 1, 3)
    ox = [x for x, _ in outer.vertices]
    ix = [x for x, _ in inner.vertices]
    assert min(ox) < min(ix) and max(ix) < max(ox)


def test_far_point_outside():
    loop = embed_subset_curve((1, 2, 3), 0, 3)
    assert not ray_parity((Fraction(100), Fraction(7, 3)), loop)


def test_crossing_counts():
    assert len(assemble_stacked_diagram([M((1,)), M((1,))], 1).crossings) == 0
    d = assemble_stacked_diagram([M((1, 2)), M((2, 3))], 3)
    assert len(d.crossings) == 2
    assert all(d.loops[c.upper].height > d.loops[c.lower].height for c in d.crossings)
    c = len(assemble_stacked_diagram([M((1, 3)), M((2, 4))], 4).crossings)
    assert c > 0 and c % 2 == 0


def test_determinism():
    a = assemble_stacked_diagram([M((1, 3)), M((2, 4)), M((1, 2, 3))], 4)
    b = assemble_stacked_diagram([M((1, 3)), M((2, 4)), M((1, 2, 3))], 4)
    assert [l.vertices for l in a.loops] == [l.vertices for l in b.loops]
    assert [c.point for c in a.crossings] == [c.point for c in b.crossings]


def test_crossings_unique_and_transverse():
    d = assemble_stacked_diagram([M((1, 3)), M((2, 4)), M((1, 4))], 4)
    pts = [c.point for c in d.crossings]
    assert len(pts) == len(set(pts))
    for c in d.crossings:
        ux, uy = c.upper_dir
        lx, ly = c.lower_dir
        assert ux * ly - uy * lx != 0
        assert 0 < c.upper_param[1] < 1 and 0 < c.lower_param[1] < 1


def test_cap():
    with pytest.raises(CrossingCapExceeded):
        assemble_stacked_diagram([M((1, 3)), M((2, 4))], 4, cap=1)


def test_svg(tmp_path):
    d = assemble_stacked_diagram([M((1,)), M((2,))], 2)
    text = svg_render(d, tmp_path / "a.svg")
    assert "<svg" in text and (tmp_path / "a.svg").read_text() == text
    empty = svg_render(StackedDiagram([], [], 3))
    assert empty.count("<circle") == 3
