from fractions import Fraction

import pytest

from trisect.polygon import PolygonComplex, SchemeError, Surface, standard_word


def test_sphere_scheme():
    s = Surface(0, 0)
    assert s.complex.euler_characteristic() == 2
    assert s.complex.boundary_circles() == []
    assert s.complex.genus_of_component([0]) == 0


@pytest.mark.parametrize("g", [1, 2, 3, 9])
def test_closed_genus(g):
    s = Surface(g, 0)
    cx = s.complex
    assert cx.euler_characteristic() == 2 - 2 * g
    assert len(cx.vertex_classes()) == 1
    assert cx.boundary_circles() == []
    assert cx.genus_of_component([0]) == g


@pytest.mark.parametrize("g,n", [(0, 1), (0, 2), (0, 4), (1, 1), (1, 2), (3, 4)])
def test_bordered_genus(g, n):
    s = Surface(g, n)
    cx = s.complex
    assert cx.euler_characteristic() == 2 - 2 * g - n
    assert len(cx.boundary_circles()) == n
    assert cx.genus_of_component([0]) == g


def test_vertex_rotation_closed_torus():
    cx = Surface(1, 0).complex
    classes = cx.vertex_classes()
    assert len(classes) == 1
    rot = cx.vertex_rotation((0, 0))
    assert rot is not None
    assert len(rot) == 4
    assert sorted(rot) == [(0, 0), (0, 1), (0, 2), (0, 3)]


def test_orientability_enforced():
    with pytest.raises(SchemeError):
        PolygonComplex([[("x", 1), ("x", 1)]])


def test_components():
    second = [("x" + l, s) for l, s in standard_word(2, 0)]
    cx = PolygonComplex([standard_word(1, 0), second])
    comps = cx.components()
    assert sorted(len(c) for c in comps) == [1, 1]
    genera = sorted(cx.genus_of_component(c) for c in comps)
    assert genera == [1, 2]
