from fractions import Fraction

import pytest

from trisect.curves import (Arc, Crossing, Curve, CurveError, EndPoint,
                            chords_of, validate_embedded)
from trisect.polygon import Surface

F = Fraction


def meridian(i=1, t=F(1, 2)):
    return Curve([Crossing("a%d" % i, 1, t)])


def longitude(i=1, t=F(1, 2)):
    return Curve([Crossing("b%d" % i, 1, t)])


def test_meridian_chords():
    s = Surface(1, 0)
    m = meridian()
    ch = chords_of(s.complex, m, 0)
    assert len(ch) == 1
    assert ch[0].poly == 0


def test_validate_embedded_ok():
    s = Surface(2, 0)
    validate_embedded(s.complex, [meridian(1), meridian(2), longitude(1)])


def test_position_clash_rejected():
    s = Surface(1, 0)
    with pytest.raises(CurveError):
        validate_embedded(s.complex, [meridian(1, F(1, 2)), meridian(1, F(1, 2))])


def test_self_crossing_rejected():
    s = Surface(1, 0)
    # a curve crossing edge a twice in the same direction must self-cross
    bad = Curve([Crossing("a1", 1, F(1, 3)), Crossing("a1", 1, F(2, 3))])
    with pytest.raises(CurveError):
        validate_embedded(s.complex, [bad])


def test_arc_chords_on_disk():
    s = Surface(0, 1)
    a = Arc(EndPoint("e1", F(1, 3)), [], EndPoint("e1", F(2, 3)))
    ch = chords_of(s.complex, a, 0)
    assert len(ch) == 1


def test_arc_between_boundaries():
    s = Surface(0, 2)
    # arc from boundary 1 to boundary 2 must cross connector edges
    a = Arc(EndPoint("e1", F(1, 2)),
            [Crossing("c2", -1, F(1, 2))],
            EndPoint("e2", F(1, 2)))
    chords_of(s.complex, a, 0)
    validate_embedded(s.complex, [a])
