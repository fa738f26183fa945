from fractions import Fraction

import pytest

from trisect.arrangement import explode, regions
from trisect.curves import Arc, Crossing, Curve, EndPoint
from trisect.polygon import Surface

F = Fraction


def m(i=1, t=F(1, 2)):
    return Curve([Crossing("a%d" % i, 1, t)])


def l(i=1, t=F(1, 2)):
    return Curve([Crossing("b%d" % i, 1, t)])


def test_cut_torus_along_meridian():
    s = Surface(1, 0)
    ex = explode(s.complex, {0: m()}, [0])
    comps = ex.component_summary()
    # one component: an annulus bounded by the two copies of the curve
    assert comps == [(0, 0, 2)]


def test_cut_torus_track_parallel_copy():
    s = Surface(1, 0)
    # tracking is only legal for curves disjoint from the walls
    ex = explode(s.complex, {0: m(), 1: m(1, F(1, 4))}, [0], tracked_ids=[1])
    tracked = ex.tracked[1]
    assert len(tracked) == 1
    from trisect.curves import validate_embedded
    validate_embedded(ex.complex, [tracked])


def test_tracked_must_avoid_walls():
    s = Surface(1, 0)
    with pytest.raises(Exception):
        explode(s.complex, {0: m(), 1: l()}, [0], tracked_ids=[1])


def test_cut_genus2_full_cut_system():
    s = Surface(2, 0)
    ex = explode(s.complex, {0: m(1), 1: m(2)}, [0, 1])
    comps = ex.component_summary()
    assert comps == [(0, 0, 4)]


def test_cut_genus2_one_handle():
    s = Surface(2, 0)
    ex = explode(s.complex, {0: m(1)}, [0])
    comps = ex.component_summary()
    assert comps == [(1, 0, 2)]


def test_regions_of_transverse_pair_on_torus():
    s = Surface(1, 0)
    regs, ex = regions(s.complex, {0: m(), 1: l()}, [0, 1])
    assert len(regs) == 1
    r = regs[0]
    assert r.chi == 1
    assert len(r.circles) == 1
    # square region: each curve appears twice, split at the crossing
    runs = r.circle_owner_runs(0)
    assert [owner for owner, _ in runs] in ([0, 1, 0, 1], [1, 0, 1, 0])


def test_trivial_wiggle_makes_two_bigons_and_annulus():
    s = Surface(1, 0)
    wiggle = Curve([Crossing("a1", 1, F(1, 3)), Crossing("a1", -1, F(2, 3))])
    regs, ex = regions(s.complex, {0: m(), 1: wiggle}, [0, 1])
    assert len(regs) == 3
    bigons = [r for r in regs if r.chi == 1 and len(r.circles) == 1]
    assert len(bigons) == 2
    for r in bigons:
        runs = r.circle_owner_runs(0)
        assert len(runs) == 2
        assert sorted(owner for owner, _ in runs) == [0, 1]


def test_cut_disk_along_arc():
    s = Surface(0, 1)
    a = Arc(EndPoint("e1", F(1, 3)), [], EndPoint("e1", F(2, 3)))
    ex = explode(s.complex, {0: a}, [0])
    comps = ex.component_summary()
    # an arc cuts the disk into two disks; each has boundary mixing free
    # original edge and the arc copy, counted as one wall-ish circle
    assert len(comps) == 2
    for genus, n_orig, n_wall in comps:
        assert genus == 0
        assert n_orig + n_wall == 1


def test_bordered_cut_to_page():
    # genus-1 two-hole surface cut along the meridian gives genus 0 with
    # the two original holes plus two cut circles
    s = Surface(1, 2)
    ex = explode(s.complex, {0: m()}, [0])
    comps = ex.component_summary()
    assert comps == [(0, 2, 2)]
