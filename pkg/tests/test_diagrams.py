from fractions import Fraction

import pytest

from trisect import kernel
from trisect.curves import Crossing, Curve
from trisect.diagrams import (DestabSite, TrisectionDiagram, TrisectionType,
                              RelativeType, detect_destabilizations,
                              destabilize, euler_characteristic,
                              realizable_double_types, stabilize,
                              validate_cut_system)
from trisect.errors import IllegalDestabilizationError, ValidationError
from trisect.polygon import Surface

F = Fraction


def m(i=1, t=F(1, 2)):
    return Curve([Crossing("a%d" % i, 1, t)])


def l(i=1, t=F(1, 2)):
    return Curve([Crossing("b%d" % i, 1, t)])


def empty_diagram():
    return TrisectionDiagram(Surface(0, 0), [], [], [],
                             TrisectionType(0, 0, 0, 0))


def genus1_s4(variant=1):
    return stabilize(empty_diagram(), variant)


class TestTypes:
    def test_euler(self):
        assert euler_characteristic(TrisectionType(0, 0, 0, 0)) == 2
        assert euler_characteristic(TrisectionType(9, 3, 3, 3)) == 2
        assert euler_characteristic(TrisectionType(7, 1, 1, 5)) == 2

    def test_bounds(self):
        with pytest.raises(ValidationError):
            TrisectionType(1, 2, 0, 0)

    def test_relative_doubles(self):
        assert RelativeType(3, 3, 3, 3, 0, 4).doubled() == TrisectionType(9, 3, 3, 3)
        assert RelativeType(2, 2, 2, 2, 0, 3).doubled() == TrisectionType(6, 2, 2, 2)
        assert RelativeType(0, 0, 0, 0, 0, 1).doubled() == TrisectionType(0, 0, 0, 0)

    def test_relative_constraints(self):
        with pytest.raises(ValidationError):
            RelativeType(3, 0, 0, 0, 0, 4)  # k_i < 2p+b-1


class TestCutSystems:
    def test_standard_cut_system(self):
        s = Surface(2, 0)
        assert validate_cut_system(s, [m(1), m(2)]).ok

    def test_parallel_copies_fail(self):
        s = Surface(2, 0)
        rep = validate_cut_system(s, [m(1), m(1, F(1, 4))])
        assert not rep.ok

    def test_wrong_count_fails(self):
        s = Surface(2, 0)
        assert not validate_cut_system(s, [m(1)]).ok

    def test_crossing_curves_fail(self):
        s = Surface(1, 0)
        assert validate_cut_system(s, [m(1)]).ok
        rep = validate_cut_system(Surface(2, 0), [m(1), l(1)])
        assert not rep.ok


class TestComputeType:
    def test_empty(self):
        d = empty_diagram()
        assert d.validate() == TrisectionType(0, 0, 0, 0)
        assert d.h1_4manifold().is_trivial()

    def test_genus1_variants(self):
        for v, t in ((1, TrisectionType(1, 1, 0, 0)),
                     (2, TrisectionType(1, 0, 1, 0)),
                     (3, TrisectionType(1, 0, 0, 1))):
            d = genus1_s4(v)
            assert d.validate() == t
            assert d.h1_4manifold().is_trivial()

    def test_stabilize_type_rule(self):
        d = genus1_s4(1)
        d2 = stabilize(d, 3)
        assert d2.validate() == TrisectionType(2, 1, 0, 1)
        assert euler_characteristic(d2.compute_type()) == 2


class TestDestabilization:
    def test_genus1_site_found(self):
        d = genus1_s4(2)
        sites = detect_destabilizations(d)
        assert len(sites) == 1
        assert sites[0].variant == 2

    def test_destabilize_back_to_empty(self):
        d = genus1_s4(1)
        site = detect_destabilizations(d)[0]
        d0 = destabilize(d, site)
        assert d0.surface.genus == 0
        assert d0.compute_type() == TrisectionType(0, 0, 0, 0)

    def test_stab_destab_round_trip_hash(self):
        d = genus1_s4(1)
        d2 = stabilize(d, 3)
        sites = [s for s in detect_destabilizations(d2) if s.variant == 3]
        assert sites
        back = destabilize(d2, sites[0])
        assert back.canonical_hash() == d.canonical_hash()

    def test_stabilized_site_always_detected(self):
        d = genus1_s4(1)
        for v in (1, 2, 3):
            d2 = stabilize(d, v)
            assert any(s.variant == v for s in detect_destabilizations(d2))

    def test_uncertified_site_rejected(self):
        d = genus1_s4(1)
        with pytest.raises(IllegalDestabilizationError):
            destabilize(d, DestabSite((0, 0, 0), 2))

    def test_blocked_by_meeting_curve(self):
        # type (2;1,0,1): the two summand triples block each other? they
        # are disjoint summands, so both destabs must be found
        d = stabilize(genus1_s4(1), 3)
        sites = detect_destabilizations(d)
        variants = sorted(s.variant for s in sites)
        assert variants == [1, 3]


class TestRemark33Solver:
    def test_target_7115_g2_empty(self):
        assert realizable_double_types(TrisectionType(7, 1, 1, 5), {2}) == []

    def test_target_7115_g3_unique(self):
        sols = realizable_double_types(TrisectionType(7, 1, 1, 5), {3})
        assert sols == [(3, 2, 0, (1, 1, 3))]

    def test_target_933_includes_d0(self):
        sols = realizable_double_types(TrisectionType(9, 3, 3, 3), {3})
        assert (3, 4, 0, (3, 3, 3)) in sols
