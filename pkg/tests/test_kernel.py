from fractions import Fraction

import pytest

from trisect import kernel
from trisect.curves import Crossing, Curve, CurveError
from trisect.errors import DomainMismatchError, IllegalSlideError
from trisect.polygon import Surface

F = Fraction


def m(i=1, t=F(1, 2)):
    return Curve([Crossing("a%d" % i, 1, t)])


def l(i=1, t=F(1, 2)):
    return Curve([Crossing("b%d" % i, 1, t)])


def wiggle(label="a1"):
    return Curve([Crossing(label, 1, F(1, 3)), Crossing(label, -1, F(2, 3))])


def separating_genus2():
    # bounds a one-handled piece on each side; surgery splits off two tori
    return Curve([Crossing("a1", 1, F(1, 2)), Crossing("b1", 1, F(1, 2)),
                  Crossing("a1", -1, F(1, 4)), Crossing("b1", -1, F(1, 4))])


T1 = Surface(1, 0)
T2 = Surface(2, 0)


class TestIntersections:
    def test_meridian_longitude(self):
        assert kernel.geometric_intersection(T1, m(), l()) == 1

    def test_disjoint_handles(self):
        assert kernel.geometric_intersection(T2, m(1), m(2)) == 0

    def test_twisted_longitude_reduces(self):
        # a curve drawn with removable crossings against m
        assert kernel.geometric_intersection(T1, m(), wiggle()) == 0

    def test_algebraic_antisymmetric(self):
        assert kernel.algebraic_intersection(T1, m(), l()) == 1
        assert kernel.algebraic_intersection(T1, l(), m()) == -1

    def test_algebraic_reversal_negates(self):
        assert kernel.algebraic_intersection(T1, m(), l().reversed()) == -1

    def test_self_intersection_zero(self):
        assert kernel.geometric_intersection(T1, m(), m()) == 0
        assert kernel.algebraic_intersection(T1, m(), m()) == 0

    def test_abs_algebraic_bounded_by_geometric(self):
        x = kernel.dehn_twist(T1, l(), m(), 3)
        a = kernel.algebraic_intersection(T1, x, l())
        g = kernel.geometric_intersection(T1, x, l())
        assert abs(a) <= g


class TestHomology:
    def test_meridian_basis(self):
        assert kernel.homology_class(T2, m(1)) == [1, 0, 0, 0]
        assert kernel.homology_class(T2, l(2)) == [0, 0, 0, 1]

    def test_null_homotopic_zero(self):
        assert kernel.homology_class(T1, wiggle()) == [0, 0]

    def test_twist_formula_vector(self):
        tl = kernel.dehn_twist(T1, l(), m(), 1)
        assert kernel.homology_class(T1, tl) == [-1, 1]

    def test_closed_only(self):
        with pytest.raises(DomainMismatchError):
            kernel.homology_class(Surface(1, 1), m())


class TestCanonicalize:
    def test_minimal_pair_unchanged(self):
        out = kernel.canonicalize(T1, [m(), l()])
        assert kernel.geometric_intersection(T1, out[0], out[1]) == 1

    def test_bigon_removed(self):
        tw = kernel.dehn_twist(T1, l(), m(), 1)
        back = kernel.dehn_twist(T1, tw, m(), -1)
        out = kernel.canonicalize(T1, [back, l()])
        # t^-1 t (l) is isotopic to l: all crossings with l removable
        from trisect.arrangement import Arrangement
        arr = Arrangement(T1.complex, {0: out[0], 1: out[1]})
        assert arr.crossing_count(0, 1) == 0

    def test_idempotent(self):
        tw = kernel.dehn_twist(T1, l(), m(), 2)
        once = kernel.canonicalize(T1, [tw, l()])
        twice = kernel.canonicalize(T1, once)
        assert once == twice

    def test_preserves_homology(self):
        tw = kernel.dehn_twist(T1, l(), m(), 2)
        out = kernel.canonicalize(T1, [tw, m()])
        assert kernel.homology_class(T1, out[0]) == kernel.homology_class(T1, tw)


class TestIsotopy:
    def test_parallel_copies(self):
        assert kernel.is_isotopic(T1, m(), m(1, F(1, 4)))

    def test_self(self):
        assert kernel.is_isotopic(T1, m(), m())

    def test_meridian_vs_longitude(self):
        assert not kernel.is_isotopic(T1, m(), l())

    def test_trivial_curves(self):
        assert kernel.is_trivial(T1, wiggle())
        assert not kernel.is_trivial(T1, m())
        assert kernel.is_isotopic(T1, wiggle(), wiggle("b1"))
        assert not kernel.is_isotopic(T1, wiggle(), m())

    def test_twisted_not_isotopic(self):
        tw = kernel.dehn_twist(T1, l(), m(), 1)
        assert not kernel.is_isotopic(T1, tw, l())


class TestDehnTwist:
    def test_power_zero_identity(self):
        assert kernel.dehn_twist(T1, l(), m(), 0) == l()

    def test_disjoint_support(self):
        t = kernel.dehn_twist(T2, m(1), m(2), 3)
        assert kernel.is_isotopic(T2, t, m(1))

    def test_homology_formula(self):
        for k in (-3, -1, 1, 2, 3):
            tl = kernel.dehn_twist(T1, l(), m(), k)
            assert kernel.homology_class(T1, tl) == [-k, 1]

    def test_inverse(self):
        tw = kernel.dehn_twist(T1, l(), m(), 1)
        back = kernel.dehn_twist(T1, tw, m(), -1)
        assert kernel.is_isotopic(T1, back, l())

    def test_intersection_formula_simple(self):
        for k in range(-3, 4):
            tk = kernel.dehn_twist(T1, l(), m(), k)
            assert kernel.geometric_intersection(T1, tk, l()) == abs(k)

    def test_intersection_formula_i2(self):
        # b with i(l, b) = 2: twist the meridian twice around the longitude
        b = kernel.dehn_twist(T1, m(), l(), 2)
        assert kernel.geometric_intersection(T1, b, m()) == 2
        for k in (-2, -1, 1, 2):
            tk = kernel.dehn_twist(T1, m(), b, k)
            assert kernel.geometric_intersection(T1, tk, m()) == abs(k) * 4


class TestBandSlide:
    def test_homology_sum(self):
        slid = kernel.band_slide(T2, m(1), m(2))
        assert kernel.homology_class(T2, slid) == [1, 0, 1, 0]

    def test_disjoint_from_over(self):
        slid = kernel.band_slide(T2, m(1), m(2))
        assert kernel.geometric_intersection(T2, slid, m(2)) == 0

    def test_inverse_slide(self):
        slid = kernel.band_slide(T2, m(1), m(2))
        back = kernel.band_slide(T2, slid, m(2).reversed())
        assert kernel.is_isotopic(T2, back, m(1))

    def test_self_slide_forbidden(self):
        with pytest.raises(IllegalSlideError):
            kernel.band_slide(T2, m(1), m(1))

    def test_crossing_curves_forbidden(self):
        with pytest.raises(IllegalSlideError):
            kernel.band_slide(T1, m(), l())


class TestSurgery:
    def test_torus_meridian_gives_sphere(self):
        assert kernel.surger_along(T1, [m()]) == [Surface(0, 0)]

    def test_full_cut_system_gives_sphere(self):
        assert kernel.surger_along(T2, [m(1), m(2)]) == [Surface(0, 0)]

    def test_separating_curve_splits(self):
        comps = kernel.surger_along(T2, [separating_genus2()])
        assert comps == [Surface(1, 0), Surface(1, 0)]

    def test_crossing_family_rejected(self):
        with pytest.raises(CurveError):
            kernel.surger_along(T1, [m(), l()])

    def test_euler_bookkeeping(self):
        # fewer than g curves: chi rises by 2 per surgered curve
        comps = kernel.surger_along(T2, [m(1)])
        assert sum(s.euler_characteristic for s in comps) == T2.euler_characteristic + 2


def separating_twist_curve():
    return separating_genus2()


class TestClaspTwists:
    """Twists along curves meeting the target with cancelling signs."""

    def test_clasp_intersection_formula(self):
        sep = separating_genus2()
        x = kernel.band_slide(T2, m(1, F(5, 8)), m(2))
        assert kernel.geometric_intersection(T2, x, sep) == 2
        assert kernel.algebraic_intersection(T2, x, sep) == 0
        for k in (1, -1, 2, -2):
            t = kernel.dehn_twist(T2, x, sep, k)
            assert kernel.geometric_intersection(T2, t, x) == abs(k) * 4
            back = kernel.dehn_twist(T2, t, sep, -k)
            assert kernel.is_isotopic(T2, back, x)

    def test_twisted_homology_unchanged(self):
        sep = separating_genus2()
        x = kernel.band_slide(T2, m(1, F(5, 8)), m(2))
        t = kernel.dehn_twist(T2, x, sep, 2)
        assert kernel.homology_class(T2, t) == kernel.homology_class(T2, x)
