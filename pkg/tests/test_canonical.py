import random
from fractions import Fraction

from trisect import kernel
from trisect.canonical import canonical_key
from trisect.curves import Crossing, Curve
from trisect.polygon import Surface

F = Fraction
T1 = Surface(1, 0)
T2 = Surface(2, 0)


def m(i=1, t=F(1, 2)):
    return Curve([Crossing("a%d" % i, 1, t)])


def l(i=1, t=F(1, 2)):
    return Curve([Crossing("b%d" % i, 1, t)])


def test_keys_of_parallel_copies_match():
    assert canonical_key(T1, m()) == canonical_key(T1, m(1, F(1, 7)))


def test_key_orientation_free():
    assert canonical_key(T1, m()) == canonical_key(T1, m().reversed())


def test_trivial_key_empty():
    wig = Curve([Crossing("a1", 1, F(1, 3)), Crossing("a1", -1, F(2, 3))])
    assert canonical_key(T1, wig) == ()


def test_twist_round_trip_key():
    tw = kernel.dehn_twist(T1, l(), m(), 1)
    back = kernel.dehn_twist(T1, tw, m(), -1)
    assert canonical_key(T1, back) == canonical_key(T1, l())
    assert canonical_key(T1, tw) != canonical_key(T1, l())


def test_slide_round_trip_key():
    slid = kernel.band_slide(T2, m(1), m(2))
    unslid = kernel.band_slide(T2, slid, m(2).reversed())
    assert canonical_key(T2, unslid) == canonical_key(T2, m(1))


def test_random_twist_round_trips():
    rng = random.Random(11)
    basis = [m(1), l(1), m(2), l(2)]
    for trial in range(20):
        target = rng.choice(basis)
        seq = []
        for _ in range(rng.randrange(1, 3)):
            seq.append((rng.choice(basis), rng.choice([-2, -1, 1, 2])))
        cur = target
        for c, k in seq:
            cur = kernel.dehn_twist(T2, cur, c, k)
        for c, k in reversed(seq):
            cur = kernel.dehn_twist(T2, cur, c, -k)
        assert canonical_key(T2, cur) == canonical_key(T2, target), (trial, seq)
        assert kernel.is_isotopic(T2, cur, target)


def test_key_consistent_with_isotopy_on_twisted_family():
    rng = random.Random(5)
    basis = [m(1), l(1)]
    curves = []
    for k in (-2, -1, 0, 1, 2):
        curves.append(kernel.dehn_twist(T1, l(), m(), k))
    for i in range(len(curves)):
        for j in range(i + 1, len(curves)):
            same_key = canonical_key(T1, curves[i]) == canonical_key(T1, curves[j])
            iso = kernel.is_isotopic(T1, curves[i], curves[j])
            assert same_key == iso
