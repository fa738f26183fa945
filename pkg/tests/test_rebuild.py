import random
from fractions import Fraction

from trisect import kernel
from trisect.curves import Crossing, Curve
from trisect.polygon import Surface, standard_word
from trisect.rebuild import Complex, _poly_index_pair, standardize

F = Fraction


def m(i=1, t=F(1, 2)):
    return Curve([Crossing("a%d" % i, 1, t)])


def l(i=1, t=F(1, 2)):
    return Curve([Crossing("b%d" % i, 1, t)])


def scramble(cplx, rng, nmoves):
    """Random cut+paste moves: homeomorphisms of the tracked picture."""
    for _ in range(nmoves):
        live = [p for p, w in enumerate(cplx.polys) if w]
        p = rng.choice(live)
        n = len(cplx.polys[p])
        if n < 3:
            break
        i, j = rng.randrange(n), rng.randrange(n)
        if i == j:
            continue
        cplx.cut(p, i, j)
        p1, p2 = _poly_index_pair(cplx)
        shared = sorted({x for x, s in cplx.polys[p1]}
                        & {x for x, s in cplx.polys[p2]})
        cplx.merge(rng.choice(shared))


def test_standardize_plain_torus():
    surf, words = standardize([standard_word(1, 0)], {0: m()})
    assert surf == Surface(1, 0)
    assert words[0] == m()


def test_scramble_round_trip_preserves_invariants():
    for seed in range(12):
        rng = random.Random(seed)
        g = rng.choice([1, 2, 3])
        s = Surface(g, 0)
        tw = kernel.dehn_twist(s, l(1, F(1, 3)), m(1), rng.choice([1, 2, -1]))
        words = {0: m(1), 2: tw}
        if g >= 2:
            words[1] = m(2)
        ids = sorted(words)
        before = {}
        for i in ids:
            for j in ids:
                if i < j:
                    before[(i, j)] = (
                        kernel.geometric_intersection(s, words[i], words[j]),
                        abs(kernel.algebraic_intersection(s, words[i], words[j])))
        cplx = Complex([standard_word(g, 0)], words)
        scramble(cplx, rng, rng.choice([3, 5, 8]))
        cplx.validate()
        surf, out = standardize(cplx.polys, cplx.words)
        assert surf.genus == g
        for (i, j), v in before.items():
            got = (kernel.geometric_intersection(surf, out[i], out[j]),
                   abs(kernel.algebraic_intersection(surf, out[i], out[j])))
            assert got == v, (seed, i, j, got, v)


def test_two_polygon_merge():
    # a torus presented as two squares glued along two edges
    polys = [[("x", 1), ("y", 1), ("z", 1)],
             [("x", -1), ("y", -1), ("z", -1)]]
    surf, words = standardize(polys, {})
    assert surf.genus == 1
