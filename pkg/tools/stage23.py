"""Gate check for the staged relative diagrams at genus 1, 2, 3."""
import sys
import time
from fractions import Fraction as F

sys.path.insert(0, 'src')
from trisect.polygon import Surface
from trisect.curves import Curve, Crossing
from trisect.diagrams import RelativeType
from trisect.doubling import RelativeTrisectionDiagram, generate_arcs, double


def log(*a):
    print(*a, flush=True)


def build_stage(g):
    b = g + 1
    S = Surface(g, b)
    alpha = [Curve([Crossing('a%d' % i, 1, F(1, 2))]) for i in range(1, g + 1)]
    beta = [Curve([Crossing('b%d' % i, 1, F(1, 2))]) for i in range(1, g + 1)]
    # nested handle-to-hole matching: handle i pairs with hole g+1-i so
    # the connecting strands never interleave
    gamma = [Curve([Crossing('a%d' % i, 1, F(1, 3)),
                    Crossing('c%d' % (g + 1 - i), 1, F(1, 2))])
             for i in range(1, g + 1)]
    rel = RelativeType(g, g, g, g, 0, b)
    return RelativeTrisectionDiagram(S, alpha, beta, gamma, rel)


def main():
    for g in (1, 2, 3):
        t0 = time.time()
        rd = build_stage(g)
        rd.validate()
        log('stage', g, 'valid rel diagram', '%.1fs' % (time.time() - t0))
        t0 = time.time()
        ad = generate_arcs(rd, budget=60)
        log('stage', g, 'arcs:',
            [len(a.crossings) for a in ad.arcs_a],
            [len(a.crossings) for a in ad.arcs_b],
            [len(a.crossings) for a in ad.arcs_c],
            '%.1fs' % (time.time() - t0))
        t0 = time.time()
        d = double(ad)
        t = d.compute_type()
        h1 = d.h1_4manifold()
        log('stage', g, 'double type', t, 'H1', h1, '%.1fs' % (time.time() - t0))
        t0 = time.time()
        d.validate()
        log('stage', g, 'double VALID', '%.1fs' % (time.time() - t0))


if __name__ == '__main__':
    main()
