"""Probe: greedy destabilization of the doubled stage-3 diagram, and the
clasp curve for the twist family."""
import sys
import time
from fractions import Fraction as F

sys.path.insert(0, 'src')
from trisect.polygon import Surface
from trisect.curves import Curve, Crossing
from trisect import kernel
from trisect.diagrams import RelativeType, detect_destabilizations, destabilize
from trisect.doubling import RelativeTrisectionDiagram, generate_arcs, double


def log(*a):
    print(*a, flush=True)


def build_stage(g):
    b = g + 1
    S = Surface(g, b)
    alpha = [Curve([Crossing('a%d' % i, 1, F(1, 2))]) for i in range(1, g + 1)]
    beta = [Curve([Crossing('b%d' % i, 1, F(1, 2))]) for i in range(1, g + 1)]
    gamma = [Curve([Crossing('a%d' % i, 1, F(1, 3)),
                    Crossing('c%d' % (g + 1 - i), 1, F(1, 2))])
             for i in range(1, g + 1)]
    rel = RelativeType(g, g, g, g, 0, b)
    return RelativeTrisectionDiagram(S, alpha, beta, gamma, rel)


def main():
    rd = build_stage(3)
    S = rd.surface

    # black clasp curve: boundary of the handle-3 neighborhood
    black = Curve([Crossing('a3', 1, F(7, 8)), Crossing('b3', 1, F(7, 8)),
                   Crossing('a3', -1, F(1, 8)), Crossing('b3', -1, F(1, 8))])
    log('black embedded/essential:', not kernel.is_trivial(S, black))
    for role in ('alpha', 'beta', 'gamma'):
        fam = rd.family(role)
        log('i(black, %s) =' % role,
            [kernel.geometric_intersection(S, black, c) for c in fam])
    log('alg(black, gamma3) =',
        kernel.algebraic_intersection(S, black, rd.gamma[2]))

    ad = generate_arcs(rd, budget=300)
    for name in ('a', 'b', 'c'):
        arcs = ad.arcs(name)
        log('i(black, arcs_%s) =' % name,
            [kernel.geometric_intersection(S, black, a) for a in arcs])

    t0 = time.time()
    d = double(ad)
    log('double:', d.compute_type(), d.h1_4manifold(), '%.1fs' % (time.time() - t0))

    # greedy destabilization
    count = 0
    t0 = time.time()
    while True:
        sites = detect_destabilizations(d)
        log('genus', d.surface.genus, 'sites:', [str(s) for s in sites[:4]],
            '%.1fs' % (time.time() - t0))
        if not sites:
            break
        d = destabilize(d, sites[0])
        count += 1
        t0 = time.time()
    log('greedy destabs:', count, 'final genus', d.surface.genus,
        'type', d.compute_type())


if __name__ == '__main__':
    main()
