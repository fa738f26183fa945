"""Greedy destabilization probes for stage-1 and stage-2 doubles."""
import sys
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


def names_for(d, g):
    out = []
    per = g
    for role in ("alpha", "beta", "gamma"):
        for kind in ("o", "m", "j"):
            for i in range(per):
                out.append("%s%s%d" % (role[0], kind, i + 1))
    return out


def main():
    for g in (1, 2):
        rd = build_stage(g)
        ad = generate_arcs(rd, budget=300)
        d = double(ad)
        log('stage', g, 'double', d.compute_type())
        count = 0
        while True:
            sites = detect_destabilizations(d)
            if not sites:
                break
            log('  destab', sites[0], 'of', len(sites))
            d = destabilize(d, sites[0])
            count += 1
        log('stage', g, 'greedy destabs:', count, 'final', d.compute_type())
        if d.surface.genus:
            M = d.intersection_counts()
            log('  remaining matrix:')
            for row in M:
                log('   ', row)
            curves = d.all_curves()
            for i in range(len(curves)):
                for j in range(i + 1, len(curves)):
                    if M[i][j] == 0 and kernel.is_isotopic(d.surface, curves[i], curves[j]):
                        log('  parallel:', i, j)


if __name__ == '__main__':
    main()
