"""Author the standardization script for the doubled staged diagram."""
import sys
import time
from fractions import Fraction as F

sys.path.insert(0, 'src')
from trisect.polygon import Surface
from trisect.curves import Curve, Crossing
from trisect.diagrams import RelativeType
from trisect.doubling import RelativeTrisectionDiagram, generate_arcs, double
from author_scripts import author_standardization, log


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
    g = int(sys.argv[1]) if len(sys.argv) > 1 else 1
    rd = build_stage(g)
    ad = generate_arcs(rd, budget=300)
    d = double(ad)
    log('double:', d.compute_type())
    t0 = time.time()
    lines, final = author_standardization(d, log_prefix='[g%d]' % g)
    log('elapsed %.0fs' % (time.time() - t0))
    if lines is None:
        log('FAILED; final type', final.compute_type())
        sys.exit(1)
    log('SCRIPT (%d moves):' % len(lines))
    for ln in lines:
        log('  ', ln)
    destabs = sum(1 for ln in lines if ln.startswith('destab'))
    log('destab count:', destabs)


if __name__ == '__main__':
    main()
