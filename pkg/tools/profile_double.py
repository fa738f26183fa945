"""Profile the stage-3 doubling to find the bottleneck."""
import cProfile
import pstats
import sys
from fractions import Fraction as F

sys.path.insert(0, 'src')
from trisect.polygon import Surface
from trisect.curves import Curve, Crossing
from trisect.diagrams import RelativeType
from trisect.doubling import RelativeTrisectionDiagram, generate_arcs, double


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


import signal
def _bail(sig, frame):
    raise KeyboardInterrupt
signal.signal(signal.SIGALRM, _bail)

rd = build_stage(3)
ad = generate_arcs(rd, budget=60)
print('arcs ok', flush=True)
prof = cProfile.Profile()
signal.alarm(240)
prof.enable()
try:
    d = double(ad)
    print('double done', d.compute_type(), flush=True)
except KeyboardInterrupt:
    pass
finally:
    prof.disable()
    stats = pstats.Stats(prof)
    stats.sort_stats('cumulative').print_stats(18)
