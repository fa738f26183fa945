"""Inspect the doubled stage-3 diagram: crossing matrix and parallelism."""
import sys
from fractions import Fraction as F

sys.path.insert(0, 'src')
from trisect.polygon import Surface
from trisect.curves import Curve, Crossing
from trisect import kernel
from trisect.diagrams import RelativeType
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
    ad = generate_arcs(rd, budget=300)
    d = double(ad)
    names = []
    for role in ("alpha", "beta", "gamma"):
        for i in range(9):
            kind = ("o", "m", "j")[i // 3]
            names.append("%s%s%d" % (role[0], kind, i % 3 + 1))
    M = d.intersection_counts()
    log("crossing matrix (drawn, reduced):")
    log("     " + " ".join("%3s" % n for n in names))
    for i, row in enumerate(M):
        log("%4s " % names[i] + " ".join("%3d" % v for v in row))
    # parallel pairs across families
    curves = d.all_curves()
    for i in range(len(curves)):
        for j in range(i + 1, len(curves)):
            if M[i][j] == 0 and kernel.is_isotopic(d.surface, curves[i], curves[j]):
                log("parallel:", names[i], names[j])


if __name__ == '__main__':
    main()
