"""Stage-1 search: (1,1;0,2) relative diagrams with S^4-like doubles.

Candidates are embedded curves given by short words over the scheme edges,
including hole-winding ones; triples are filtered by the page condition,
then by the full gate pipeline (arcs, doubling, type, homology).
"""
import itertools
import sys
import time
from fractions import Fraction as F

sys.path.insert(0, 'src')
from trisect.polygon import Surface
from trisect.curves import Curve, Crossing, validate_embedded
from trisect import kernel
from trisect.canonical import canonical_key
from trisect.diagrams import RelativeType, TrisectionType
from trisect.doubling import RelativeTrisectionDiagram, generate_arcs, double


def log(*a):
    print(*a, flush=True)


S = Surface(1, 2)
PAGE = Surface(0, 2)
LETTERS = ['a1', 'b1', 'c1', 'c2']
SPREADS = [F(1, 2), F(1, 3), F(2, 3), F(1, 5), F(4, 5), F(2, 5), F(3, 5)]


def realizations(seq, want=2):
    """Embedded placements of a (label, dir) word, a couple per word."""
    n = len(seq)
    by_label = {}
    for i, (l, d) in enumerate(seq):
        by_label.setdefault(l, []).append(i)
    groups = sorted(by_label.items())
    out = []

    def rec(gi, acc):
        if len(out) >= want:
            return
        if gi == len(groups):
            word = [None] * n
            for (l, idxs), combo in zip(groups, acc):
                for k, idx in enumerate(idxs):
                    word[idx] = Crossing(l, seq[idx][1], combo[k])
            try:
                c = Curve(word)
                validate_embedded(S.complex, [c])
                out.append(c)
            except Exception:
                pass
            return
        l, idxs = groups[gi]
        for combo in itertools.permutations(SPREADS[:len(idxs) + 2], len(idxs)):
            rec(gi + 1, acc + [combo])
            if len(out) >= want:
                return

    rec(0, [])
    return out


def main():
    cands = {}
    seen = set()
    t0 = time.time()
    total_seqs = 0
    for n in (1, 2, 3):
        for labs in itertools.product(LETTERS, repeat=n):
            for dirs in itertools.product((1, -1), repeat=n):
                total_seqs += 1
                seq = tuple(zip(labs, dirs))
                for c in realizations(seq):
                    try:
                        if kernel.surger_along(S, [c]) != [PAGE]:
                            continue
                        key = canonical_key(S, c)
                        if key in seen or key == ():
                            continue
                        seen.add(key)
                        cands['w%02d' % len(cands)] = c
                    except Exception:
                        continue
    log('seqs', total_seqs, 'distinct page-cutting candidates:', len(cands),
        '%.0fs' % (time.time() - t0))
    for k in sorted(cands):
        log('  ', k, [(c.label, c.direction) for c in cands[k].crossings])

    rel_t = RelativeType(1, 1, 1, 1, 0, 2)
    target = TrisectionType(3, 1, 1, 1)
    names = sorted(cands)
    wins = []
    tried = 0
    t0 = time.time()
    for na, nb, ng in itertools.product(names, repeat=3):
        if len({na, nb, ng}) < 2:
            continue
        tried += 1
        if tried % 500 == 0:
            log('...tried', tried, '%.0fs' % (time.time() - t0),
                'wins', len(wins))
        try:
            rd = RelativeTrisectionDiagram(S, [cands[na]], [cands[nb]],
                                           [cands[ng]], rel_t)
            rd.validate()
            ad = generate_arcs(rd, budget=40)
            d = double(ad)
            t = d.compute_type()
            if t == target and d.h1_4manifold().is_trivial():
                d.validate()
                wins.append((na, nb, ng))
                log('WIN:', na, nb, ng,
                    [(c.label, c.direction) for c in cands[na].crossings], '|',
                    [(c.label, c.direction) for c in cands[nb].crossings], '|',
                    [(c.label, c.direction) for c in cands[ng].crossings])
                if len(wins) >= 5:
                    return
        except Exception:
            pass
    log('tried', tried, 'wins', wins)


if __name__ == '__main__':
    main()
