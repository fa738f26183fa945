"""Algebraic oracles: homology pairings and fundamental-group data.

Everything here reduces to integer linear algebra over crossing data; the
heavier 3-manifold questions are answered only at this necessary-condition
level, with move certificates carrying the rest of the argument.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import kernel
from .arrangement import Arrangement
from .curves import chords_of, validate_embedded, CurveError
from .errors import ValidationError
from .snf import cokernel_invariants, smith_normal_form


@dataclass(frozen=True)
class AbelianGroup:
    torsion: tuple
    free_rank: int

    def is_trivial(self):
        return not self.torsion and self.free_rank == 0

    def __str__(self):
        parts = ["Z/%d" % d for d in self.torsion]
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append("Z^%d" % self.free_rank)
        return " + ".join(parts) if parts else "0"


def h1_pair_matrix(surface, fam_a, fam_b):
    """Algebraic intersection matrix of two curve families.

    Its cokernel presents H1 of the 3-manifold the pair describes as a
    Heegaard diagram.
    """
    return [[kernel.algebraic_intersection(surface, a, b) for b in fam_b]
            for a in fam_a]


def pair_cokernel(surface, fam_a, fam_b):
    M = h1_pair_matrix(surface, fam_a, fam_b)
    torsion, free = cokernel_invariants(M)
    return AbelianGroup(tuple(torsion), free)


def count_k(surface, fam_a, fam_b):
    """Zeros in the Smith form of the pair matrix; ValidationError when the
    cokernel has torsion (the pair cannot present a connected sum of
    S^1 x S^2)."""
    M = h1_pair_matrix(surface, fam_a, fam_b)
    if not M:
        return 0
    diag, *_ = smith_normal_form(M)
    if any(d not in (0, 1) for d in diag):
        raise ValidationError(
            "pair homology has torsion %s; not a #_k S^1xS^2 diagram"
            % [d for d in diag if d not in (0, 1)])
    return sum(1 for d in diag if d == 0) + (len(M[0]) - len(diag) if M else 0)


def h1_closed_4manifold(surface, families):
    """H1 of the trisected 4-manifold: H1 of the surface modulo all three
    families' classes."""
    rows = []
    for fam in families:
        for c in fam:
            rows.append(kernel.homology_class(surface, c))
    if not rows:
        return AbelianGroup((), 0)
    torsion, free = cokernel_invariants(rows)
    return AbelianGroup(tuple(torsion), free)


# ----------------------------------------------------------------------
# fundamental group presentations

@dataclass
class Presentation:
    generators: list
    relators: list  # lists of signed generator indices (1-based, sign=inverse)

    def __str__(self):
        gens = ", ".join(self.generators)
        rels = []
        for r in self.relators:
            if not r:
                rels.append("1")
                continue
            word = []
            for g in r:
                name = self.generators[abs(g) - 1]
                word.append(name if g > 0 else name + "^-1")
            rels.append("*".join(word))
        return "< %s | %s >" % (gens, ", ".join(rels))


def pi1_presentation(surface, fam_a, fam_b):
    """Presentation with generators dual to fam_a, one relator per fam_b
    curve (its crossing word through the fam_a curves).

    The abelianization is checked against the pair matrix on every call.
    """
    objs = kernel.separate_positions(list(fam_a) + list(fam_b))
    objs = kernel.canonicalize(surface, objs)
    fam_a2 = objs[:len(fam_a)]
    fam_b2 = objs[len(fam_a):]
    cx = surface.complex if hasattr(surface, "complex") else surface
    arr = Arrangement(cx, {i: c for i, c in enumerate(objs)})
    na = len(fam_a2)
    relators = []
    for bi in range(len(fam_b2)):
        oid = na + bi
        b = fam_b2[bi]
        word = []
        for k in range(len(b.crossings)):
            cd = arr.chords[(oid, k)]
            for s, node in cd.events:
                a_cd, b_cd = arr.crossing_nodes[node]
                other = a_cd if a_cd.owner[0] != oid else b_cd
                mine = a_cd if a_cd.owner[0] == oid else b_cd
                if other.owner[0] >= na:
                    continue  # fam_b self-crossings do not occur (disjoint)
                dt, da = mine.direction, other.direction
                cr = dt[0] * da[1] - dt[1] * da[0]
                sign = 1 if cr > 0 else -1
                word.append(sign * (other.owner[0] + 1))
        relators.append(word)
    pres = Presentation(["x%d" % (i + 1) for i in range(na)], relators)

    # abelianization must match the pair matrix
    M = h1_pair_matrix(surface, fam_a2, fam_b2)
    ab = [[0] * len(fam_b2) for _ in range(na)]
    for bi, rel in enumerate(relators):
        for g in rel:
            ab[abs(g) - 1][bi] += 1 if g > 0 else -1
    want = [[M[i][j] for j in range(len(fam_b2))] for i in range(na)]
    got_inv = cokernel_invariants([[ab[i][j] for j in range(len(fam_b2))]
                                   for i in range(na)]) if na else ([], 0)
    want_inv = cokernel_invariants(want) if na else ([], 0)
    if got_inv != want_inv:
        raise ValidationError("presentation abelianization mismatch")
    return pres


# ----------------------------------------------------------------------
# bounded Tietze simplification

def _free_reduce(word):
    out = []
    for g in word:
        if out and out[-1] == -g:
            out.pop()
        else:
            out.append(g)
    return out


def _cyclic_reduce(word):
    word = _free_reduce(word)
    while len(word) >= 2 and word[0] == -word[-1]:
        word = word[1:-1]
    return word


def _substitute(word, gen, repl):
    """Replace generator ``gen`` by the word ``repl`` (and inverses)."""
    out = []
    inv = [-g for g in reversed(repl)]
    for g in word:
        if g == gen:
            out.extend(repl)
        elif g == -gen:
            out.extend(inv)
        else:
            out.append(g)
    return _free_reduce(out)


def tietze_simplify(pres, budget=400):
    """Bounded greedy simplification.

    Returns (verdict, presentation): verdict in {'trivial', 'free',
    'inconclusive'}; 'free' means free of rank = len(generators) after
    simplification, relators all trivial.
    """
    gens = list(range(1, len(pres.generators) + 1))
    rels = [_cyclic_reduce(list(r)) for r in pres.relators]
    steps = 0
    changed = True
    while changed and steps < budget:
        changed = False
        rels = [r for r in rels if r]
        # eliminate a generator occurring exactly once in some relator
        for ri, r in enumerate(rels):
            counts = {}
            for g in r:
                counts[abs(g)] = counts.get(abs(g), 0) + 1
            target = None
            for g in r:
                if counts[abs(g)] == 1:
                    target = g
                    break
            if target is None:
                continue
            # r = u * target * v  =>  target = u^-1 v^-1
            i = r.index(target)
            u, v = r[:i], r[i + 1:]
            repl = [-g for g in reversed(u)] + [-g for g in reversed(v)]
            if target < 0:
                repl = [-g for g in reversed(repl)]
                target = -target
            new_rels = []
            for rj, r2 in enumerate(rels):
                if rj == ri:
                    continue
                new_rels.append(_cyclic_reduce(_substitute(r2, target, repl)))
            rels = new_rels
            gens.remove(target)
            steps += 1
            changed = True
            break
        if changed:
            continue
        # shorten a relator using another (overlap more than half)
        for ri in range(len(rels)):
            for rj in range(len(rels)):
                if ri == rj:
                    continue
                shorter = _shorten_with(rels[ri], rels[rj])
                if shorter is not None and len(shorter) < len(rels[ri]):
                    rels[ri] = shorter
                    steps += 1
                    changed = True
                    break
            if changed:
                break
    rels = [r for r in rels if r]
    out = Presentation(["x%d" % g for g in gens], rels)
    if not gens and not rels:
        return "trivial", out
    if not rels:
        return "free", out
    return "inconclusive", out


def _shorten_with(r, s):
    """Best cyclic substitution of relator s (or inverse) into r."""
    n, m2 = len(r), len(s)
    if m2 == 0 or n == 0:
        return None
    best = None
    doubles = [s + s, [-g for g in reversed(s)] * 2]
    for ss in doubles:
        for start in range(m2):
            for L in range(m2 // 2 + 1, m2 + 1):
                piece = ss[start:start + L]
                repl = [-g for g in reversed(ss[start + L:start + m2])]
                cand = _replace_subword(r, piece, repl)
                if cand is not None:
                    cand = _cyclic_reduce(cand)
                    if best is None or len(cand) < len(best):
                        best = cand
    return best


def _replace_subword(r, piece, repl):
    n, L = len(r), len(piece)
    if L == 0 or L > n:
        return None
    rr = r + r
    for i in range(n):
        if rr[i:i + L] == piece:
            rest = rr[i + L:i + n]
            return list(repl) + rest
    return None
