"""Cut-and-paste normalization of polygon schemes with curve tracking.

Any closed orientable scheme can be brought to the standard one-polygon
form (a1 b1 a1^-1 b1^-1 ...) by elementary moves:

* merge: glue two polygons along a shared edge pair,
* fold: cancel an adjacent inverse pair inside one polygon,
* cut: split a polygon along a corner-to-corner diagonal,
* paste: merge back along a chosen edge.

Move sequences are found on bare words (cheap) and then replayed once with
full curve tracking.  Tracked curves are rewritten mechanically: merges and
folds splice out crossings of the vanished edge, cuts insert crossings
along the new diagonal, ordered by exact segment intersections.
"""

from __future__ import annotations

from fractions import Fraction

from .arrangement import _pt, _seg_params
from .curves import (Arc, Crossing, Curve, CurveError, chords_of,
                     validate_embedded)
from .polygon import PolygonComplex, Surface, handle_labels, standard_word
from .positions import renormalize


class RebuildError(RuntimeError):
    pass


class Complex:
    """Mutable polygon complex with tracked curve words."""

    def __init__(self, polys, words=None, fresh=0):
        self.polys = [list(w) for w in polys]
        self.words = dict(words or {})
        self.fresh = fresh
        for w in self.polys:
            for l, s in w:
                if l[:1] == "d" and l[1:].isdigit():
                    self.fresh = max(self.fresh, int(l[1:]) + 1)

    def clone(self, with_words=True):
        return Complex([list(w) for w in self.polys],
                       dict(self.words) if with_words else {},
                       fresh=self.fresh)

    def to_polygon_complex(self):
        return PolygonComplex([w for w in self.polys if w])

    def new_label(self):
        self.fresh += 1
        return "d%d" % (self.fresh - 1)

    # -- bookkeeping ----------------------------------------------------

    def instances(self, label):
        out = []
        for p, word in enumerate(self.polys):
            for i, (l, s) in enumerate(word):
                if l == label:
                    out.append((p, i, s))
        return out

    def validate(self):
        self.to_polygon_complex().validate()
        cx = self.to_polygon_complex()
        if self.words:
            validate_embedded(cx, list(self.words.values()))

    # -- elementary moves ------------------------------------------------

    def splice_label(self, label):
        """Remove all crossings of ``label`` from every tracked word."""
        for oid, obj in list(self.words.items()):
            kept = [c for c in obj.crossings if c.label != label]
            if isinstance(obj, Curve):
                self.words[oid] = Curve(kept)
            else:
                if obj.start.label == label or obj.end.label == label:
                    raise RebuildError("cannot splice an arc endpoint edge")
                self.words[oid] = Arc(obj.start, kept, obj.end)

    def merge(self, label):
        """Glue the two polygons sharing ``label`` into one."""
        inst = self.instances(label)
        if len(inst) != 2:
            raise RebuildError("label %r is not glued" % label)
        (p, i, si), (q, j, sj) = inst
        if p == q:
            raise RebuildError("label %r is a handle of one polygon" % label)
        if si == -1:
            (p, i, si), (q, j, sj) = (q, j, sj), (p, i, si)
        P, Q = self.polys[p], self.polys[q]
        new = P[i + 1:] + P[:i] + Q[j + 1:] + Q[:j]
        self.polys[p] = new
        self.polys[q] = []
        self.splice_label(label)

    def fold(self, p, i):
        """Cancel an adjacent inverse pair word[i], word[i+1] in polygon p."""
        word = self.polys[p]
        n = len(word)
        if n <= 2:
            raise RebuildError("cannot fold a bigon")
        j = (i + 1) % n
        (l1, s1), (l2, s2) = word[i], word[j]
        if l1 != l2 or s1 * s2 != -1:
            raise RebuildError("sides %d,%d are not an inverse pair" % (i, j))
        keep = [word[k] for k in range(n) if k not in (i, j)]
        self.polys[p] = keep
        self.splice_label(l1)

    def cut(self, p, i, j):
        """Cut polygon p along the diagonal from corner i to corner j.

        Returns the label of the new edge.  The piece word[i:j] goes to a
        new polygon carrying the diagonal inverted; the remainder keeps the
        positive instance.
        """
        word = self.polys[p]
        n = len(word)
        i %= n
        j %= n
        if i == j:
            raise RebuildError("degenerate diagonal")
        d = self.new_label()
        if i < j:
            piece, rest = word[i:j], word[j:] + word[:i]
        else:
            piece, rest = word[i:] + word[:j], word[j:i]
        new_p1 = piece + [(d, -1)]
        new_p2 = rest + [(d, 1)]

        # rewrite tracked curves crossing the diagonal
        if self.words:
            self._insert_diagonal_crossings(p, i, j, d)
        self.polys[p] = new_p1
        self.polys.append(new_p2)
        return d

    def _insert_diagonal_crossings(self, p, i, j, d):
        """Insert crossings of the new diagonal into tracked words.

        The diagonal runs from corner i to corner j of polygon p; a chord
        crosses it when exactly one endpoint's boundary coordinate lies in
        the open arc (i, j).
        """
        cx = self.to_polygon_complex()
        # poly index in the pruned complex
        kept = [k for k, w in enumerate(self.polys) if w]
        cxp = kept.index(p)
        n = len(self.polys[p])

        def in_arc(theta):
            if i < j:
                return i < theta < j
            return theta > i or theta < j

        ci, cj = _pt(Fraction(i)), _pt(Fraction(j))
        hits = []  # (s_along_d, oid, chord_index, direction)
        for oid, obj in self.words.items():
            for ch in chords_of(cx, obj, oid):
                if ch.poly != cxp:
                    continue
                a_in = in_arc(ch.theta0)
                b_in = in_arc(ch.theta1)
                if a_in == b_in:
                    continue
                params = _seg_params(ci, cj, _pt(ch.theta0), _pt(ch.theta1))
                if params is None:
                    raise RebuildError("degenerate diagonal crossing")
                s, _ = params
                # exits the piece through d когда it starts inside
                direction = -1 if a_in else 1
                hits.append((s, oid, ch.owner[1], direction))
        hits.sort(key=lambda h: h[0])
        m = len(hits)
        inserts = {}
        for rank, (s, oid, chord_idx, direction) in enumerate(hits):
            t = Fraction(rank + 1, m + 1)
            inserts.setdefault(oid, []).append((chord_idx, direction, t))
        for oid, ins in inserts.items():
            obj = self.words[oid]
            if isinstance(obj, Curve):
                word = list(obj.crossings)
                # chord k sits after word index k; insert in reverse order
                for chord_idx, direction, t in sorted(ins, reverse=True):
                    word.insert(chord_idx + 1, Crossing(d, direction, t))
                self.words[oid] = Curve(word)
            else:
                word = list(obj.crossings)
                for chord_idx, direction, t in sorted(ins, reverse=True):
                    word.insert(chord_idx, Crossing(d, direction, t))
                self.words[oid] = Arc(obj.start, word, obj.end)

    def paste(self, label):
        self.merge(label)

    # -- cleanup loops ----------------------------------------------------

    def merge_all(self):
        """Merge polygons until each component is a single polygon."""
        changed = True
        while changed:
            changed = False
            seen = {}
            for p, word in enumerate(self.polys):
                if not word:
                    continue
                for l, s in word:
                    if l in seen and seen[l] != p:
                        self.merge(l)
                        changed = True
                        break
                    seen[l] = p
                if changed:
                    break

    def fold_all(self):
        changed = True
        while changed:
            changed = False
            for p, word in enumerate(self.polys):
                n = len(word)
                if n <= 2:
                    continue
                for i in range(n):
                    (l1, s1) = word[i]
                    (l2, s2) = word[(i + 1) % n]
                    if l1 == l2 and s1 * s2 == -1:
                        self.fold(p, i)
                        changed = True
                        break
                if changed:
                    break

# ----------------------------------------------------------------------
# normalization to the standard scheme

def _canonical_state(polys):
    words = []
    for w in polys:
        if not w:
            continue
        best = min(tuple(w[i:] + w[:i]) for i in range(len(w)))
        words.append(best)
    return tuple(sorted(words))


def _vertex_classes(polys):
    return PolygonComplex([w for w in polys if w], check=False).vertex_classes()


def _block_score(word):
    """Number of letters covered by disjoint consecutive u v u^- v^- blocks."""
    n = len(word)
    if n % 4:
        pass
    best = 0
    for rot in range(n):
        w = word[rot:] + word[:rot]
        covered = 0
        i = 0
        while i + 4 <= n:
            (l1, s1), (l2, s2), (l3, s3), (l4, s4) = w[i:i + 4]
            if l1 == l3 and l2 == l4 and s1 == -s3 and s2 == -s4 \
                    and l1 != l2:
                covered += 4
                i += 4
            else:
                break
        best = max(best, covered)
    return best


def _is_standard_shape(word):
    return _block_score(word) == len(word) and len(word) % 4 == 0


class _Recorder:
    def __init__(self):
        self.ops = []

    def merge(self, cplx, label):
        cplx.merge(label)
        self.ops.append(("merge", label))

    def fold(self, cplx, p, i):
        cplx.fold(p, i)
        self.ops.append(("fold", p, i))

    def cut(self, cplx, p, i, j):
        d = cplx.cut(p, i, j)
        self.ops.append(("cut", p, i, j))
        return d

    def replay(self, cplx):
        for op in self.ops:
            if op[0] == "merge":
                cplx.merge(op[1])
            elif op[0] == "fold":
                cplx.fold(op[1], op[2])
            else:
                cplx.cut(op[1], op[2], op[3])


def _merge_fold_loop(cplx, rec):
    changed = True
    while changed:
        changed = False
        # merges
        seen = {}
        for p, word in enumerate(cplx.polys):
            if not word:
                continue
            for l, s in word:
                if l in seen and seen[l] != p:
                    rec.merge(cplx, l)
                    changed = True
                    break
                seen[l] = p
            if changed:
                break
        if changed:
            continue
        # folds
        for p, word in enumerate(cplx.polys):
            n = len(word)
            if n <= 2:
                continue
            for i in range(n):
                (l1, s1) = word[i]
                (l2, s2) = word[(i + 1) % n]
                if l1 == l2 and s1 * s2 == -1:
                    rec.fold(cplx, p, i)
                    changed = True
                    break
            if changed:
                break


def _poly_index(cplx):
    live = [p for p, w in enumerate(cplx.polys) if w]
    if len(live) != 1:
        raise RebuildError("normalization expects a connected complex")
    return live[0]


def _reduce_vertices(cplx, rec, guard=10000):
    """Cut-and-paste until the single polygon has one vertex class."""
    steps = 0
    while True:
        _merge_fold_loop(cplx, rec)
        p = _poly_index(cplx)
        word = cplx.polys[p]
        if len(word) <= 2:
            return
        classes = _vertex_classes(cplx.polys)
        if len(classes) == 1:
            return
        steps += 1
        if steps > guard:
            raise RebuildError("vertex reduction does not terminate")
        # corners of the live polygon in the pruned complex share index 0
        classes.sort(key=len)
        target = None
        n = len(word)
        corner_class = {}
        for ci, cls in enumerate(classes):
            for (pp, i) in cls:
                corner_class[i] = ci
        smallest = 0
        done = False
        for ci, cls in enumerate(classes):
            for (pp, i) in cls:
                w_side = word[(i - 1) % n]
                y_side = word[i]
                if w_side[0] == y_side[0]:
                    continue  # folding pair or same-label corner: skip
                # the triangle [w y] is pasted back along y; y's partner
                # must not be w (checked above), which makes it a merge
                rec.cut(cplx, p, (i - 1) % n, (i + 1) % n)
                rec.merge(cplx, y_side[0])
                done = True
                break
            if done:
                break
        if not done:
            raise RebuildError("no vertex reduction move available")


def _find_interleaved(word, skip):
    """An interleaved pair (x, y) among letters not in ``skip``."""
    n = len(word)
    pos = {}
    for i, (l, s) in enumerate(word):
        pos.setdefault(l, []).append(i)
    for l, ps in pos.items():
        if l in skip or len(ps) != 2:
            continue
        i, k = ps
        for l2, ps2 in pos.items():
            if l2 in skip or l2 == l or len(ps2) != 2:
                continue
            inside = [q for q in ps2 if i < q < k]
            if len(inside) == 1:
                return l, l2
    return None


def _gather_handles(cplx, rec, guard=200):
    """Bring the one-vertex word to consecutive handle blocks.

    Uses a bounded search over corner cuts next to the interleaved pair,
    validated by the block-coverage score.
    """
    steps = 0
    while True:
        _merge_fold_loop(cplx, rec)
        p = _poly_index(cplx)
        word = cplx.polys[p]
        if len(word) <= 2 or _is_standard_shape(word):
            return
        steps += 1
        if steps > guard:
            raise RebuildError("handle gathering does not terminate")
        score0 = _block_score(word)
        found = _search_gather_move(cplx, score0)
        if found is None:
            raise RebuildError("no handle gathering move found")
        for op in found:
            if op[0] == "cut":
                rec.cut(cplx, op[1], op[2], op[3])
            elif op[0] == "fold":
                rec.fold(cplx, op[1], op[2])
            else:
                rec.merge(cplx, op[1])


def _expand_once(state, seen):
    """All states reachable by one cut+paste(+cleanup), with their ops."""
    p = _poly_index(state)
    word = state.polys[p]
    n = len(word)
    out = []
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            trial0 = state.clone(with_words=False)
            rec0 = _Recorder()
            try:
                d = rec0.cut(trial0, p, i, j)
            except RebuildError:
                continue
            p1, p2 = _poly_index_pair(trial0)
            labels1 = {l for l, s in trial0.polys[p1]}
            labels2 = {l for l, s in trial0.polys[p2]}
            for z in sorted((labels1 & labels2) - {d}):
                trial = trial0.clone(with_words=False)
                rec1 = _Recorder()
                rec1.ops = list(rec0.ops)
                try:
                    rec1.merge(trial, z)
                except RebuildError:
                    continue
                _merge_fold_loop(trial, rec1)
                key = _canonical_state(trial.polys)
                if key in seen:
                    continue
                seen.add(key)
                if len(_vertex_classes(trial.polys)) != 1:
                    continue
                out.append((rec1.ops, trial))
    return out


def _search_gather_move(cplx, score0, beam=300):
    """A short cut+paste sequence raising the handle-block score.

    One round almost always suffices; a beam-limited second round covers
    the stragglers.
    """
    seen = {_canonical_state(cplx.polys)}
    level = _expand_once(cplx, seen)
    for ops, trial in level:
        pw = trial.polys[_poly_index(trial)]
        if _block_score(pw) > score0 or len(pw) <= 2:
            return ops
    ranked = sorted(
        level,
        key=lambda item: (-_block_score(item[1].polys[_poly_index(item[1])]),
                          len(item[1].polys[_poly_index(item[1])])))
    for ops, state in ranked[:beam]:
        for ops2, trial in _expand_once(state, seen):
            pw = trial.polys[_poly_index(trial)]
            if _block_score(pw) > score0 or len(pw) <= 2:
                return ops + ops2
    return None


def _poly_index_pair(cplx):
    live = [p for p, w in enumerate(cplx.polys) if w]
    if len(live) != 2:
        raise RebuildError("expected exactly two pieces")
    return live


def flip_edge(cplx, label):
    """Reverse the intrinsic direction of an edge label everywhere."""
    for p, word in enumerate(cplx.polys):
        cplx.polys[p] = [(l, -s) if l == label else (l, s) for l, s in word]
    for oid, obj in cplx.words.items():
        fixed = [Crossing(c.label, -c.direction, 1 - c.t)
                 if c.label == label else c for c in obj.crossings]
        if isinstance(obj, Curve):
            cplx.words[oid] = Curve(fixed)
        else:
            s, e = obj.start, obj.end
            if s.label == label:
                s = type(s)(label, 1 - s.t)
            if e.label == label:
                e = type(e)(label, 1 - e.t)
            cplx.words[oid] = Arc(s, fixed, e)


def rename_edge(cplx, old, new):
    for p, word in enumerate(cplx.polys):
        cplx.polys[p] = [(new, s) if l == old else (l, s) for l, s in word]
    for oid, obj in cplx.words.items():
        fixed = [Crossing(new, c.direction, c.t) if c.label == old else c
                 for c in obj.crossings]
        if isinstance(obj, Curve):
            cplx.words[oid] = Curve(fixed)
        else:
            s, e = obj.start, obj.end
            if s.label == old:
                s = type(s)(new, s.t)
            if e.label == old:
                e = type(e)(new, e.t)
            cplx.words[oid] = Arc(s, fixed, e)


def _relabel_standard(cplx):
    """Rotate/flip/rename the gathered word into the canonical scheme."""
    p = _poly_index(cplx)
    word = cplx.polys[p]
    n = len(word)
    if n == 2:
        label = word[0][0]
        if word[0][1] == -1:
            flip_edge(cplx, label)
        rename_edge(cplx, label, "s0")
        cplx.polys[p] = [("s0", 1), ("s0", -1)]
        return Surface(0, 0)
    # find the rotation where blocks tile the whole word
    for rot in range(n):
        w = word[rot:] + word[:rot]
        ok = True
        i = 0
        while i + 4 <= n:
            (l1, s1), (l2, s2), (l3, s3), (l4, s4) = w[i:i + 4]
            if not (l1 == l3 and l2 == l4 and s1 == -s3 and s2 == -s4
                    and l1 != l2):
                ok = False
                break
            i += 4
        if ok and i == n:
            cplx.polys[p] = w
            break
    else:
        raise RebuildError("word is not in block form")
    word = cplx.polys[p]
    genus = n // 4
    # flip letters so each block reads (u,+)(v,+)(u,-)(v,-)
    for b in range(genus):
        (l1, s1) = word[4 * b]
        (l2, s2) = word[4 * b + 1]
        if s1 == -1:
            flip_edge(cplx, l1)
        if s2 == -1:
            flip_edge(cplx, l2)
        word = cplx.polys[p]
    # rename in block order (two passes to avoid collisions)
    word = list(cplx.polys[p])
    for b in range(genus):
        rename_edge(cplx, word[4 * b][0], "tmp.a%d" % (b + 1))
        rename_edge(cplx, word[4 * b + 1][0], "tmp.b%d" % (b + 1))
    for b in range(genus):
        a, bb = handle_labels(b + 1)
        rename_edge(cplx, "tmp.a%d" % (b + 1), a)
        rename_edge(cplx, "tmp.b%d" % (b + 1), bb)
    assert cplx.polys[p] == standard_word(genus, 0), cplx.polys[p]
    return Surface(genus, 0)


def standardize(polys, words):
    """Normalize a closed connected complex to the standard scheme.

    Returns (surface, words) with the tracked words rewritten onto the
    canonical polygon and positions renormalized.
    """
    base = Complex(polys, words)
    # search moves on a bare clone, then replay with tracking
    probe = base.clone(with_words=False)
    rec = _Recorder()
    _merge_fold_loop(probe, rec)
    _reduce_vertices(probe, rec)
    _gather_handles(probe, rec)
    rec.replay(base)
    _merge_fold_loop(base, _Recorder())  # no-op guard; state already folded
    surface = _relabel_standard(base)
    out = renormalize(base.words)
    if out:
        validate_embedded(surface.complex, list(out.values()))
    return surface, out
