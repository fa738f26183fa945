"""Bigon reduction: isotope curves into pairwise minimal position.

A bigon is a disk region of the complement of a drawn system bounded by
exactly one arc of each of two objects, meeting at two crossings.  Two
embedded curves are in minimal position exactly when they bound no bigon,
so repeatedly re-routing one side of a bigon across the other computes
geometric intersection numbers.

Reductions rewrite crossing words in place (functionally); re-routed
strands hug the followed arc with nothing in between, so a reduction never
creates new crossings between the reduced pair.
"""

from __future__ import annotations

from fractions import Fraction

from .arrangement import regions
from .curves import Arc, Crossing, Curve, CurveError, validate_embedded
from .positions import PositionPool


class ReductionError(RuntimeError):
    pass


def _word_len(obj):
    return len(getattr(obj, "crossings", ()))


class _Walker:
    """Index arithmetic along a Curve (cyclic) or Arc (linear) word."""

    def __init__(self, obj):
        self.obj = obj
        self.cyclic = isinstance(obj, Curve)
        self.n_chords = len(obj.crossings) if self.cyclic else len(obj.crossings) + 1

    def next_chord(self, c, direction):
        c2 = c + direction
        if self.cyclic:
            return c2 % self.n_chords
        if 0 <= c2 < self.n_chords:
            return c2
        raise ReductionError("walked off the end of an arc")

    def crossing_between(self, c, direction):
        """Word index of the crossing between chord c and the next chord."""
        if direction == 1:
            k = (c + 1) % self.n_chords if self.cyclic else c
        else:
            k = c % self.n_chords if self.cyclic else c - 1
        if not self.cyclic and not (0 <= k < len(self.obj.crossings)):
            raise ReductionError("walked off the end of an arc")
        return k


def _find_bigon(regs, allowed_pairs=None):
    """First region that is a bigon between two wall objects.

    Returns (region, owner_a, owner_b, run_a, run_b) or None; runs are the
    piece-index lists along the single boundary circle.
    """
    for reg in regs:
        if not reg.is_disk():
            continue
        runs = reg.circle_owner_runs(0)
        if len(runs) != 2:
            continue
        (oa, ra), (ob, rb) = runs
        if isinstance(oa, tuple) or isinstance(ob, tuple):
            continue  # an original-boundary run: not a bigon
        if oa == ob:
            continue
        if allowed_pairs is not None and frozenset((oa, ob)) not in allowed_pairs:
            continue
        return reg, oa, ob, ra, rb
    return None


def _piece_nodes(arr, owner, chord_idx, piece_idx):
    cd = arr.chords[(owner, chord_idx)]
    nodes = arr._chord_nodes(cd)
    return nodes[piece_idx], nodes[piece_idx + 1]


def _run_pieces(region, circle_idx, indices):
    circle = region.circles[circle_idx]
    out = []
    for i in indices:
        kind, data, sign = circle[i]
        assert kind == "wall"
        oid, (chord_idx, piece_idx), side = data
        out.append((oid, chord_idx, piece_idx))
    return out


def _corner_between(arr, piece_a, piece_b):
    """The shared crossing node of two adjacent boundary pieces."""
    na = set(_piece_nodes(arr, *piece_a))
    nb = set(_piece_nodes(arr, *piece_b))
    common = [n for n in na & nb if n[0] == "X"]
    if len(common) != 1:
        raise ReductionError("could not identify bigon corner")
    return common[0]


def _piece_count(arr, oid, chord_idx):
    cd = arr.chords[(oid, chord_idx)]
    return len(cd.events) + 1


def _arc_walk(obj, arr, oid, corner_a, corner_b, pieces):
    """Walk ``obj`` from corner_a to corner_b through exactly the run pieces.

    Returns (start_chord, direction, [word indices strictly inside]); the
    walk is piece-by-piece, consuming a word crossing whenever it steps
    from one chord to the next.
    """
    walker = _Walker(obj)
    piece_set = {(c, p) for o, c, p in pieces}
    start = next(((c, p) for o, c, p in pieces
                  if corner_a in _piece_nodes(arr, oid, c, p)), None)
    if start is None:
        raise ReductionError("bigon corner not on the run")
    ca, pa = start
    n0, n1 = _piece_nodes(arr, oid, ca, pa)
    direction = 1 if corner_a == n0 else -1
    inside = []
    c, p = ca, pa
    visited = 0
    while True:
        visited += 1
        if visited > len(piece_set) + 1:
            raise ReductionError("bigon arc walk left the run")
        if (c, p) not in piece_set:
            raise ReductionError("bigon arc walk left the run")
        far = _piece_nodes(arr, oid, c, p)[1 if direction == 1 else 0]
        if far == corner_b:
            break
        if direction == 1:
            if p + 1 < _piece_count(arr, oid, c):
                p += 1
            else:
                inside.append(walker.crossing_between(c, 1))
                c = walker.next_chord(c, 1)
                p = 0
        else:
            if p - 1 >= 0:
                p -= 1
            else:
                inside.append(walker.crossing_between(c, -1))
                c = walker.next_chord(c, -1)
                p = _piece_count(arr, oid, c) - 1
    return ca, direction, inside


def _away_side(ex, region, label, t):
    """Which side of position t on edge ``label`` faces away from the region.

    Returns +1 when the region lies below t (so away is above), else -1.
    """
    comp_polys = set(region.polys)
    used = set()
    for p in comp_polys:
        for l, s in ex.complex.polys[p]:
            used.add(l)
    below = above = None
    for l, kind in ex.seg_kind.items():
        if kind[0] != "edge" or kind[1] != label:
            continue
        _, _, lo, hi = kind
        if hi == t:
            below = l
        if lo == t:
            above = l
    if below is None or above is None:
        raise ReductionError("anchor position is not a cut point")
    below_in = below in used
    above_in = above in used
    if below_in == above_in:
        raise ReductionError("cannot orient hug side at %s@%s" % (label, t))
    return 1 if below_in else -1


def reduce_bigon(cx, objects, pool, regs, ex, bigon):
    """Re-route one side of a bigon; returns the updated objects dict."""
    region, oa, ob, ra, rb = bigon
    arr = ex.arrangement
    # rewrite the object with the shorter word along the other
    la, lb = _word_len(objects[oa]), _word_len(objects[ob])
    if (lb, ob) < (la, oa):
        oa, ob = ob, oa
        ra, rb = rb, ra
    mover, anchor = objects[oa], objects[ob]

    pieces_a = _run_pieces(region, 0, ra)
    pieces_b = _run_pieces(region, 0, rb)
    corner_1 = _corner_between(arr, pieces_b[-1], pieces_a[0])
    corner_2 = _corner_between(arr, pieces_a[-1], pieces_b[0])

    ca, dir_a, inside_a = _arc_walk(mover, arr, oa, corner_1, corner_2, pieces_a)
    cb, dir_b, inside_b = _arc_walk(anchor, arr, ob, corner_1, corner_2, pieces_b)

    # hug events: anchor word crossings from corner_1 to corner_2
    hug = []
    for k in inside_b:
        c = anchor.crossings[k]
        side = _away_side(ex, region, c.label, c.t)
        t_new = pool.fresh_adjacent(c.label, c.t, side)
        d = c.direction if dir_b == 1 else -c.direction
        hug.append(Crossing(c.label, d, t_new))

    # remove the inside_a crossings from the mover and splice the hug in
    word = list(mover.crossings)
    remove = set(inside_a)
    if dir_a == -1:
        hug = hug  # walk order already from corner_1 to corner_2
    # insertion point: the mover is traversed in word order; the replaced
    # block sits where the removed crossings were.  When nothing is removed
    # the bigon lay on a single chord of the mover and the hug is inserted
    # at that chord.
    n = len(word)

    def rebuild_closed():
        if remove:
            block = _cyclic_block(sorted(remove), n)
            start = block[0]
            kept_tail = [word[(start + len(block) + i) % n]
                         for i in range(n - len(block))]
            ins = hug
            if dir_a == -1:
                ins = [Crossing(c.label, -c.direction, c.t) for c in reversed(hug)]
            return Curve(ins + kept_tail)
        # same-chord bigon: insert at chord ca, i.e. after word index ca
        ins = hug
        if dir_a == -1:
            ins = [Crossing(c.label, -c.direction, c.t) for c in reversed(hug)]
        cut = (ca + 1) % n if n else 0
        return Curve(word[:cut] + ins + word[cut:])

    def rebuild_arc():
        ins = hug
        if dir_a == -1:
            ins = [Crossing(c.label, -c.direction, c.t) for c in reversed(hug)]
        if remove:
            order = sorted(remove)
            lo, hi = order[0], order[-1]
            if order != list(range(lo, hi + 1)):
                raise ReductionError("non-contiguous bigon block on an arc")
            return Arc(mover.start, word[:lo] + ins + word[hi + 1:], mover.end)
        return Arc(mover.start, word[:ca] + ins + word[ca:], mover.end)

    for k in inside_a:
        c = word[k]
        pool.remove(c.label, c.t)
    new_mover = rebuild_closed() if isinstance(mover, Curve) else rebuild_arc()
    out = dict(objects)
    out[oa] = new_mover
    return out


def _cyclic_block(indices, n):
    """Order a set of indices into one contiguous cyclic block."""
    s = set(indices)
    if len(s) == n:
        return sorted(s)
    start = None
    for i in sorted(s):
        if (i - 1) % n not in s:
            start = i
            break
    if start is None:
        raise ReductionError("removed indices are not a cyclic block")
    block = []
    i = start
    while i in s:
        block.append(i)
        i = (i + 1) % n
        if len(block) > n:
            raise ReductionError("bad cyclic block")
    if len(block) != len(s):
        raise ReductionError("removed indices are not contiguous")
    return block


def reduce_pair(cx, objects, ida, idb, budget=10000, extra_events=()):
    """Minimal position for the pair (ida, idb); other objects untouched.

    Returns (objects, crossings) where crossings is the final (minimal)
    crossing count between the two objects.  ``extra_events`` lists other
    drawn objects whose positions freshly placed strands must avoid.
    """
    objects = dict(objects)
    pool = PositionPool(list(objects.values()) + list(extra_events))
    steps = 0
    while True:
        walls = {ida: objects[ida], idb: objects[idb]}
        regs, ex = regions(cx, walls, [ida, idb])
        found = _find_bigon(regs, allowed_pairs={frozenset((ida, idb))})
        if found is None:
            count = ex.arrangement.crossing_count(ida, idb)
            return objects, count
        steps += 1
        if steps > budget:
            raise ReductionError("bigon reduction budget exceeded")
        objects = reduce_bigon(cx, objects, pool, regs, ex, found)
        validate_embedded(cx, list(objects.values()))


def reduce_system(cx, objects, budget=20000):
    """Remove all face-level bigons of the full system, then stray pair
    bigons, until every pair is bigon-free.

    A pair whose drawn crossing count equals the absolute algebraic count
    is already minimal and is never re-examined.
    """
    objects = dict(objects)
    ids = sorted(objects, key=repr)
    steps = 0
    while True:
        pool = PositionPool(objects.values())
        regs, ex = regions(cx, objects, ids)
        found = _find_bigon(regs)
        if found is not None:
            steps += 1
            if steps > budget:
                raise ReductionError("system reduction budget exceeded")
            objects = reduce_bigon(cx, objects, pool, regs, ex, found)
            validate_embedded(cx, list(objects.values()))
            continue
        # face-level clean; look for pair-level bigons hidden by transit.
        # candidates: pairs whose drawn count exceeds |algebraic|
        arr = ex.arrangement
        drawn = {}
        for node, (a, b) in arr.crossing_nodes.items():
            key = frozenset((a.owner[0], b.owner[0]))
            drawn[key] = drawn.get(key, 0) + 1
        alg = {}
        for node, (a, b) in arr.crossing_nodes.items():
            key = frozenset((a.owner[0], b.owner[0]))
            d1, d2 = a.direction, b.direction
            cr = d1[0] * d2[1] - d1[1] * d2[0]
            alg[key] = alg.get(key, 0) + (1 if cr > 0 else -1)
        progressed = False
        for key in sorted(drawn, key=repr):
            if drawn[key] == abs(alg.get(key, 0)):
                continue
            ida, idb = sorted(key, key=repr)
            walls = {ida: objects[ida], idb: objects[idb]}
            regs2, ex2 = regions(cx, walls, [ida, idb])
            f2 = _find_bigon(regs2, allowed_pairs={key})
            if f2 is not None:
                pool = PositionPool(objects.values())
                objects = reduce_bigon(cx, objects, pool, regs2, ex2, f2)
                validate_embedded(cx, list(objects.values()))
                steps += 1
                if steps > budget:
                    raise ReductionError("system reduction budget exceeded")
                progressed = True
                break
        if not progressed:
            return objects
