"""Canonical crossing words for hashing diagrams.

A curve's hash key must agree for isotopic curves however they were drawn.
The key is computed by reducing the positioned word until no local
simplification applies, then minimizing lexicographically:

* backtracks: the curve crosses an edge and immediately returns over it
  with nothing trapped in between (a bigon with the skeleton);
* vertex runs: the curve hugs a vertex, cutting more than half of its
  corner sectors; the complementary path around the vertex is shorter.

Trivial curves reduce to the empty key.  Keys drop positions entirely:
only the cyclic (label, direction) sequence matters, up to rotation and
reversal.
"""

from __future__ import annotations

from fractions import Fraction

from .curves import Arc, Crossing, Curve, in_side, out_side
from .polygon import PolygonComplex, side_position
from .positions import PositionPool


def _own_positions(curve):
    pos = {}
    for c in curve.crossings:
        pos.setdefault(c.label, []).append(c.t)
    for l in pos:
        pos[l].sort()
    return pos


def _innermost_backtrack(cx, curve):
    """Index k such that crossings k, k+1 cancel across one edge."""
    n = len(curve.crossings)
    pos = _own_positions(curve)
    for k in range(n):
        c1 = curve.crossings[k]
        c2 = curve.crossings[(k + 1) % n]
        if c1.label != c2.label or c1.direction != -c2.direction:
            continue
        # the chord between them lies on the far side of the edge; nothing
        # of this curve may sit between the two positions
        lo, hi = sorted((c1.t, c2.t))
        if any(lo < t < hi for t in pos[c1.label]):
            continue
        return k
    return None


def _remove_backtrack(curve, k):
    n = len(curve.crossings)
    keep = [curve.crossings[i] for i in range(n) if i not in (k, (k + 1) % n)]
    return Curve(keep)


class _Fan:
    """Rotation structure of an interior vertex class."""

    def __init__(self, cx, corners):
        self.corners = corners  # rotation order
        self.index = {c: q for q, c in enumerate(corners)}
        self.cx = cx
        # edge crossed moving from sector q to sector q+1: side at corner q
        self.sides = []
        for (p, i) in corners:
            label, sign = cx.polys[p][i]
            self.sides.append((p, i, label, sign))

    def __len__(self):
        return len(self.corners)


def _interior_fans(cx):
    fans = []
    for cls in cx.vertex_classes():
        orbit = cx.vertex_rotation(cls[0])
        if orbit is None:
            continue
        fans.append(_Fan(cx, orbit))
    return fans


def _chord_cut_corner(cx, curve, k, own_pos):
    """Corner cut by the chord after crossing k, or None.

    The chord runs from the entry of crossing k to the exit of crossing
    k+1; it cuts corner (p, i) when its ends sit innermost on the two
    sides flanking that corner.
    """
    n = len(curve.crossings)
    c1 = curve.crossings[k]
    c2 = curve.crossings[(k + 1) % n]
    s1 = in_side(cx, c1)
    s2 = out_side(cx, c2)
    if s1.poly != s2.poly:
        return None
    m = len(cx.polys[s1.poly])
    for (sa, ta, sb, tb) in ((s1, c1.t, s2, c2.t), (s2, c2.t, s1, c1.t)):
        # corner between side sa and following side sb = sa.index + 1
        if (sa.index + 1) % m != sb.index:
            continue
        corner = (sa.poly, sb.index)
        # innermost near the corner: no own event closer to the shared
        # corner than either chord end
        ok_a = _innermost_toward(cx, curve, sa, ta, 1)
        ok_b = _innermost_toward(cx, curve, sb, tb, -1)
        if ok_a and ok_b:
            return corner
    return None


def _innermost_toward(cx, curve, side, t, direction):
    """No own event between position t and the corner end of this side.

    ``direction`` +1 means toward the far corner (boundary coordinate up),
    -1 toward the side's starting corner.
    """
    label = cx.polys[side.poly][side.index][0]
    u = side_position(side.sign, t)
    for c in curve.crossings:
        if c.label != label or c.t == t:
            continue
        v = side_position(side.sign, c.t)
        if direction == 1 and v > u:
            return False
        if direction == -1 and v < u:
            return False
    return True


def _find_long_run(cx, curve, fans):
    """A vertex run covering more than half a fan.

    Returns (k0, m, fan, eps): chords k0 .. k0+m-1 cut m fan-consecutive
    corners (direction eps), consuming crossings k0 .. k0+m; rerouting the
    complementary way around the vertex shortens the word.
    """
    n = len(curve.crossings)
    if n == 0:
        return None
    own_pos = _own_positions(curve)
    fan_of = {}
    for f in fans:
        for c in f.corners:
            fan_of[c] = f
    cuts = {}
    for k in range(n):
        corner = _chord_cut_corner(cx, curve, k, own_pos)
        if corner is not None and corner in fan_of:
            cuts[k] = corner
    for k0 in sorted(cuts):
        f = fan_of[cuts[k0]]
        M = len(f)
        q0 = f.index[cuts[k0]]
        for eps in (1, -1):
            m = 1
            while m < n:
                kn = (k0 + m) % n
                if kn not in cuts or fan_of.get(cuts[kn]) is not f:
                    break
                if f.index[cuts[kn]] != (q0 + eps * m) % M:
                    break
                m += 1
            if n == m:
                # every chord hugs the vertex: a full vertex link
                return k0, m, f, eps
            if 2 * (m + 1) > M:
                return k0, m, f, eps
    return None


def _rewrite_run(cx, curve, k0, m, fan, eps):
    """Replace a vertex run with the complementary corner path."""
    n = len(curve.crossings)
    M = len(fan)
    own_pos = _own_positions(curve)
    first_corner = _chord_cut_corner(cx, curve, k0, own_pos)
    qstart = fan.index[first_corner]

    if n == m:
        return Curve([])  # closed vertex link: trivial

    if eps == 1:
        a = (qstart - 1) % M          # entry sector
        comp = [((a - 1) - j) % M for j in range(M - m - 1)]
        fan_forward = False
    else:
        a = (qstart + 1) % M
        comp = [(a + j) % M for j in range(M - m - 1)]
        fan_forward = True

    pool = PositionPool([curve])
    new = []
    for q in comp:
        p, i, label, sign = fan.sides[q]
        corner_end = 0 if sign == 1 else 1
        t = _near_corner_position(pool, label, corner_end)
        direction = sign if fan_forward else -sign
        new.append(Crossing(label, direction, t))

    word = list(curve.crossings)
    kept = [word[(k0 + m + 1 + j) % n] for j in range(n - m - 1)]
    return Curve(new + kept)


def _near_corner_position(pool, label, corner_end):
    ts = sorted(pool.events.get(label, ()))
    if corner_end == 0:
        hi = ts[0] if ts else Fraction(1)
        t = hi / 2
    else:
        lo = ts[-1] if ts else Fraction(0)
        t = (lo + 1) / 2
    pool.add(label, t)
    return t


def reduce_word(cx, curve, budget=2000):
    """R1/R2 reduction to a locally minimal positioned word."""
    from .curves import validate_embedded
    steps = 0
    fans = _interior_fans(cx)
    while True:
        steps += 1
        if steps > budget:
            raise RuntimeError("canonical reduction budget exceeded")
        k = _innermost_backtrack(cx, curve)
        if k is not None:
            curve = _remove_backtrack(curve, k)
            continue
        run = _find_long_run(cx, curve, fans)
        if run is not None:
            k0, m, fan, eps = run
            curve = _rewrite_run(cx, curve, k0, m, fan, eps)
            if curve.crossings:
                validate_embedded(cx, [curve])
            continue
        return curve


def canonical_key(cx, curve):
    """Canonical cyclic (label, direction) key, orientation-free.

    Trivial curves get the empty key; triviality is decided rigorously by
    cutting, not by the local reduction.
    """
    if hasattr(cx, "complex"):
        cx = cx.complex
    if not curve.crossings:
        return ()
    reduced = reduce_word(cx, curve)
    seq = [(c.label, c.direction) for c in reduced.crossings]
    if not seq:
        return ()
    from . import kernel
    if kernel.is_trivial(cx, reduced):
        return ()
    best = None
    for variant in (seq, [(l, -d) for (l, d) in reversed(seq)]):
        n = len(variant)
        for r in range(n):
            cand = tuple(variant[r:] + variant[:r])
            if best is None or cand < best:
                best = cand
    return best
