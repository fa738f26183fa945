"""Core operations on embedded curves: intersections, twists, slides,
surgery, homology, isotopy tests.

All operations are pure: inputs are never mutated, and outputs are freshly
positioned.  Positions are exact rationals; whenever strands are inserted
parallel to an existing curve they are placed in the empty gap immediately
next to it, which keeps reductions terminating and embeddings valid.
"""

from __future__ import annotations

from fractions import Fraction

from .arrangement import Arrangement, explode, regions, _seg_params, _pt
from .curves import (Arc, Chord, Crossing, Curve, CurveError, EndPoint,
                     chords_of, chords_interleave, in_side, out_side,
                     validate_embedded)
from .errors import (DomainMismatchError, IllegalPathError, IllegalSlideError)
from .polygon import Surface, handle_labels, side_position
from .positions import PositionPool, renormalize
from .reduction import reduce_pair, reduce_system

F = Fraction


def _require_same_surface(a: Surface, b: Surface):
    if a != b:
        raise DomainMismatchError("curves live on different surfaces")


def _complex(surface):
    return surface.complex if isinstance(surface, Surface) else surface


# ----------------------------------------------------------------------
# disjoint repositioning

def shifted_copy(curve, pool, side=1):
    """A copy of ``curve`` with every position moved to a fresh adjacent slot.

    The copy is isotopic (a small normal perturbation) and clash-free with
    everything registered in ``pool``; ``side`` picks the parameter side.
    """
    new = []
    for c in curve.crossings:
        t = pool.fresh_adjacent(c.label, c.t, side)
        new.append(Crossing(c.label, c.direction, t))
    if isinstance(curve, Arc):
        s = EndPoint(curve.start.label,
                     pool.fresh_adjacent(curve.start.label, curve.start.t, side))
        e = EndPoint(curve.end.label,
                     pool.fresh_adjacent(curve.end.label, curve.end.t, side))
        return Arc(s, new, e)
    return Curve(new)


def separate_positions(objs, context=()):
    """Shift clashing objects apart; returns the list with clashes resolved."""
    pool = PositionPool(list(context))
    out = []
    for obj in objs:
        events = [(c.label, c.t) for c in getattr(obj, "crossings", ())]
        if isinstance(obj, Arc):
            events += [(obj.start.label, obj.start.t), (obj.end.label, obj.end.t)]
        if any(t in pool.events.get(l, ()) for l, t in events):
            obj = shifted_copy(obj, pool)
        else:
            pool.add_object(obj)
        out.append(obj)
    return out


# ----------------------------------------------------------------------
# intersection numbers

def geometric_intersection(surface, x, y):
    """Minimal crossing count between two embedded closed curves or arcs."""
    cx = _complex(surface)
    if getattr(x, "crossings", None) == getattr(y, "crossings", None):
        return 0
    objs = {0: x, 1: y}
    try:
        validate_embedded(cx, [x, y])
    except CurveError:
        # shared positions: perturb the second curve off the first
        pool = PositionPool([x])
        objs = {0: x, 1: shifted_copy(y, pool)}
        validate_embedded(cx, list(objs.values()))
    reduced, count = reduce_pair(cx, objs, 0, 1)
    return count


def algebraic_intersection(surface, x, y):
    """Signed crossing sum; antisymmetric, isotopy invariant."""
    cx = _complex(surface)
    if x.is_trivial_word() or y.is_trivial_word():
        return 0
    objs = {0: x, 1: y}
    try:
        validate_embedded(cx, [x, y])
    except CurveError:
        pool = PositionPool([x])
        objs = {0: x, 1: shifted_copy(y, pool)}
    arr = Arrangement(cx, objs)
    total = 0
    for node, (a, b) in arr.crossing_nodes.items():
        if a.owner[0] == 1:
            a, b = b, a
        d1, d2 = a.direction, b.direction
        cr = d1[0] * d2[1] - d1[1] * d2[0]
        total += 1 if cr > 0 else -1
    return total


def homology_class(surface, x):
    """Coordinates of [x] in the basis (m_1, l_1, ..., m_g, l_g).

    Entry 2i-2 counts signed crossings of edge a_i, entry 2i-1 of b_i.
    """
    if isinstance(surface, Surface) and not surface.is_closed():
        raise DomainMismatchError("homology_class needs a closed surface")
    g = surface.genus
    vec = []
    for i in range(1, g + 1):
        a, b = handle_labels(i)
        vec.append(x.signed_label_count(a))
        vec.append(x.signed_label_count(b))
    return vec


# ----------------------------------------------------------------------
# canonical minimal position of a system

def canonicalize(surface, curves):
    """Pairwise minimal position for a list of curves/arcs.

    Returns new objects in the same order: no bigons remain between any
    two, and positions are renormalized to small denominators.  Idempotent.
    """
    cx = _complex(surface)
    sep = separate_positions(list(curves))
    objs = {i: c for i, c in enumerate(sep)}
    validate_embedded(cx, list(objs.values()))
    objs = reduce_system(cx, objs)
    objs = renormalize(objs)
    return [objs[i] for i in range(len(curves))]


# ----------------------------------------------------------------------
# triviality and isotopy

def is_trivial(surface, x):
    """Whether the closed curve bounds a disk."""
    cx = _complex(surface)
    if x.is_trivial_word():
        return True
    ex = explode(cx, {0: x}, [0])
    for genus, n_orig, n_wall in ex.component_summary():
        if genus == 0 and n_orig == 0 and n_wall == 1:
            return True
    return False


def _circle_owner(sub, ex, circle):
    owners = set()
    for s in circle:
        label = sub.polys[s.poly][s.index][0]
        kind = ex.seg_kind.get(label)
        if kind is None or kind[0] == "edge":
            owners.add(("orig",))
        else:
            owners.add((kind[1], kind[3]))
    return owners


def is_isotopic(surface, x, y):
    """Unoriented isotopy test for embedded closed curves.

    Criterion: zero geometric intersection and an annulus component between
    the two after cutting along both; trivial curves are handled apart.
    """
    cx = _complex(surface)
    tx, ty = is_trivial(cx, x), is_trivial(cx, y)
    if tx or ty:
        return tx and ty
    objs = {0: x, 1: y}
    try:
        validate_embedded(cx, [x, y])
    except CurveError:
        pool = PositionPool([x])
        objs = {0: x, 1: shifted_copy(y, pool)}
    objs, count = reduce_pair(cx, objs, 0, 1)
    if count != 0:
        return False
    ex = explode(cx, objs, [0, 1])
    ecx = ex.complex
    for comp in ecx.components():
        sub = ecx.restrict(comp)
        circles = sub.boundary_circles()
        if len(circles) != 2:
            continue
        chi = sub.euler_characteristic()
        if chi != 0:
            continue
        owners = [list(_circle_owner(sub, ex, c)) for c in circles]
        if any(len(o) != 1 or o[0] == ("orig",) for o in owners):
            continue
        o1, o2 = owners[0][0], owners[1][0]
        if o1[0] != o2[0]:
            return True
    return False


# ----------------------------------------------------------------------
# Dehn twists

def _left_tside(cx, arriving_direction, crossing):
    """t-direction (+1/-1) of the left side of a strand at its crossing.

    ``arriving_direction`` is the 2-vector of the chord that ends at the
    crossing, in the polygon of the crossing's out instance.
    """
    s_out = out_side(cx, crossing)
    d = arriving_direction
    # tangent of increasing boundary coordinate at the endpoint
    tang = (1, 2 * _theta_of(s_out, crossing.t))
    crossp = d[0] * tang[1] - d[1] * tang[0]
    theta_side = 1 if crossp > 0 else -1
    return theta_side if s_out.sign == 1 else -theta_side


def _theta_of(side, t):
    return side.index + side_position(side.sign, t)


def curve_left_tsides(cx, curve, oid=0):
    """Left-side t-direction at every word crossing of a closed curve."""
    chords = chords_of(cx, curve, oid)
    n = len(curve.crossings)
    out = {}
    for k in range(n):
        cd = chords[(k - 1) % n]
        d = (_pt(cd.theta1)[0] - _pt(cd.theta0)[0],
             _pt(cd.theta1)[1] - _pt(cd.theta0)[1])
        out[k] = _left_tside(cx, d, curve.crossings[k])
    return out


def dehn_twist(surface, target, along, power, context=()):
    """Image of ``target`` under the ``power``-th right-handed twist along
    ``along``.

    The surface carries the counterclockwise orientation of its polygon;
    a right-handed twist drags strands to the right as seen from the
    crossing strand, independently of the orientation of ``along``.
    """
    cx = _complex(surface)
    if power == 0 or along.is_trivial_word() or target.is_trivial_word():
        return target
    target, along = separate_positions([target, along], context)
    validate_embedded(cx, [target, along])
    # twisting is isotopy invariant: put the pair in minimal position so
    # every remaining crossing is essential
    reduced, _count = reduce_pair(cx, {0: target, 1: along}, 0, 1,
                                  extra_events=context)
    target, along = reduced[0], reduced[1]
    objs = {0: target, 1: along}
    pool = PositionPool([target, along] + list(context))

    arr = Arrangement(cx, objs)
    target_chords = {k: cd for (oid, k), cd in arr.chords.items() if oid == 0}
    n_along = len(along.crossings)
    left_tside = curve_left_tsides(cx, along, 1)

    # phase 1: one spiral per intersection point, with the anchor sequence
    # it passes; strands descend toward `along` as they travel, so depth at
    # an anchor is the distance traveled when passing it
    along_events = {owner[1]: {node: s for s, node in cd.events}
                    for owner, cd in arr.chords.items() if owner[0] == 1}

    spirals = []  # (target chord, order on chord, forward, sigma, anchors, frac)
    for k in range(len(target.crossings)):
        cd = target_chords[k]
        for s_param, node in cd.events:
            (a, b) = arr.crossing_nodes[node]
            other = b if a.owner[0] == 0 else a
            mine = a if a.owner[0] == 0 else b
            dt, da = mine.direction, other.direction
            crossp = dt[0] * da[1] - dt[1] * da[0]
            sigma = 1 if crossp > 0 else -1
            # right-handed convention: [t_c(a)] = [a] + <a,c>[c]
            forward = (sigma * (1 if power > 0 else -1)) > 0
            ci = other.owner[1]
            u = along_events[ci][node]  # position of X along the along-chord
            frac = (1 - u) if forward else u
            anchors = []
            for _copy in range(abs(power)):
                if forward:
                    anchors += [(ci + 1 + j) % n_along for j in range(n_along)]
                else:
                    anchors += [(ci - j) % n_along for j in range(n_along)]
            spirals.append((k, s_param, forward, sigma, anchors, frac))

    # phase 2: positions via a radial model of the twist annulus: each
    # spiral descends linearly from its approach side across the core to
    # the far side, so strands of any sign mixture stay parallel.  The
    # exact radial coordinate at travel tau is sigma*(T - 2*tau)/T, with
    # tau carrying the fractional phase of the starting point.
    slots = {}  # (spiral index, step) -> Fraction
    by_anchor = {}
    for si, (k, s_param, forward, sigma, anchors, frac) in enumerate(spirals):
        T = len(anchors)
        for step, j in enumerate(anchors):
            rho = Fraction(sigma) * (T - 2 * (step + frac)) / T
            side_sign = 1 if rho > 0 else -1
            if rho == 0:
                side_sign = -sigma
            depth = abs(rho)
            side = left_tside[j] * side_sign
            by_anchor.setdefault((j, side), []).append((depth, si, step))
    for (j, side), items in sorted(by_anchor.items()):
        ac = along.crossings[j]
        # shallowest first: fresh_adjacent nests successive calls inward
        for depth, si, step in sorted(items, reverse=True):
            slots[(si, step)] = pool.fresh_adjacent(ac.label, ac.t, side)

    new_word = []
    for k, c in enumerate(target.crossings):
        new_word.append(c)
        on_chord = sorted((spirals[si][1], si) for si in range(len(spirals))
                          if spirals[si][0] == k)
        for _param, si in on_chord:
            _k, _p, forward, sigma, anchors, _frac = spirals[si]
            for step, j in enumerate(anchors):
                ac = along.crossings[j]
                d = ac.direction if forward else -ac.direction
                new_word.append(Crossing(ac.label, d, slots[(si, step)]))
    result = Curve(new_word)
    validate_embedded(cx, [result])
    return result


# ----------------------------------------------------------------------
# band slides

class SlidePath:
    """A guiding path for a band slide.

    ``mover_chord``/``over_chord`` pick the chords carrying the endpoints;
    ``crossings`` is the (possibly empty) crossing word of the path from
    mover to over.  ``auto`` paths are produced by :func:`auto_path`.
    """

    def __init__(self, mover_chord, crossings, over_chord):
        self.mover_chord = mover_chord
        self.crossings = tuple(crossings)
        self.over_chord = over_chord

    def __repr__(self):
        return "SlidePath(m:%d %s o:%d)" % (
            self.mover_chord, " ".join(map(repr, self.crossings)), self.over_chord)


def auto_paths(surface, mover, over):
    """Deterministic guiding-path candidates from mover to over.

    Walks the face-adjacency graph of the complement of mover and over for
    every pair of sides, shortest connectors first.
    """
    cx = _complex(surface)
    objs = {0: mover, 1: over}
    ex = explode(cx, objs, [0, 1])
    ecx = ex.complex
    if ex.arrangement.crossing_count(0, 1):
        raise IllegalSlideError("mover and over intersect")

    # face graph: nodes = polygons of the cut complex, edges = glued labels
    adj = {}
    for label in ecx.glued_labels():
        (sa, sb) = ecx.instances(label)
        adj.setdefault(sa.poly, []).append((label, sb.poly))
        adj.setdefault(sb.poly, []).append((label, sa.poly))

    def faces_touching(oid, side):
        out = {}
        for p, word in enumerate(ecx.polys):
            for l, s in word:
                kind = ex.seg_kind.get(l)
                if kind and kind[0] == "wall" and kind[1] == oid and kind[3] == side:
                    out.setdefault(p, []).append(kind[2][0])
        return out

    from collections import deque

    candidates = []
    for side_m in ("L", "R"):
        starts = faces_touching(0, side_m)
        for side_o in ("L", "R"):
            goals = faces_touching(1, side_o)
            if not starts or not goals:
                continue
            prev = {p: None for p in starts}
            dq = deque(sorted(starts))
            hit = None
            while dq:
                p = dq.popleft()
                if p in goals:
                    hit = p
                    break
                for label, q in sorted(adj.get(p, [])):
                    if q not in prev:
                        prev[q] = (p, label)
                        dq.append(q)
            if hit is None:
                continue
            labels = []
            seq = [hit]
            p = hit
            while prev[p] is not None:
                p, label = prev[p]
                labels.append(label)
                seq.append(p)
            labels.reverse()
            seq.reverse()
            start_face = seq[0]
            mover_chord = min(starts[start_face])
            over_chord = min(goals[hit])
            crossings = []
            for step, label in enumerate(labels):
                kind = ex.seg_kind[label]
                assert kind[0] == "edge"
                _, orig, lo, hi = kind
                from_face = seq[step]
                plus = ecx.plus_instance(label)
                direction = 1 if plus.poly == from_face else -1
                crossings.append((orig, lo, hi, direction))
            candidates.append(
                (len(crossings), side_m, side_o,
                 SlidePath(mover_chord, crossings, over_chord)))
    if not candidates:
        raise IllegalSlideError("no band connects mover and over")
    candidates.sort(key=lambda c: (c[0], c[1], c[2]))
    return [c[3] for c in candidates]


def auto_path(surface, mover, over, context=()):
    """The first (shortest) automatic guiding path; see :func:`auto_paths`."""
    return auto_paths(surface, mover, over)[0], None


def band_slide(surface, mover, over, path=None, context=()):
    """Slide ``mover`` over ``over``: band sum with a parallel push-off.

    The push-off hugs ``over`` on the side from which the guiding path
    arrives and traverses it in the direction of its orientation, so the
    homology class of the result is [mover] + [over].  The guiding path
    must avoid both curves; the result is embedded and disjoint from
    ``over``.  The mover may be an Arc (endpoints stay fixed).
    """
    cx = _complex(surface)
    if mover.crossings == over.crossings and type(mover) == type(over):
        raise IllegalSlideError("cannot slide a curve over itself")
    mover, over = separate_positions([mover, over], context)
    reduced, count = reduce_pair(cx, {0: mover, 1: over}, 0, 1,
                                 extra_events=context)
    if count:
        raise IllegalSlideError("mover and over intersect")
    mover, over = reduced[0], reduced[1]
    if path is None:
        paths = auto_paths(cx, mover, over)
    else:
        paths = [path]
    base = [mover, over] + [c for c in context if c is not None]
    over_sides = curve_left_tsides(cx, over, 1)

    last_error = None
    for cand in paths:
        if isinstance(mover, Arc):
            n_mover = len(mover.crossings) + 1
        else:
            n_mover = max(len(mover.crossings), 1)
        mk = cand.mover_chord % n_mover
        ok = cand.over_chord % max(len(over.crossings), 1)
        for loop_side in (1, -1):
            for ret_side in (1, -1):
                pool = PositionPool(base)
                go = []
                for entry in cand.crossings:
                    if isinstance(entry, Crossing):
                        pool.add(entry.label, entry.t)
                        go.append(entry)
                    else:
                        orig, lo, hi, direction = entry
                        t = pool.fresh_between(orig, lo, hi)
                        go.append(Crossing(orig, direction, t))
                try:
                    result = _assemble_slide(cx, mover, over, go, mk, ok, pool,
                                             over_sides, loop_side, ret_side)
                    validate_embedded(cx, [over] + list(context) + [result])
                    if geometric_intersection(cx, result, over) == 0:
                        return result
                    last_error = IllegalSlideError("band crosses the over curve")
                except CurveError as e:
                    last_error = e
                    continue
    raise IllegalPathError(
        "guiding path does not produce an embedded slide: %s" % last_error)


def _assemble_slide(cx, mover, over, go, mover_chord, over_chord, pool,
                    over_sides, loop_side, ret_side):
    """Word of the slid curve: out along the path, once around ``over``,
    back along the path."""
    n_over = len(over.crossings)
    loop = []
    for j in range(n_over):
        idx = (over_chord + 1 + j) % n_over
        oc = over.crossings[idx]
        t_new = pool.fresh_adjacent(oc.label, oc.t, loop_side * over_sides[idx])
        loop.append(Crossing(oc.label, oc.direction, t_new))
    back = []
    for c in reversed(go):
        t_new = pool.fresh_adjacent(c.label, c.t, ret_side)
        back.append(Crossing(c.label, -c.direction, t_new))
    word = list(mover.crossings)
    band = go + loop + back
    if isinstance(mover, Arc):
        # arc chords: chord k sits before crossing k
        cut = mover_chord
        return Arc(mover.start, word[:cut] + band + word[cut:], mover.end)
    cut = (mover_chord + 1) % max(len(word), 1) if word else 0
    return Curve(word[:cut] + band + word[cut:])


# ----------------------------------------------------------------------
# surgery and connected sum

def surger_along(surface, curves):
    """Cut along a disjoint family and cap both sides of every curve.

    Returns the list of resulting components as Surface values (genus and
    remaining original boundary count per component).
    """
    cx = _complex(surface)
    curves = canonicalize(surface, list(curves))
    arr = Arrangement(cx, {i: c for i, c in enumerate(curves)})
    for i in range(len(curves)):
        for j in range(i + 1, len(curves)):
            if arr.crossing_count(i, j):
                raise CurveError("surgery family is not disjoint")
    ex = explode(cx, {i: c for i, c in enumerate(curves)}, list(range(len(curves))))
    out = []
    for genus, n_orig, n_wall in ex.component_summary():
        out.append(Surface(genus, n_orig))
    return sorted(out, key=lambda s: (s.genus, s.boundary_count))


def connected_sum_words(genus_a, genus_b, curves_a, curves_b):
    """Curve words of A and B on the standard scheme of the closed sum.

    A keeps its handle labels; B's handle index i becomes genus_a + i.
    """
    def remap(c):
        label = c.label
        if label[0] in "ab":
            idx = int(label[1:])
            label = "%s%d" % (label[0], genus_a + idx)
        return Crossing(label, c.direction, c.t)

    new_a = [Curve([c for c in x.crossings]) for x in curves_a]
    new_b = [Curve([remap(c) for c in x.crossings]) for x in curves_b]
    return new_a, new_b
