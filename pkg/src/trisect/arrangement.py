"""Exact arrangements of curve chords inside polygon schemes.

Everything here is combinatorial/rational: polygon boundary points are
placed on the convex curve ``theta -> (theta, theta^2)``, so segment
predicates (crossing tests, intersection ordering) are exact Fraction
arithmetic.

The central product is :func:`explode`: cut a surface along a set of
"wall" objects and return the pieces as a fresh
:class:`~trisect.polygon.PolygonComplex`, optionally carrying other
("tracked") curves through the cut.  The same machinery reports the region
structure used for bigon detection.
"""

from __future__ import annotations

from fractions import Fraction

from .polygon import PolygonComplex, side_position
from .curves import (Arc, Chord, Curve, CurveError, chords_of,
                     chords_interleave, cyclic_between, endpoint_side,
                     in_side, out_side)


class ArrangementError(RuntimeError):
    pass


# ----------------------------------------------------------------------
# exact geometry on the convex carrier

def _pt(theta):
    return (theta, theta * theta)


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _seg_params(p0, p1, q0, q1):
    """Intersection parameters (s, u) of segments p and q, or None.

    ``s`` is along p0->p1, ``u`` along q0->q1; both returned exact.  The
    caller guarantees proper (transverse, interior) crossings.
    """
    d1 = (p1[0] - p0[0], p1[1] - p0[1])
    d2 = (q1[0] - q0[0], q1[1] - q0[1])
    denom = d1[0] * d2[1] - d1[1] * d2[0]
    if denom == 0:
        return None
    w = (q0[0] - p0[0], q0[1] - p0[1])
    s = Fraction(w[0] * d2[1] - w[1] * d2[0], denom)
    u = Fraction(w[0] * d1[1] - w[1] * d1[0], denom)
    return s, u


def _ccw_sorted(vectors):
    """Sort direction vectors counterclockwise starting in (0, 2pi)."""
    def half(v):
        x, y = v
        return 0 if (y > 0 or (y == 0 and x > 0)) else 1

    import functools

    def cmp(a_, b_):
        (ka, va), (kb, vb) = a_, b_
        ha, hb = half(va), half(vb)
        if ha != hb:
            return -1 if ha < hb else 1
        c = va[0] * vb[1] - va[1] * vb[0]
        if c > 0:
            return -1
        if c < 0:
            return 1
        return 0

    return sorted(vectors, key=functools.cmp_to_key(cmp))


# ----------------------------------------------------------------------

class _ChordData:
    __slots__ = ("chord", "owner", "p0", "p1", "events")

    def __init__(self, chord):
        self.chord = chord
        self.owner = chord.owner
        self.p0 = _pt(chord.theta0)
        self.p1 = _pt(chord.theta1)
        self.events = []  # (s, node_id) crossings along the chord

    @property
    def direction(self):
        return (self.p1[0] - self.p0[0], self.p1[1] - self.p0[1])


class Arrangement:
    """Planar arrangement of the wall objects' chords, per polygon.

    ``objs`` maps object ids to Curve/Arc values; all of them are walls.
    Wall objects may cross each other transversally; each individual object
    is embedded.
    """

    def __init__(self, cx: PolygonComplex, objs: dict):
        self.cx = cx
        self.objs = dict(objs)
        self.chords = {}        # (obj_id, k) -> _ChordData
        self.poly_chords = {p: [] for p in range(len(cx.polys))}
        for oid, obj in self.objs.items():
            for ch in chords_of(cx, obj, oid):
                cd = _ChordData(ch)
                self.chords[ch.owner] = cd
                self.poly_chords[ch.poly].append(cd)
        self.crossing_nodes = {}   # node_id -> (cd_a, cd_b, point)
        self._find_crossings()
        self._build_faces()

    # -- crossings ------------------------------------------------------

    def _find_crossings(self):
        for p, cds in self.poly_chords.items():
            for i in range(len(cds)):
                for j in range(i + 1, len(cds)):
                    a, b = cds[i], cds[j]
                    if not chords_interleave(a.chord, b.chord):
                        continue
                    if a.owner[0] == b.owner[0]:
                        raise CurveError(
                            "object %r self-crosses" % (a.owner[0],))
                    params = _seg_params(a.p0, a.p1, b.p0, b.p1)
                    if params is None:
                        raise ArrangementError("degenerate chord crossing")
                    s, u = params
                    node = ("X", a.owner, b.owner)
                    self.crossing_nodes[node] = (a, b)
                    a.events.append((s, node))
                    b.events.append((u, node))
        for cd in self.chords.values():
            cd.events.sort(key=lambda e: e[0])

    def crossing_count(self, oid_a, oid_b):
        n = 0
        for node, (a, b) in self.crossing_nodes.items():
            owners = {a.owner[0], b.owner[0]}
            if owners == {oid_a, oid_b}:
                n += 1
        return n

    # -- faces ----------------------------------------------------------

    def _chord_nodes(self, cd):
        """Node sequence along a chord: start, crossings, end."""
        start = ("B", cd.chord.poly, cd.chord.theta0)
        end = ("B", cd.chord.poly, cd.chord.theta1)
        return [start] + [n for _, n in cd.events] + [end]

    def _build_faces(self):
        cx = self.cx
        # boundary nodes per polygon: corners + chord endpoints
        self.bnodes = {}
        for p, word in enumerate(cx.polys):
            thetas = {Fraction(i) for i in range(len(word))}
            for cd in self.poly_chords[p]:
                thetas.add(cd.chord.theta0)
                thetas.add(cd.chord.theta1)
            self.bnodes[p] = sorted(thetas)

        # segments: ('bseg', p, i) boundary arc i -> i+1 (ccw);
        #           ('cseg', owner, k) k-th piece of a chord
        # halfedge: (segment, +1/-1)
        outgoing = {}   # node -> list of (direction_vector, halfedge)

        def add_out(node, vec, he):
            outgoing.setdefault(node, []).append((he, vec))

        self.seg_nodes = {}
        for p, word in enumerate(cx.polys):
            bn = self.bnodes[p]
            m = len(bn)
            for i in range(m):
                th0, th1 = bn[i], bn[(i + 1) % m]
                n0, n1 = ("B", p, th0), ("B", p, th1)
                seg = ("bseg", p, i)
                self.seg_nodes[seg] = (n0, n1)
                # tangent directions approximated by the secant; only the
                # cyclic order at each node matters and boundary tangents
                # are extreme there, so exact values are irrelevant.
                add_out(n0, None, (seg, 1))
                add_out(n1, None, (seg, -1))
        for cd in self.chords.values():
            nodes = self._chord_nodes(cd)
            for k in range(len(nodes) - 1):
                seg = ("cseg", cd.owner, k)
                self.seg_nodes[seg] = (nodes[k], nodes[k + 1])
                add_out(nodes[k], cd.direction, (seg, 1))
                d = cd.direction
                add_out(nodes[k + 1], (-d[0], -d[1]), (seg, -1))

        # rotation orders
        self.rotation = {}
        for node, items in outgoing.items():
            if node[0] == "B":
                p, theta = node[1], node[2]
                b_fwd = b_bwd = chord_he = None
                for he, vec in items:
                    seg, d = he
                    if seg[0] == "bseg":
                        if d == 1:
                            b_fwd = he
                        else:
                            b_bwd = he
                    else:
                        chord_he = he
                order = [b_fwd] + ([chord_he] if chord_he else []) + [b_bwd]
                self.rotation[node] = order
            else:
                vecs = [(he, vec) for he, vec in items]
                self.rotation[node] = [he for he, _ in _ccw_sorted(vecs)]

        # face traversal: next(h) = ccw-predecessor of twin(h) at head(h)
        def head(he):
            seg, d = he
            n0, n1 = self.seg_nodes[seg]
            return n1 if d == 1 else n0

        def twin(he):
            return (he[0], -he[1])

        self.face_of = {}
        self.faces = []
        all_hes = []
        for seg in self.seg_nodes:
            all_hes.append((seg, 1))
            all_hes.append((seg, -1))
        for he0 in all_hes:
            if he0 in self.face_of:
                continue
            face = []
            he = he0
            while True:
                self.face_of[he] = len(self.faces)
                face.append(he)
                h = twin(he)
                rot = self.rotation[head(he)]
                idx = rot.index(h)
                he = rot[idx - 1]
                if he == he0:
                    break
            self.faces.append(face)

        # outer faces: contain a clockwise boundary halfedge
        self.outer_faces = set()
        for fi, face in enumerate(self.faces):
            for seg, d in face:
                if seg[0] == "bseg" and d == -1:
                    self.outer_faces.add(fi)
                    break

    def interior_faces(self):
        return [i for i in range(len(self.faces)) if i not in self.outer_faces]


# ----------------------------------------------------------------------
# exploding a surface along walls

class Exploded:
    """Result of cutting a surface along wall objects.

    Attributes:
        complex: the cut-open surface as a PolygonComplex (faces = polygons)
        face_labels: list of face keys parallel to ``complex.polys``
        seg_kind: new label -> descriptor tuple
            ('edge', orig_label, lo, hi)   sub-segment of an original edge
            ('wall', obj_id, k, side)      copy of a wall chord piece,
                                           side in {'L','R'}
        tracked: obj_id -> rebuilt Curve/Arc on the cut complex
        wall_piece_count: obj_id -> number of chord pieces
    """

    def __init__(self, complex, face_keys, seg_kind, tracked, wall_ids, orig_free,
                 arrangement=None):
        self.complex = complex
        self.face_keys = face_keys
        self.seg_kind = seg_kind
        self.tracked = tracked
        self.wall_ids = list(wall_ids)
        self.orig_free = set(orig_free)
        self.arrangement = arrangement

    def wall_side_labels(self, oid, side):
        return sorted(l for l, k in self.seg_kind.items()
                      if k[0] == "wall" and k[1] == oid and k[3] == side)

    def components(self):
        return self.complex.components()

    def component_summary(self):
        """(genus, n_original_boundary, n_wall_boundary_circles) per component."""
        out = []
        for comp in self.complex.components():
            sub = self.complex.restrict(comp)
            circles = sub.boundary_circles()
            chi = sub.euler_characteristic()
            n_orig = 0
            n_wall = 0
            for circle in circles:
                kinds = set()
                for s in circle:
                    label = sub.polys[s.poly][s.index][0]
                    k = self.seg_kind.get(label)
                    if k is None:
                        kinds.add("orig")
                    elif k[0] == "edge":
                        kinds.add("orig" if k[1] in self.orig_free else "glued?")
                    else:
                        kinds.add("wall")
                if kinds == {"orig"}:
                    n_orig += 1
                else:
                    n_wall += 1
            b = len(circles)
            g2 = 2 - chi - b
            assert g2 >= 0 and g2 % 2 == 0, "bad component bookkeeping"
            out.append((g2 // 2, n_orig, n_wall))
        return out


def _wall_label(oid, k, side):
    return "W.%s.%s.%s" % (oid, k, side)


def _edge_label(orig, index):
    return "E.%s.%s" % (orig, index)


def explode(cx: PolygonComplex, objects: dict, wall_ids, tracked_ids=()):
    """Cut the surface open along the wall objects.

    ``objects`` maps ids to Curve/Arc values drawn on ``cx``.  Wall objects
    may cross each other (they are each embedded); tracked objects must be
    disjoint from every wall (no interleaving chords), and are re-expressed
    as words on the cut complex.
    """
    wall_ids = list(wall_ids)
    tracked_ids = list(tracked_ids)
    walls = {i: objects[i] for i in wall_ids}
    arr = Arrangement(cx, walls)

    if tracked_ids:
        wall_chords = [cd.chord for cd in arr.chords.values()]
        for tid in tracked_ids:
            for ch in chords_of(cx, objects[tid], tid):
                for wc in wall_chords:
                    if chords_interleave(ch, wc):
                        raise ArrangementError(
                            "tracked object %r crosses a wall" % (tid,))

    # events (cut positions) per original edge label
    cut_ts = {l: set() for l in cx.labels}
    for oid in wall_ids:
        obj = objects[oid]
        for c in getattr(obj, "crossings", ()):
            cut_ts[c.label].add(c.t)
        if isinstance(obj, Arc):
            cut_ts[obj.start.label].add(obj.start.t)
            cut_ts[obj.end.label].add(obj.end.t)
    seg_bounds = {}
    for label, ts in cut_ts.items():
        bounds = [Fraction(0)] + sorted(ts) + [Fraction(1)]
        seg_bounds[label] = bounds

    def edge_segment(label, t):
        bounds = seg_bounds[label]
        for k in range(len(bounds) - 1):
            if bounds[k] < t < bounds[k + 1]:
                return k, bounds[k], bounds[k + 1]
        raise ArrangementError("position %s on %r is a cut point" % (t, label))

    seg_kind = {}
    for label, bounds in seg_bounds.items():
        for k in range(len(bounds) - 1):
            seg_kind[_edge_label(label, k)] = ("edge", label, bounds[k], bounds[k + 1])

    # polygon word for each interior face
    face_keys = []
    polys = []
    face_index = {}
    # wall chord piece sides: 'L' when the face traverses the piece forward
    for fi in arr.interior_faces():
        word = []
        for seg, d in arr.faces[fi]:
            if seg[0] == "bseg":
                p, i = seg[1], seg[2]
                bn = arr.bnodes[p]
                th0 = bn[i]
                th1 = bn[(i + 1) % len(bn)]
                side_idx = int(th0)  # segment lies inside side [side_idx, side_idx+1]
                label, sign = cx.polys[p][side_idx]
                # edge parameters of the segment endpoints; the wrap-around
                # segment ends at the corner theta=0 == side position 1
                u0, u1 = th0 - side_idx, th1 - side_idx
                if u1 <= 0:
                    u1 = Fraction(1)
                if sign == 1:
                    t0, t1 = u0, u1
                else:
                    t0, t1 = 1 - u1, 1 - u0
                bounds = seg_bounds[label]
                k = bounds.index(t0)
                assert bounds[k + 1] == t1, "segment bounds mismatch"
                newl = _edge_label(label, k)
                s = sign * d
                word.append((newl, s))
            else:
                owner, k = seg[1], seg[2]
                side = "L" if d == 1 else "R"
                newl = _wall_label(owner, k, side)
                seg_kind[newl] = ("wall", owner[0], (owner[1], k), side)
                word.append((newl, 1))
        face_keys.append(fi)
        face_index[fi] = len(polys)
        polys.append(word)

    # drop unused edge labels (sub-segments of sides not adjacent to any face
    # never happens: every segment borders an interior face)
    used = {l for w in polys for l, _ in w}
    seg_kind = {l: k for l, k in seg_kind.items() if l in used}

    new_cx = PolygonComplex(polys)

    # tracked objects
    tracked = {}
    if tracked_ids:
        # face lookup for boundary sub-segments: the +1 halfedge's face
        bseg_face = {}
        for fi in arr.interior_faces():
            for seg, d in arr.faces[fi]:
                if seg[0] == "bseg" and d == 1:
                    bseg_face[seg] = fi

        def locate(side, t):
            """(segment key, face) of a non-cut position on a side instance."""
            p = side.poly
            u = side_position(side.sign, t)
            theta = side.index + u
            bn = arr.bnodes[p]
            import bisect
            i = bisect.bisect_right(bn, theta) - 1
            return ("bseg", p, i)

        for oid in tracked_ids:
            obj = objects[oid]
            if isinstance(obj, Curve):
                if obj.is_trivial_word():
                    tracked[oid] = obj
                    continue
                new_cr = []
                for c in obj.crossings:
                    k, lo, hi = edge_segment(c.label, c.t)
                    newl = _edge_label(c.label, k)
                    if newl not in used:
                        raise ArrangementError("tracked curve leaves the kept region")
                    from .curves import Crossing
                    new_cr.append(Crossing(newl, c.direction,
                                           (c.t - lo) / (hi - lo)))
                tracked[oid] = Curve(new_cr)
            else:
                from .curves import Crossing, EndPoint
                k, lo, hi = edge_segment(obj.start.label, obj.start.t)
                ns = EndPoint(_edge_label(obj.start.label, k),
                              (obj.start.t - lo) / (hi - lo))
                k, lo, hi = edge_segment(obj.end.label, obj.end.t)
                ne = EndPoint(_edge_label(obj.end.label, k),
                              (obj.end.t - lo) / (hi - lo))
                new_cr = []
                for c in obj.crossings:
                    k, lo, hi = edge_segment(c.label, c.t)
                    new_cr.append(Crossing(_edge_label(c.label, k), c.direction,
                                           (c.t - lo) / (hi - lo)))
                tracked[oid] = Arc(ns, new_cr, ne)
        # consistency: chords must sit inside single faces
        for oid, obj in tracked.items():
            chords_of(new_cx, obj, oid)

    orig_free = {l for l in cx.labels if not cx.is_glued(l)}
    return Exploded(new_cx, face_keys, seg_kind, tracked, wall_ids, orig_free,
                    arrangement=arr)


# ----------------------------------------------------------------------
# region analysis for bigon detection

class Region:
    """A complementary region of a wall system on the surface."""

    def __init__(self, polys, chi, circles):
        self.polys = polys
        self.chi = chi
        # circles: list of boundary circles; each circle is a list of
        # (kind, data, orientation) pieces in order, where kind is 'wall'
        # (data = (obj_id, chord_piece, side)) or 'free' (original boundary)
        self.circles = circles

    def is_disk(self):
        return self.chi == 1 and len(self.circles) == 1

    def circle_owner_runs(self, circle_index):
        """Maximal cyclic runs of pieces by owner along one boundary circle.

        Each run is ``(owner, [piece indices])`` where owner is the wall
        object id, or ``('free', label)`` for original-boundary pieces.
        """
        circle = self.circles[circle_index]
        items = []
        for kind, data, orient in circle:
            items.append(data[0] if kind == "wall" else ("free", data))
        groups = []
        for i, oid in enumerate(items):
            if groups and groups[-1][0] == oid:
                groups[-1][1].append(i)
            else:
                groups.append([oid, [i]])
        if len(groups) > 1 and groups[0][0] == groups[-1][0]:
            groups[0][1] = groups[-1][1] + groups[0][1]
            groups.pop()
        return groups


def regions(cx: PolygonComplex, objects: dict, wall_ids):
    """Complementary regions of the wall objects, with boundary structure."""
    ex = explode(cx, objects, wall_ids)
    ecx = ex.complex
    out = []
    for comp in ecx.components():
        sub = ecx.restrict(comp)
        circles = []
        for circle in sub.boundary_circles():
            pieces = []
            for s in circle:
                label, sign = sub.polys[s.poly][s.index]
                kind = ex.seg_kind.get(label)
                if kind is None or (kind[0] == "edge"):
                    pieces.append(("free", label, sign))
                else:
                    pieces.append(("wall", (kind[1], kind[2], kind[3]), sign))
            circles.append(pieces)
        out.append(Region(tuple(comp), sub.euler_characteristic(), circles))
    return out, ex
