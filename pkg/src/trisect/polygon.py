"""Polygon gluing schemes for orientable surfaces.

A surface is presented as a complex of coherently oriented polygons whose
sides carry edge labels.  A label appearing twice (once with sign +1, once
with sign -1) is a glued edge; a label appearing once is a free (boundary)
edge.  All structural computations (Euler characteristic, vertex classes,
boundary circles, genus) are derived from this data.

Conventions used throughout the package:

* every polygon boundary word is read counterclockwise;
* a glued pair is identified with reversal, so coherent orientation forces
  the two instances to carry opposite signs;
* corner ``i`` of a polygon is the corner at the *start* of side ``i``;
* points on an edge are parameterized by t in (0,1) along the edge's
  intrinsic (+) direction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class SchemeError(ValueError):
    """Raised when a polygon gluing scheme is structurally invalid."""


@dataclass(frozen=True)
class Side:
    """One side instance of an edge label inside a polygon word."""
    poly: int
    index: int
    sign: int


class PolygonComplex:
    """A finite collection of labeled, coherently oriented polygons.

    ``polys`` is a list of polygon boundary words; each word is a list of
    ``(label, sign)`` pairs with ``sign`` in ``{+1, -1}``.
    """

    def __init__(self, polys, check=True):
        self.polys = [list(w) for w in polys]
        self._instances = {}
        for p, word in enumerate(self.polys):
            if not word:
                raise SchemeError("empty polygon word")
            for i, (label, sign) in enumerate(word):
                if sign not in (1, -1):
                    raise SchemeError("side sign must be +1 or -1")
                self._instances.setdefault(label, []).append(Side(p, i, sign))
        if check:
            self.validate()

    # ------------------------------------------------------------------
    # structure

    def validate(self):
        for label, inst in self._instances.items():
            if len(inst) > 2:
                raise SchemeError("label %r used more than twice" % label)
            if len(inst) == 2 and inst[0].sign * inst[1].sign != -1:
                raise SchemeError(
                    "label %r glued without reversal (non-orientable)" % label)

    def instances(self, label):
        return self._instances[label]

    @property
    def labels(self):
        return self._instances.keys()

    def is_glued(self, label):
        return len(self._instances[label]) == 2

    def free_labels(self):
        return sorted(l for l, inst in self._instances.items() if len(inst) == 1)

    def glued_labels(self):
        return sorted(l for l, inst in self._instances.items() if len(inst) == 2)

    def side(self, poly, index):
        return self.polys[poly][index % len(self.polys[poly])]

    def partner(self, side):
        """The other instance of a glued side."""
        label, _ = self.polys[side.poly][side.index]
        a, b = self._instances[label]
        return b if (a.poly, a.index) == (side.poly, side.index) else a

    def plus_instance(self, label):
        a, b = self._instances[label]
        return a if a.sign == 1 else b

    def minus_instance(self, label):
        a, b = self._instances[label]
        return a if a.sign == -1 else b

    # ------------------------------------------------------------------
    # corners and vertices

    def corners(self):
        return [(p, i) for p, w in enumerate(self.polys) for i in range(len(w))]

    def corner_after_crossing(self, corner):
        """Rotate one step around the vertex at ``corner``.

        From corner ``(p, i)`` (start of side ``i``), cross side ``i`` to the
        identified corner on the partner instance.  Returns ``None`` when
        side ``i`` is free, i.e. the rotation runs into the boundary.
        """
        p, i = corner
        word = self.polys[p]
        label, sign = word[i]
        inst = self._instances[label]
        if len(inst) == 1:
            return None
        here = Side(p, i, sign)
        other = self.partner(here)
        n = len(self.polys[other.poly])
        # the landing sector is adjacent to the partner side at the same
        # vertex point, i.e. the corner just past the partner side
        return (other.poly, (other.index + 1) % n)

    def vertex_classes(self):
        """Partition of corners into surface vertices (union-find)."""
        parent = {c: c for c in self.corners()}

        def find(c):
            while parent[c] != c:
                parent[c] = parent[parent[c]]
                c = parent[c]
            return c

        def union(c, d):
            rc, rd = find(c), find(d)
            if rc != rd:
                parent[rc] = rd

        for label, inst in self._instances.items():
            if len(inst) != 2:
                continue
            plus = inst[0] if inst[0].sign == 1 else inst[1]
            minus = inst[0] if inst[0].sign == -1 else inst[1]
            np_, nm = len(self.polys[plus.poly]), len(self.polys[minus.poly])
            # start of edge: corner at + instance start, corner past - instance
            union((plus.poly, plus.index), (minus.poly, (minus.index + 1) % nm))
            union((plus.poly, (plus.index + 1) % np_), (minus.poly, minus.index))
        classes = {}
        for c in self.corners():
            classes.setdefault(find(c), []).append(c)
        return list(classes.values())

    def vertex_rotation(self, corner):
        """All corners around the vertex at ``corner`` in rotation order.

        Only meaningful for interior vertices (no free side in the orbit);
        returns ``None`` if the rotation hits the boundary.
        """
        orbit = [corner]
        c = self.corner_after_crossing(corner)
        while c is not None and c != corner:
            orbit.append(c)
            c = self.corner_after_crossing(c)
        return orbit if c == corner else None

    # ------------------------------------------------------------------
    # invariants

    def components(self):
        """Connected components as lists of polygon indices."""
        n = len(self.polys)
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for label, inst in self._instances.items():
            if len(inst) == 2:
                a, b = find(inst[0].poly), find(inst[1].poly)
                if a != b:
                    parent[a] = b
        comps = {}
        for p in range(n):
            comps.setdefault(find(p), []).append(p)
        return list(comps.values())

    def euler_characteristic(self):
        V = len(self.vertex_classes())
        E = len(self._instances)
        F = len(self.polys)
        return V - E + F

    def boundary_circles(self):
        """The boundary circles, each as a list of free-side instances."""
        free = {}
        for label, inst in self._instances.items():
            if len(inst) == 1:
                s = inst[0]
                free[(s.poly, s.index)] = s
        seen = set()
        circles = []
        for start in sorted(free):
            if start in seen:
                continue
            circle = []
            cur = free[start]
            while True:
                key = (cur.poly, cur.index)
                if key in seen:
                    break
                seen.add(key)
                circle.append(cur)
                # walk past the far corner of this free side, rotating through
                # glued sides until the next free side shows up
                n = len(self.polys[cur.poly])
                corner = (cur.poly, (cur.index + 1) % n)
                guard = 0
                while True:
                    guard += 1
                    if guard > 4 * sum(len(w) for w in self.polys):
                        raise SchemeError("boundary walk does not close up")
                    p, i = corner
                    label, sign = self.polys[p][i]
                    if len(self._instances[label]) == 1:
                        cur = Side(p, i, sign)
                        break
                    corner = self.corner_after_crossing(corner)
            circles.append(circle)
        return circles

    def genus_of_component(self, polys_in_component):
        """Genus of one connected component (orientable)."""
        sub = self.restrict(polys_in_component)
        chi = sub.euler_characteristic()
        b = len(sub.boundary_circles())
        g2 = 2 - chi - b
        if g2 < 0 or g2 % 2:
            raise SchemeError("impossible Euler characteristic bookkeeping")
        return g2 // 2

    def restrict(self, poly_indices):
        """Sub-complex on a set of polygons (must be union of components)."""
        keep = sorted(set(poly_indices))
        return PolygonComplex([self.polys[p] for p in keep], check=False)

    # ------------------------------------------------------------------

    def __repr__(self):
        words = []
        for w in self.polys:
            words.append(" ".join(
                ("%s" % l) if s == 1 else ("%s-" % l) for l, s in w))
        return "PolygonComplex[%s]" % "; ".join(words)


# ----------------------------------------------------------------------
# standard schemes

SPHERE_LABEL = "s0"


def handle_labels(i):
    return "a%d" % i, "b%d" % i


def pocket_labels(i):
    return "c%d" % i, "e%d" % i


def standard_word(genus, boundary):
    """Canonical single-polygon word for the (genus, boundary) surface.

    Closed genus 0 is the bigon ``s0 s0^-1``; otherwise handles come first
    (``a_i b_i a_i^-1 b_i^-1``), then one pocket ``c_j e_j c_j^-1`` per
    boundary circle, with ``e_j`` the free boundary edge.
    """
    word = []
    for i in range(1, genus + 1):
        a, b = handle_labels(i)
        word += [(a, 1), (b, 1), (a, -1), (b, -1)]
    for j in range(1, boundary + 1):
        c, e = pocket_labels(j)
        word += [(c, 1), (e, 1), (c, -1)]
    if not word:
        word = [(SPHERE_LABEL, 1), (SPHERE_LABEL, -1)]
    return word


class Surface:
    """An orientable surface in canonical polygon form.

    The canonical scheme is the single polygon of :func:`standard_word`.
    ``genus`` and ``boundary_count`` are the defining data; everything else
    is derived.  Immutable.
    """

    def __init__(self, genus, boundary_count=0):
        if genus < 0 or boundary_count < 0:
            raise SchemeError("genus and boundary count must be non-negative")
        self.genus = genus
        self.boundary_count = boundary_count
        self.complex = PolygonComplex([standard_word(genus, boundary_count)])
        chi = self.complex.euler_characteristic()
        if chi != 2 - 2 * genus - boundary_count:
            raise SchemeError("scheme Euler characteristic mismatch")

    @property
    def euler_characteristic(self):
        return 2 - 2 * self.genus - self.boundary_count

    def boundary_edge(self, j):
        """Label of the free edge on the j-th boundary circle (1-based)."""
        if not (1 <= j <= self.boundary_count):
            raise SchemeError("no boundary circle %d" % j)
        return pocket_labels(j)[1]

    def is_closed(self):
        return self.boundary_count == 0

    def edge_labels(self):
        return [l for l, s in self.complex.polys[0] if s == 1 or not self.complex.is_glued(l)]

    def __eq__(self, other):
        return (isinstance(other, Surface)
                and self.genus == other.genus
                and self.boundary_count == other.boundary_count)

    def __hash__(self):
        return hash(("Surface", self.genus, self.boundary_count))

    def __repr__(self):
        return "Surface(genus=%d, boundary=%d)" % (self.genus, self.boundary_count)


def side_position(side_sign, t):
    """Position along a polygon side (in boundary order) of edge parameter t."""
    return t if side_sign == 1 else 1 - t


def boundary_coordinate(side, t):
    """Boundary coordinate theta in [0, len(word)) of edge parameter t."""
    return side.index + side_position(side.sign, Fraction(t))
