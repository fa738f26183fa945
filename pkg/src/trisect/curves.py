"""Embedded curves and arcs as crossing words on a polygon scheme.

A closed curve is a cyclic word of crossings; an arc is a linear word with
two endpoints on free (boundary) edges.  Each crossing records the edge
label, the direction of passage, and an exact rational position along the
edge.  Chords (the pieces of the curve inside polygons) are implicit: the
chord after a crossing runs from that crossing's entry point to the next
crossing's exit point, and both must lie in the same polygon.

Direction convention: a crossing with ``direction == +1`` exits its polygon
through the instance where the label appears with sign +1 and re-enters at
the sign -1 instance; ``direction == -1`` is the reverse passage.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .polygon import PolygonComplex, Side, boundary_coordinate


class CurveError(ValueError):
    """Raised for malformed (non-embedded or inconsistent) curve data."""


@dataclass(frozen=True)
class Crossing:
    label: str
    direction: int
    t: Fraction

    def reversed(self):
        return Crossing(self.label, -self.direction, self.t)

    def __repr__(self):
        return "%s%s@%s" % (self.label, "+" if self.direction == 1 else "-", self.t)


@dataclass(frozen=True)
class EndPoint:
    """An arc endpoint on a free boundary edge."""
    label: str
    t: Fraction

    def __repr__(self):
        return "%s@%s" % (self.label, self.t)


def _norm_t(t):
    t = Fraction(t)
    if not (0 < t < 1):
        raise CurveError("edge position %s outside (0,1)" % t)
    return t


class Curve:
    """A closed embedded curve as a cyclic crossing word.

    The empty word represents a trivial circle contained in a polygon
    interior; it crosses nothing.
    """

    __slots__ = ("crossings",)

    def __init__(self, crossings):
        self.crossings = tuple(
            Crossing(c.label, c.direction, _norm_t(c.t)) for c in crossings)

    def __len__(self):
        return len(self.crossings)

    def __iter__(self):
        return iter(self.crossings)

    def __eq__(self, other):
        return isinstance(other, Curve) and self.crossings == other.crossings

    def __hash__(self):
        return hash(self.crossings)

    def is_trivial_word(self):
        return not self.crossings

    def reversed(self):
        return Curve(tuple(c.reversed() for c in reversed(self.crossings)))

    def rotated(self, k):
        n = len(self.crossings)
        return Curve(self.crossings[k % n:] + self.crossings[:k % n])

    def signed_label_count(self, label):
        return sum(c.direction for c in self.crossings if c.label == label)

    def __repr__(self):
        return "Curve[%s]" % " ".join(repr(c) for c in self.crossings)


class Arc:
    """An embedded arc with endpoints on free boundary edges."""

    __slots__ = ("start", "crossings", "end")

    def __init__(self, start, crossings, end):
        self.start = EndPoint(start.label, _norm_t(start.t))
        self.end = EndPoint(end.label, _norm_t(end.t))
        self.crossings = tuple(
            Crossing(c.label, c.direction, _norm_t(c.t)) for c in crossings)

    def __eq__(self, other):
        return (isinstance(other, Arc) and self.start == other.start
                and self.end == other.end and self.crossings == other.crossings)

    def __hash__(self):
        return hash((self.start, self.crossings, self.end))

    def reversed(self):
        return Arc(self.end, tuple(c.reversed() for c in reversed(self.crossings)),
                   self.start)

    def __repr__(self):
        return "Arc[%r | %s | %r]" % (
            self.start, " ".join(repr(c) for c in self.crossings), self.end)


# ----------------------------------------------------------------------
# chord extraction

@dataclass(frozen=True)
class Chord:
    """A straight piece of a curve inside one polygon.

    ``theta0``/``theta1`` are boundary coordinates of the chord's start and
    end in the traversal direction of the owning curve; ``owner`` is the
    (curve index, chord index) tag assigned by the arrangement.
    """
    poly: int
    theta0: Fraction
    theta1: Fraction
    owner: tuple


def out_side(complex: PolygonComplex, crossing: Crossing) -> Side:
    inst = complex.instances(crossing.label)
    if len(inst) != 2:
        raise CurveError("curve crosses free edge %r" % crossing.label)
    return (complex.plus_instance(crossing.label) if crossing.direction == 1
            else complex.minus_instance(crossing.label))


def in_side(complex: PolygonComplex, crossing: Crossing) -> Side:
    return (complex.minus_instance(crossing.label) if crossing.direction == 1
            else complex.plus_instance(crossing.label))


def endpoint_side(complex: PolygonComplex, endpoint: EndPoint) -> Side:
    inst = complex.instances(endpoint.label)
    if len(inst) != 1:
        raise CurveError("arc endpoint on glued edge %r" % endpoint.label)
    return inst[0]


def chords_of(complex, obj, tag):
    """The chord list of a Curve or Arc, tagged ``(tag, k)``.

    Raises CurveError when consecutive events do not share a polygon.
    """
    if isinstance(obj, Curve):
        events = list(obj.crossings)
        if not events:
            return []
        points = []
        for c in events:
            s_in = in_side(complex, c)
            s_out = out_side(complex, c)
            points.append((s_in, s_out, c.t))
        chords = []
        n = len(events)
        for k in range(n):
            s_in, _, t0 = points[k]
            _, s_out, t1 = points[(k + 1) % n]
            if s_in.poly != s_out.poly:
                raise CurveError(
                    "chord %d of %r jumps between polygons" % (k, obj))
            chords.append(Chord(s_in.poly,
                                boundary_coordinate(s_in, t0),
                                boundary_coordinate(s_out, t1),
                                (tag, k)))
        return chords
    if isinstance(obj, Arc):
        nodes = [(endpoint_side(complex, obj.start), obj.start.t)]
        for c in obj.crossings:
            nodes.append((out_side(complex, c), c.t))
            nodes.append((in_side(complex, c), c.t))
        nodes.append((endpoint_side(complex, obj.end), obj.end.t))
        chords = []
        for k in range(0, len(nodes), 2):
            (sa, ta), (sb, tb) = nodes[k], nodes[k + 1]
            if sa.poly != sb.poly:
                raise CurveError("chord %d of %r jumps between polygons" % (k // 2, obj))
            chords.append(Chord(sa.poly,
                                boundary_coordinate(sa, ta),
                                boundary_coordinate(sb, tb),
                                (tag, k // 2)))
        return chords
    raise TypeError("expected Curve or Arc")


# ----------------------------------------------------------------------
# interleaving predicates

def cyclic_between(a, x, b):
    """True when x lies strictly inside the ccw interval (a, b)."""
    if a < b:
        return a < x < b
    return x > a or x < b


def chords_interleave(c1: Chord, c2: Chord) -> bool:
    """Whether two chords of the same polygon must cross.

    Chord endpoints are points of a convex boundary; two chords cross
    exactly when their endpoint pairs interleave cyclically.  Chords in
    different polygons never cross.
    """
    if c1.poly != c2.poly:
        return False
    inside = cyclic_between(c1.theta0, c2.theta0, c1.theta1)
    inside2 = cyclic_between(c1.theta0, c2.theta1, c1.theta1)
    return inside != inside2


def validate_embedded(complex, objs):
    """Check that a family of curves/arcs is a valid embedded picture.

    * every event position is distinct on each edge label,
    * chords are consistent (checked by ``chords_of``),
    * no two chords of the *same* object interleave.

    Distinct objects are allowed to cross; their crossings are transverse
    by the distinct-position rule.
    """
    positions = {}
    for idx, obj in enumerate(objs):
        events = list(getattr(obj, "crossings", ()))
        extra = []
        if isinstance(obj, Arc):
            extra = [obj.start, obj.end]
        for ev in list(events) + extra:
            key = (ev.label, ev.t)
            if key in positions:
                raise CurveError(
                    "position clash on edge %r at %s" % (ev.label, ev.t))
            positions[key] = idx
    for idx, obj in enumerate(objs):
        ch = chords_of(complex, obj, idx)
        for i in range(len(ch)):
            for j in range(i + 1, len(ch)):
                if chords_interleave(ch[i], ch[j]):
                    raise CurveError(
                        "object %d is not embedded (chords %d,%d cross)" % (idx, i, j))
    return True
