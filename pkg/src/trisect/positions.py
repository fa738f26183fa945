"""Exact rational position bookkeeping along scheme edges.

Every crossing of every object in a drawn system must sit at a distinct
parameter of its edge.  The pool hands out fresh positions in requested
gaps and renormalizes a whole system to small denominators while
preserving the relative order on every edge.
"""

from __future__ import annotations

from fractions import Fraction

from .curves import Arc, Crossing, Curve, EndPoint


class PositionPool:
    """Registry of occupied positions per edge label."""

    def __init__(self, objects=()):
        self.events = {}
        for obj in objects:
            self.add_object(obj)

    def add_object(self, obj):
        for c in getattr(obj, "crossings", ()):
            self.add(c.label, c.t)
        if isinstance(obj, Arc):
            self.add(obj.start.label, obj.start.t)
            self.add(obj.end.label, obj.end.t)

    def add(self, label, t):
        self.events.setdefault(label, set()).add(Fraction(t))

    def remove(self, label, t):
        self.events.get(label, set()).discard(Fraction(t))

    def _sorted(self, label):
        return sorted(self.events.get(label, ()))

    def fresh_between(self, label, lo, hi):
        """A fresh position strictly inside (lo, hi), before any event there."""
        lo, hi = Fraction(lo), Fraction(hi)
        ts = [t for t in self.events.get(label, ()) if lo < t < hi]
        upper = min(ts) if ts else hi
        t = (lo + upper) / 2
        self.add(label, t)
        return t

    def fresh_adjacent(self, label, t, side):
        """A fresh position immediately next to ``t`` (side=+1 above, -1 below).

        "Immediately" means no existing event lies between the anchor and
        the returned position.
        """
        t = Fraction(t)
        ts = self._sorted(label)
        if side > 0:
            bigger = [u for u in ts if u > t]
            hi = bigger[0] if bigger else Fraction(1)
            new = (t + hi) / 2
        else:
            smaller = [u for u in ts if u < t]
            lo = smaller[-1] if smaller else Fraction(0)
            new = (lo + t) / 2
        self.add(label, new)
        return new


def renormalize(objects):
    """Rewrite all positions to k/(m+1) per edge, preserving order.

    ``objects`` is a dict id -> Curve/Arc; returns a dict of the same shape.
    """
    events = {}
    for obj in objects.values():
        for c in getattr(obj, "crossings", ()):
            events.setdefault(c.label, set()).add(c.t)
        if isinstance(obj, Arc):
            events.setdefault(obj.start.label, set()).add(obj.start.t)
            events.setdefault(obj.end.label, set()).add(obj.end.t)
    remap = {}
    for label, ts in events.items():
        ordered = sorted(ts)
        m = len(ordered)
        remap[label] = {t: Fraction(k + 1, m + 1) for k, t in enumerate(ordered)}

    def fix_crossing(c):
        return Crossing(c.label, c.direction, remap[c.label][c.t])

    out = {}
    for oid, obj in objects.items():
        if isinstance(obj, Curve):
            out[oid] = Curve([fix_crossing(c) for c in obj.crossings])
        else:
            out[oid] = Arc(EndPoint(obj.start.label, remap[obj.start.label][obj.start.t]),
                           [fix_crossing(c) for c in obj.crossings],
                           EndPoint(obj.end.label, remap[obj.end.label][obj.end.t]))
    return out
