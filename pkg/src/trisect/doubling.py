"""Relative trisection diagrams, arc generation, mirroring, and doubling.

The double of a bordered diagram is built by gluing the diagram to its
mirror image along every boundary circle; arcs close up in pairs into
curves crossing each gluing circle twice.  The resulting closed complex is
normalized to the standard scheme with every curve tracked through.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import kernel
from .arrangement import Arrangement, explode
from .curves import Arc, Crossing, Curve, EndPoint, validate_embedded
from .diagrams import ROLES, RelativeType, TrisectionDiagram
from .errors import ArcSearchExhausted, ValidationError
from .polygon import Surface, pocket_labels, standard_word
from .positions import PositionPool
from .rebuild import standardize

F = Fraction

ARC_FAMILIES = ("a", "b", "c")


class RelativeTrisectionDiagram:
    """Bordered surface with three curve families (kept reduced)."""

    def __init__(self, surface: Surface, alpha, beta, gamma,
                 declared_type: RelativeType = None, aux=None, reduce=True):
        if surface.is_closed():
            raise ValidationError("relative diagrams need boundary")
        self.surface = surface
        curves = list(alpha) + list(beta) + list(gamma)
        na, nb = len(list(alpha)), len(list(beta))
        if reduce and curves:
            curves = kernel.separate_positions(curves)
            curves = kernel.canonicalize(surface, curves)
        self.alpha = tuple(curves[:na])
        self.beta = tuple(curves[na:na + nb])
        self.gamma = tuple(curves[na + nb:])
        self.declared_type = declared_type
        self.aux = dict(aux or {})

    def family(self, role):
        return {"alpha": self.alpha, "beta": self.beta, "gamma": self.gamma}[role]

    def all_curves(self):
        return list(self.alpha) + list(self.beta) + list(self.gamma)

    def validate(self):
        """Necessary conditions: curve counts, internal disjointness, and
        the page condition (each family surgers the surface to the page)."""
        t = self.declared_type
        if t is None:
            raise ValidationError("relative diagram needs a declared type")
        if (self.surface.genus, self.surface.boundary_count) != (t.g, t.b):
            raise ValidationError("surface does not match declared type")
        want = t.g - t.p
        page = Surface(t.p, t.b)
        for role in ROLES:
            fam = list(self.family(role))
            if len(fam) != want:
                raise ValidationError(
                    "%s family has %d curves, expected %d" % (role, len(fam), want))
            for i in range(len(fam)):
                for j in range(i + 1, len(fam)):
                    if kernel.geometric_intersection(self.surface, fam[i], fam[j]):
                        raise ValidationError(
                            "%s family not internally disjoint" % role)
            comps = kernel.surger_along(self.surface, fam)
            if comps != [page]:
                raise ValidationError(
                    "%s family surgers to %s, not the page %s"
                    % (role, comps, page))
        return t


@dataclass
class ArcedDiagram:
    """A relative diagram with the three arc families of the doubling
    construction: arcs_a cut the alpha-surgered surface to a disk, arcs_b
    avoid beta, arcs_c avoid gamma."""
    diagram: RelativeTrisectionDiagram
    arcs_a: tuple
    arcs_b: tuple
    arcs_c: tuple

    def arcs(self, name):
        return {"a": self.arcs_a, "b": self.arcs_b, "c": self.arcs_c}[name]

    def validate(self):
        rd = self.diagram
        t = rd.validate()
        ell = t.boundary_rank
        for name, against in (("a", "alpha"), ("b", "beta"), ("c", "gamma")):
            arcs = list(self.arcs(name))
            if len(arcs) != ell:
                raise ValidationError(
                    "arc family %s has %d arcs, expected %d" % (name, len(arcs), ell))
            fam = rd.family(against)
            for arc in arcs:
                for cv in fam:
                    if kernel.geometric_intersection(rd.surface, arc, cv):
                        raise ValidationError(
                            "arc family %s meets the %s curves" % (name, against))
            for i in range(len(arcs)):
                for j in range(i + 1, len(arcs)):
                    if kernel.geometric_intersection(rd.surface, arcs[i], arcs[j]):
                        raise ValidationError(
                            "arc family %s not internally disjoint" % name)
        if not check_cut_to_disk(rd, self.arcs_a):
            raise ValidationError("arcs a do not cut the alpha page to a disk")
        return t


# ----------------------------------------------------------------------

def check_cut_to_disk(rd: RelativeTrisectionDiagram, arcs) -> bool:
    """Do the arcs cut the alpha-surgered surface to a single disk?"""
    surface = rd.surface
    alpha = list(rd.alpha)
    arcs = list(arcs)
    objs = {}
    for i, c in enumerate(alpha):
        objs[("al", i)] = c
    for i, a in enumerate(arcs):
        objs[("arc", i)] = a
    for a in arcs:
        for c in alpha:
            if kernel.geometric_intersection(surface, a, c):
                raise ValidationError("arcs must avoid the alpha curves")
    sep = kernel.separate_positions(list(objs.values()))
    objs = dict(zip(objs.keys(), sep))
    ex = explode(surface.complex, objs, list(objs.keys()))
    comps = ex.complex.components()
    if len(comps) != 1:
        return False
    sub = ex.complex.restrict(comps[0])
    chi = sub.euler_characteristic()
    # cap the two sides of every alpha curve
    n_alpha_circles = 0
    for circle in sub.boundary_circles():
        owners = set()
        for s in circle:
            label = sub.polys[s.poly][s.index][0]
            kind = ex.seg_kind.get(label)
            if kind and kind[0] == "wall":
                owners.add(kind[1][0] if isinstance(kind[1], tuple) else kind[1])
            else:
                owners.add("edge")
        if owners == {"al"}:
            n_alpha_circles += 1
    return chi + n_alpha_circles == 1


# ----------------------------------------------------------------------
# arc generation

def _boundary_arc_candidates(surface, avoid_curves, pool_objs, max_paths=40):
    """Embedded arcs between boundary edges avoiding the given curves.

    Explodes along the avoided curves and walks the face graph from
    boundary segment to boundary segment; every discovered face path gives
    one candidate arc.
    """
    cx = surface.complex
    objs = {i: c for i, c in enumerate(avoid_curves)}
    if objs:
        ex = explode(cx, objs, list(objs))
        ecx = ex.complex
        seg_kind = ex.seg_kind
    else:
        ecx = cx
        seg_kind = {}
    # faces touching each boundary edge segment
    free_segs = {}
    for p, word in enumerate(ecx.polys):
        for l, s in word:
            if len(ecx.instances(l)) == 1:
                kind = seg_kind.get(l)
                if kind is None:
                    orig, lo, hi = l, F(0), F(1)
                elif kind[0] == "edge":
                    _, orig, lo, hi = kind
                else:
                    continue  # a curve-copy side, not surface boundary
                free_segs.setdefault(p, []).append((l, orig, lo, hi))
    adj = {}
    for label in ecx.glued_labels():
        sa, sb = ecx.instances(label)
        adj.setdefault(sa.poly, []).append((label, sb.poly))
        adj.setdefault(sb.poly, []).append((label, sa.poly))

    from collections import deque
    candidates = []
    starts = sorted(free_segs)
    for p0 in starts:
        prev = {p0: None}
        dq = deque([p0])
        while dq:
            p = dq.popleft()
            if p in free_segs:
                candidates.append((p0, p, prev))
            for label, q in sorted(adj.get(p, [])):
                if q not in prev:
                    prev[q] = (p, label)
                    dq.append(q)
    out = []
    seen_pairs = set()
    for p0, p1, prev in candidates:
        if len(out) >= max_paths:
            break
        # reconstruct label path p0 -> p1
        labels = []
        q = p1
        while prev[q] is not None:
            q, label = prev[q]
            labels.append(label)
        labels.reverse()
        key = (p0, p1, tuple(labels))
        if key in seen_pairs:
            continue
        seen_pairs.add(key)
        seq = [p1]
        q = p1
        while prev[q] is not None:
            q, _ = prev[q]
            seq.append(q)
        seq.reverse()
        for (s_l, s_orig, s_lo, s_hi) in sorted(free_segs[p0]):
            for (e_l, e_orig, e_lo, e_hi) in sorted(free_segs[p1]):
                if len(out) >= max_paths:
                    break
                if p0 == p1 and (s_l, s_orig) == (e_l, e_orig) and not labels:
                    continue  # both ends on one segment with no travel
                pool = PositionPool(pool_objs)
                crossings = []
                ok = True
                for step, label in enumerate(labels):
                    kind = seg_kind.get(label)
                    if kind is None:
                        orig, lo, hi = label, F(0), F(1)
                    elif kind[0] == "edge":
                        _, orig, lo, hi = kind
                    else:
                        ok = False
                        break
                    from_face = seq[step]
                    plus = ecx.plus_instance(label)
                    direction = 1 if plus.poly == from_face else -1
                    t = pool.fresh_between(orig, lo, hi)
                    crossings.append(Crossing(orig, direction, t))
                if not ok:
                    continue
                start = EndPoint(s_orig, pool.fresh_between(s_orig, s_lo, s_hi))
                end = EndPoint(e_orig, pool.fresh_between(e_orig, e_lo, e_hi))
                try:
                    arc = Arc(start, crossings, end)
                    validate_embedded(cx, [arc])
                except Exception:
                    continue
                out.append(arc)
    return out


def generate_a_arcs(rd: RelativeTrisectionDiagram, budget=200):
    """Greedy search for arcs cutting the alpha page to a disk."""
    t = rd.declared_type
    ell = t.boundary_rank
    chosen = []
    for _ in range(ell):
        avoid = list(rd.alpha) + chosen
        cands = _boundary_arc_candidates(rd.surface, avoid,
                                         rd.all_curves() + chosen)
        progressed = False
        for cand in cands:
            trial = chosen + [cand]
            try:
                validate_embedded(rd.surface.complex,
                                  kernel.separate_positions(
                                      list(rd.alpha) + trial))
            except Exception:
                continue
            # progress: chi of the alpha+arcs cut must rise by one per arc
            if _cut_chi_gain(rd, trial) == len(trial):
                chosen = trial
                progressed = True
                break
        if not progressed:
            raise ArcSearchExhausted("no arc extends the disk-cutting family")
    if not check_cut_to_disk(rd, chosen):
        raise ArcSearchExhausted("arc family does not cut the page to a disk")
    return chosen


def _cut_chi_gain(rd, arcs):
    surface = rd.surface
    objs = {}
    for i, c in enumerate(rd.alpha):
        objs[("al", i)] = c
    for i, a in enumerate(arcs):
        objs[("arc", i)] = a
    sep = kernel.separate_positions(list(objs.values()))
    objs = dict(zip(objs.keys(), sep))
    ex = explode(surface.complex, objs, list(objs.keys()))
    comps = ex.complex.components()
    if len(comps) != 1:
        return -1
    sub = ex.complex.restrict(comps[0])
    chi = sub.euler_characteristic()
    n_alpha = 0
    for circle in sub.boundary_circles():
        owners = set()
        for s in circle:
            label = sub.polys[s.poly][s.index][0]
            kind = ex.seg_kind.get(label)
            if kind and kind[0] == "wall":
                owners.add(kind[1][0] if isinstance(kind[1], tuple) else kind[1])
            else:
                owners.add("edge")
        if owners == {"al"}:
            n_alpha += 1
    page_chi = 2 - 2 * rd.declared_type.p - rd.declared_type.b
    return (chi + n_alpha) - page_chi


def derive_arcs(rd, base_arcs, over_family, avoid_family, budget=300):
    """Parallel copies of ``base_arcs`` slid over ``over_family`` until they
    avoid ``avoid_family`` (best-first, bounded).

    Slides are tried over both orientations of every curve in the family,
    and the initial push-off side of the copy is part of the search.
    """
    from collections import deque
    surface = rd.surface
    avoid = list(avoid_family)
    overs = list(over_family) + [c.reversed() for c in over_family]

    out = []
    for base in base_arcs:
        def score(arc):
            return sum(kernel.geometric_intersection(surface, arc, c)
                       for c in avoid)

        starts = []
        for side in (1, -1):
            pool = PositionPool(rd.all_curves() + list(base_arcs) + out)
            starts.append(kernel.shifted_copy(base, pool, side))
        found = None
        seen = set()
        dq = deque(sorted((score(s), si, s, 0) for si, s in enumerate(starts)))
        steps = 0
        while dq and steps < budget:
            sc, _tie, arc, depth = dq.popleft()
            steps += 1
            if sc == 0:
                found = arc
                break
            if depth >= 5:
                continue
            for oi, oc in enumerate(overs):
                try:
                    slid = kernel.band_slide(
                        surface, arc, oc,
                        context=rd.all_curves() + out + list(base_arcs))
                except Exception:
                    continue
                key = tuple((c.label, c.direction) for c in slid.crossings)
                if key in seen:
                    continue
                seen.add(key)
                dq.append((score(slid), len(seen), slid, depth + 1))
            dq = deque(sorted(dq))
        if found is None:
            raise ArcSearchExhausted(
                "slide search exhausted while clearing an arc")
        out.append(found)
    return out


def generate_arcs(rd: RelativeTrisectionDiagram, budget=200) -> ArcedDiagram:
    """The three arc families of the doubling construction."""
    arcs_a = generate_a_arcs(rd, budget)
    arcs_b = derive_arcs(rd, arcs_a, rd.alpha, rd.beta, budget)
    arcs_c = derive_arcs(rd, arcs_b, rd.beta, rd.gamma, budget)
    ad = ArcedDiagram(rd, tuple(arcs_a), tuple(arcs_b), tuple(arcs_c))
    ad.validate()
    return ad


# ----------------------------------------------------------------------
# mirroring and doubling

def _mirror_label(label):
    return label + "~"


def mirror_word(surface: Surface):
    """The mirror polygon word sharing the boundary-edge labels."""
    word = standard_word(surface.genus, surface.boundary_count)
    free = {pocket_labels(j + 1)[1] for j in range(surface.boundary_count)}
    out = []
    for (l, s) in reversed(word):
        nl = l if l in free else _mirror_label(l)
        out.append((nl, -s))
    return out


def mirror_curve(obj, rename=True):
    """Mirror image of a curve or arc (same labels unless renamed)."""
    def conv(c):
        label = _mirror_label(c.label) if rename else c.label
        return Crossing(label, -c.direction, c.t)

    if isinstance(obj, Curve):
        return Curve([conv(c) for c in obj.crossings])
    return Arc(EndPoint(obj.start.label, obj.start.t),
               [conv(c) for c in obj.crossings],
               EndPoint(obj.end.label, obj.end.t))


def joined_double_curve(arc: Arc) -> Curve:
    """Close an arc with its mirror image across the gluing circles."""
    word = list(arc.crossings)
    word.append(Crossing(arc.end.label, 1, arc.end.t))
    for c in reversed(arc.crossings):
        word.append(Crossing(_mirror_label(c.label), c.direction, c.t))
    word.append(Crossing(arc.start.label, -1, arc.start.t))
    return Curve(word)


def double(ad: ArcedDiagram) -> TrisectionDiagram:
    """The closed diagram of the double: families alpha* = alpha + mirrored
    alpha + closed-up a arcs, and likewise for beta*, gamma*."""
    rd = ad.diagram
    t = rd.validate()
    surface = rd.surface
    polys = [standard_word(surface.genus, surface.boundary_count),
             mirror_word(surface)]
    tracked = {}
    order = []
    for role, arcname in zip(ROLES, ARC_FAMILIES):
        for i, c in enumerate(rd.family(role)):
            tracked[(role, "orig", i)] = c
            order.append((role, "orig", i))
        for i, c in enumerate(rd.family(role)):
            tracked[(role, "mirr", i)] = mirror_curve(c)
            order.append((role, "mirr", i))
        for i, a in enumerate(ad.arcs(arcname)):
            tracked[(role, "join", i)] = joined_double_curve(a)
            order.append((role, "join", i))
    from .rebuild import Complex
    base = Complex(polys, tracked)
    base.validate()
    surf, words = standardize(base.polys, base.words)
    expected = t.doubled()
    if surf.genus != expected.g:
        raise ValidationError("double has genus %d, expected %d"
                              % (surf.genus, expected.g))
    fams = {r: [] for r in ROLES}
    for key in order:
        fams[key[0]].append(words[key])
    out = TrisectionDiagram(surf, fams["alpha"], fams["beta"], fams["gamma"],
                            declared_type=expected)
    return out
