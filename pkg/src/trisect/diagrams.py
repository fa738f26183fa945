"""Trisection and relative trisection diagrams as validated values."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from fractions import Fraction

from . import kernel
from .arrangement import Arrangement, explode
from .canonical import canonical_key
from .curves import Arc, Crossing, Curve, validate_embedded
from .errors import IllegalDestabilizationError, ValidationError
from .invariants import count_k, h1_closed_4manifold
from .polygon import Surface, handle_labels
from .rebuild import Complex, standardize

ROLES = ("alpha", "beta", "gamma")

F = Fraction


@dataclass(frozen=True)
class TrisectionType:
    g: int
    k1: int
    k2: int
    k3: int

    def __post_init__(self):
        if self.g < 0 or min(self.k1, self.k2, self.k3) < 0:
            raise ValidationError("type entries must be non-negative")
        if max(self.k1, self.k2, self.k3) > self.g:
            raise ValidationError("k_i cannot exceed the genus")

    @property
    def ks(self):
        return (self.k1, self.k2, self.k3)

    def euler_characteristic(self):
        return 2 + self.g - self.k1 - self.k2 - self.k3

    def stabilized(self, variant):
        ks = list(self.ks)
        ks[variant - 1] += 1
        return TrisectionType(self.g + 1, *ks)

    def destabilized(self, variant):
        ks = list(self.ks)
        ks[variant - 1] -= 1
        return TrisectionType(self.g - 1, *ks)

    def __str__(self):
        return "(%d;%d,%d,%d)" % (self.g, self.k1, self.k2, self.k3)


@dataclass(frozen=True)
class RelativeType:
    g: int
    k1: int
    k2: int
    k3: int
    p: int
    b: int

    def __post_init__(self):
        if self.b < 1:
            raise ValidationError("relative type needs b >= 1")
        if self.p < 0:
            raise ValidationError("page genus must be non-negative")
        if min(self.k1, self.k2, self.k3) < self.boundary_rank:
            raise ValidationError("k_i >= 2p+b-1 is required")

    @property
    def boundary_rank(self):
        return 2 * self.p + self.b - 1

    @property
    def ks(self):
        return (self.k1, self.k2, self.k3)

    def doubled(self):
        ell = self.boundary_rank
        return TrisectionType(2 * self.g + self.b - 1,
                              2 * self.k1 - ell,
                              2 * self.k2 - ell,
                              2 * self.k3 - ell)

    def __str__(self):
        return "(%d,%d,%d,%d;%d,%d)" % (self.g, self.k1, self.k2, self.k3,
                                        self.p, self.b)


def euler_characteristic(t: TrisectionType) -> int:
    return t.euler_characteristic()


# ----------------------------------------------------------------------

@dataclass
class CutSystemReport:
    ok: bool
    reason: str = ""


def validate_cut_system(surface: Surface, family) -> CutSystemReport:
    """Cut system check: g disjoint curves surgering to one sphere."""
    g = surface.genus
    family = list(family)
    if len(family) != g:
        return CutSystemReport(False, "expected %d curves, got %d" % (g, len(family)))
    if g == 0:
        return CutSystemReport(True)
    try:
        validate_embedded(surface.complex, kernel.separate_positions(family))
    except Exception as e:
        return CutSystemReport(False, "not embedded: %s" % e)
    for i in range(g):
        for j in range(i + 1, g):
            n = kernel.geometric_intersection(surface, family[i], family[j])
            if n:
                return CutSystemReport(
                    False, "curves %d,%d intersect %d times" % (i, j, n))
    comps = kernel.surger_along(surface, family)
    if comps != [Surface(0, 0)]:
        return CutSystemReport(
            False, "surgery yields %s, not one sphere" % (comps,))
    return CutSystemReport(True)


class TrisectionDiagram:
    """A closed surface with three cut systems, kept in reduced position."""

    def __init__(self, surface: Surface, alpha, beta, gamma,
                 declared_type=None, reduce=True):
        if not surface.is_closed():
            raise ValidationError("trisection diagrams live on closed surfaces")
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

    def family(self, role):
        return {"alpha": self.alpha, "beta": self.beta, "gamma": self.gamma}[role]

    def families(self):
        return {role: self.family(role) for role in ROLES}

    def all_curves(self):
        return list(self.alpha) + list(self.beta) + list(self.gamma)

    def replace_family(self, role, curves):
        fams = {r: list(self.family(r)) for r in ROLES}
        fams[role] = list(curves)
        return TrisectionDiagram(self.surface, fams["alpha"], fams["beta"],
                                 fams["gamma"], self.declared_type)

    # -- validation and invariants ------------------------------------

    def validate(self):
        for role in ROLES:
            rep = validate_cut_system(self.surface, self.family(role))
            if not rep.ok:
                raise ValidationError("%s family: %s" % (role, rep.reason))
        t = self.compute_type()
        if self.declared_type is not None and t != self.declared_type:
            raise ValidationError(
                "computed type %s does not match declared %s"
                % (t, self.declared_type))
        return t

    def compute_type(self):
        """Type from pair homology (necessary conditions only)."""
        k1 = count_k(self.surface, self.alpha, self.beta)
        k2 = count_k(self.surface, self.beta, self.gamma)
        k3 = count_k(self.surface, self.gamma, self.alpha)
        return TrisectionType(self.surface.genus, k1, k2, k3)

    def h1_4manifold(self):
        return h1_closed_4manifold(self.surface,
                                   [self.alpha, self.beta, self.gamma])

    def intersection_counts(self):
        """Drawn pairwise crossing matrix over all curves (reduced system)."""
        curves = self.all_curves()
        arr = Arrangement(self.surface.complex,
                          {i: c for i, c in enumerate(curves)})
        n = len(curves)
        M = [[0] * n for _ in range(n)]
        for node, (a, b) in arr.crossing_nodes.items():
            i, j = a.owner[0], b.owner[0]
            M[i][j] += 1
            M[j][i] += 1
        return M

    def canonical_hash(self):
        keys = []
        for role in ROLES:
            for c in self.family(role):
                keys.append((role, canonical_key(self.surface, c)))
        keys.sort(key=repr)
        blob = repr((self.surface.genus, keys)).encode()
        return hashlib.sha256(blob).hexdigest()

    def __repr__(self):
        return "TrisectionDiagram(genus=%d, %d+%d+%d curves)" % (
            self.surface.genus, len(self.alpha), len(self.beta), len(self.gamma))


# ----------------------------------------------------------------------
# stabilization

def _parallel_pair_roles(variant):
    """The two roles made parallel by stabilization of this variant."""
    return {1: ("alpha", "beta"), 2: ("beta", "gamma"),
            3: ("gamma", "alpha")}[variant]


def stabilize(d: TrisectionDiagram, variant: int) -> TrisectionDiagram:
    """Connected sum with the genus-1 diagram whose ``variant``-th pair is
    parallel; the sum happens at the polygon corner, away from all curves."""
    if variant not in (1, 2, 3):
        raise ValidationError("variant must be 1, 2 or 3")
    g = self_g = d.surface.genus
    new_surface = Surface(g + 1, 0)
    a_lab, b_lab = handle_labels(g + 1)
    par1 = Curve([Crossing(a_lab, 1, F(3, 8))])
    par2 = Curve([Crossing(a_lab, 1, F(5, 8))])
    trans = Curve([Crossing(b_lab, 1, F(1, 2))])
    role_pair = _parallel_pair_roles(variant)
    addition = {}
    for role in ROLES:
        if role == role_pair[0]:
            addition[role] = par1
        elif role == role_pair[1]:
            addition[role] = par2
        else:
            addition[role] = trans
    fams = {role: list(d.family(role)) + [addition[role]] for role in ROLES}
    new_type = None
    if d.declared_type is not None:
        new_type = d.declared_type.stabilized(variant)
    return TrisectionDiagram(new_surface, fams["alpha"], fams["beta"],
                             fams["gamma"], new_type, reduce=False)


# ----------------------------------------------------------------------
# destabilization

@dataclass(frozen=True)
class DestabSite:
    """A certified destabilization site.

    ``indices`` are the positions of the triple in (alpha, beta, gamma);
    ``variant`` names which k drops; ``parallel_roles`` the two roles whose
    curves are parallel.
    """
    indices: tuple
    variant: int

    def __str__(self):
        return "destab(a%d b%d g%d; variant %d)" % (
            self.indices[0] + 1, self.indices[1] + 1, self.indices[2] + 1,
            self.variant)


def detect_destabilizations(d: TrisectionDiagram):
    """All triples (one curve per family) spanning a stabilization summand.

    Criterion: two of the three are parallel, the third meets each exactly
    once, and every other curve of the diagram is disjoint from all three
    (hence from a neighborhood of their union).
    """
    curves = d.all_curves()
    na, nb = len(d.alpha), len(d.beta)
    M = d.intersection_counts()

    def gid(role, i):
        base = {"alpha": 0, "beta": na, "gamma": na + nb}[role]
        return base + i

    sites = []
    for ia in range(len(d.alpha)):
        for ib in range(len(d.beta)):
            for ig in range(len(d.gamma)):
                trip = {"alpha": gid("alpha", ia), "beta": gid("beta", ib),
                        "gamma": gid("gamma", ig)}
                for variant in (1, 2, 3):
                    r1, r2 = _parallel_pair_roles(variant)
                    r3 = next(r for r in ROLES if r not in (r1, r2))
                    if M[trip[r1]][trip[r2]] != 0:
                        continue
                    if M[trip[r3]][trip[r1]] != 1 or M[trip[r3]][trip[r2]] != 1:
                        continue
                    others_clear = True
                    for w in range(len(curves)):
                        if w in trip.values():
                            continue
                        if any(M[w][trip[r]] for r in ROLES):
                            others_clear = False
                            break
                    if not others_clear:
                        continue
                    if not kernel.is_isotopic(d.surface, curves[trip[r1]],
                                              curves[trip[r2]]):
                        continue
                    sites.append(DestabSite((ia, ib, ig), variant))
    return sites


def _standard_handle_site(d, site):
    """Fast path: the site is exactly the standard pattern on the last
    handle and nothing else touches that handle."""
    g = d.surface.genus
    a_lab, b_lab = handle_labels(g)
    ia, ib, ig = site.indices
    trip = {"alpha": d.alpha[ia], "beta": d.beta[ib], "gamma": d.gamma[ig]}
    r1, r2 = _parallel_pair_roles(site.variant)
    r3 = next(r for r in ROLES if r not in (r1, r2))
    for role in (r1, r2):
        c = trip[role]
        if len(c.crossings) != 1 or c.crossings[0].label != a_lab:
            return False
    c = trip[r3]
    if len(c.crossings) != 1 or c.crossings[0].label != b_lab:
        return False
    for other in d.all_curves():
        if other in trip.values():
            continue
        if any(x.label in (a_lab, b_lab) for x in other.crossings):
            return False
    return True


def destabilize(d: TrisectionDiagram, site: DestabSite) -> TrisectionDiagram:
    """Remove the certified summand: surger along one of the parallel pair
    and carry every other curve across the compression."""
    if site not in detect_destabilizations(d):
        raise IllegalDestabilizationError("site %s is not certified" % (site,))
    ia, ib, ig = site.indices
    removed = {("alpha", ia), ("beta", ib), ("gamma", ig)}
    r1, r2 = _parallel_pair_roles(site.variant)
    cut_curve = d.family(r1)[{"alpha": ia, "beta": ib, "gamma": ig}[r1]]

    keep = {}
    order = []
    for role in ROLES:
        for i, c in enumerate(d.family(role)):
            if (role, i) in removed:
                continue
            keep[(role, i)] = c
            order.append((role, i))

    new_type = None
    if d.declared_type is not None:
        new_type = d.declared_type.destabilized(site.variant)

    if _standard_handle_site(d, site):
        new_surface = Surface(d.surface.genus - 1, 0)
        fams = {r: [] for r in ROLES}
        for (role, i) in order:
            fams[role].append(keep[(role, i)])
        return TrisectionDiagram(new_surface, fams["alpha"], fams["beta"],
                                 fams["gamma"], new_type, reduce=False)

    objects = {"cut": cut_curve}
    tracked_ids = []
    for key in order:
        objects[key] = keep[key]
        tracked_ids.append(key)
    ex = explode(d.surface.complex, objects, ["cut"], tracked_ids=tracked_ids)

    # cap both copies of the cut curve
    polys = [list(w) for w in ex.complex.polys]
    for circle in ex.complex.boundary_circles():
        labels = [ex.complex.polys[s.poly][s.index] for s in circle]
        kinds = [ex.seg_kind.get(l) for l, s in labels]
        if not all(k and k[0] == "wall" for k in kinds):
            raise ValidationError("unexpected boundary while destabilizing")
        cap = [(l, -s) for (l, s) in reversed(labels)]
        polys.append(cap)

    surf, words = standardize(polys, ex.tracked)
    if surf.genus != d.surface.genus - 1:
        raise ValidationError("destabilization changed genus incorrectly")
    fams = {r: [] for r in ROLES}
    for key in order:
        fams[key[0]].append(words[key])
    return TrisectionDiagram(surf, fams["alpha"], fams["beta"], fams["gamma"],
                             new_type)


# ----------------------------------------------------------------------
# feasibility arithmetic for doubling

def realizable_double_types(target: TrisectionType, genus_candidates):
    """Exact solutions (g, b, p, (k1,k2,k3)) of the doubling arithmetic.

    Solves 2g+b-1 = G, 2k_i - l = K_i, l = 2p+b-1 under k_i >= l, b >= 1,
    p >= 0, restricted to the candidate genera.
    """
    G = target.g
    Ks = target.ks
    out = []
    for g in sorted(set(genus_candidates)):
        b = G + 1 - 2 * g
        if b < 1:
            continue
        p = 0
        while True:
            ell = 2 * p + b - 1
            if ell > min(Ks) and p > 0:
                break
            ks = []
            ok = True
            for K in Ks:
                if (K + ell) % 2:
                    ok = False
                    break
                k = (K + ell) // 2
                if k < ell:
                    ok = False
                    break
                ks.append(k)
            if ok:
                out.append((g, b, p, tuple(ks)))
            p += 1
            if 2 * p + b - 1 > max(Ks) + 1:
                break
    return out
