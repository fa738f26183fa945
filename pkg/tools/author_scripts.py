"""Author standardization move scripts by targeted greedy search.

Strategy: while destabilization sites exist, take one (preferring the
lowest indices). When none exist, look for near-sites (a parallel pair
plus a third curve meeting each once) and try single slides that clear one
blocker; fall back to a wider slide scan.  Records every applied move in
script grammar.
"""
import sys
from fractions import Fraction as F

sys.path.insert(0, 'src')
from trisect import kernel
from trisect.diagrams import (ROLES, TrisectionDiagram,
                              detect_destabilizations, destabilize,
                              _parallel_pair_roles)
from trisect.moves import (DiagramState, Slide, Destabilize, apply_move,
                           format_move)


def log(*a):
    print(*a, flush=True)


def near_sites(d):
    """Triples (role indices) that would be sites except for blockers.

    Returns a list of (blockers, triple, variant): blockers maps global
    curve index -> crossings with the triple.
    """
    curves = d.all_curves()
    na, nb = len(d.alpha), len(d.beta)
    M = d.intersection_counts()

    def gid(role, i):
        base = {"alpha": 0, "beta": na, "gamma": na + nb}[role]
        return base + i

    out = []
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
                    if not kernel.is_isotopic(d.surface, curves[trip[r1]],
                                              curves[trip[r2]]):
                        continue
                    blockers = {}
                    for w in range(len(curves)):
                        if w in trip.values():
                            continue
                        n = sum(M[w][trip[r]] for r in ROLES)
                        if n:
                            blockers[w] = n
                    out.append((blockers, (ia, ib, ig), variant))
    out.sort(key=lambda item: (sum(item[0].values()), item[1]))
    return out


def role_of(d, w):
    na, nb = len(d.alpha), len(d.beta)
    if w < na:
        return "alpha", w
    if w < na + nb:
        return "beta", w - na
    return "gamma", w - na - nb


def candidate_slides(d, blockers, trip_ids):
    """Slides likely to clear one blocker crossing of the triple."""
    curves = d.all_curves()
    M = d.intersection_counts()
    cands = []
    for w in blockers:
        wrole, wi = role_of(d, w)
        fam = d.family(wrole)
        for vj in range(len(fam)):
            if vj == wi:
                continue
            v = (0 if wrole == "alpha" else len(d.alpha)
                 if wrole == "beta" else len(d.alpha) + len(d.beta)) + vj
            # sliding w over v changes w's crossings with the triple by
            # roughly v's crossings; propose when v touches the triple too
            cands.append((wrole, wi, vj, False))
            cands.append((wrole, wi, vj, True))
    return cands


def total_crossings(d2):
    M = d2.intersection_counts()
    return sum(sum(r) for r in M) // 2


def quality(d2):
    s2 = detect_destabilizations(d2)
    if s2:
        return (0, 0, 0)
    ns = near_sites(d2)
    if not ns:
        return (2, 10 ** 9, total_crossings(d2))
    return (1, sum(ns[0][0].values()), total_crossings(d2))


def all_slides(d):
    """Every single-slide move, targeted ones first."""
    targeted = []
    rest = []
    ns = near_sites(d)
    hot = set()
    for blockers, trip, variant in ns[:4]:
        for (wrole, wi, vj, rev) in candidate_slides(d, blockers, trip):
            hot.add((wrole, wi, vj, rev))
    for role in ROLES:
        fam = d.family(role)
        for i in range(len(fam)):
            for j in range(len(fam)):
                if i == j:
                    continue
                for rev in (False, True):
                    mv = Slide(role, i + 1, role, j + 1, "auto", rev)
                    if (role, i, j, rev) in hot:
                        targeted.append(mv)
                    else:
                        rest.append(mv)
    return targeted + rest


def try_slides(state, n=0, depth=3, beam=24, scan_cap=500):
    """A short slide sequence improving the quality, or None."""
    base_q = quality(state.diagram)
    frontier = [((), state)]
    seen = {state.diagram.canonical_hash()}
    for level in range(depth):
        scored = []
        for mvs, st in frontier:
            count = 0
            for mv in all_slides(st.diagram):
                count += 1
                if count > scan_cap:
                    break
                try:
                    st2, _ = apply_move(st, mv, n=n)
                except Exception:
                    continue
                h = st2.diagram.canonical_hash()
                if h in seen:
                    continue
                seen.add(h)
                q = quality(st2.diagram)
                if q < base_q:
                    return list(mvs) + [mv], st2
                scored.append((q, list(mvs) + [mv], st2))
        scored.sort(key=lambda item: item[0])
        frontier = [(mvs, st) for q, mvs, st in scored[:beam]]
        if not frontier:
            return None
    return None


def author_standardization(d, n=0, max_moves=200, log_prefix=""):
    """Greedy script: returns (list of move lines, final diagram)."""
    state = DiagramState(d)
    lines = []
    for step in range(max_moves):
        sites = detect_destabilizations(state.diagram)
        if sites:
            s = sites[0]
            mv = Destabilize(s.indices[0] + 1, s.indices[1] + 1, s.indices[2] + 1)
            state, _ = apply_move(state, mv, n=n)
            lines.append(format_move(mv))
            log(log_prefix, 'destab ->', state.diagram.compute_type())
            if state.diagram.surface.genus == 0:
                return lines, state.diagram
            continue
        found = try_slides(state, n=n)
        if found is None:
            log(log_prefix, 'STUCK at', state.diagram.compute_type())
            return None, state.diagram
        mvs, state = found
        for mv in mvs:
            lines.append(format_move(mv))
            log(log_prefix, format_move(mv))
    return None, state.diagram
