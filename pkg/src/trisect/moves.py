"""Move scripts: parsing, application, and certified verification.

The script grammar is line oriented (``#`` starts a comment):

    stab <1|2|3>
    destab <ai> <bi> <gi>
    slide <alpha|beta|gamma> <i> over <j> along <path>
    twist along <path-closed> power <int|n-expr>
    relabel <family> <perm>
    canon

``<path>`` is ``auto`` or ``m:<chord> [<tok> ...] o:<chord>`` with tokens
like ``b2-@3/8``; ``<path-closed>`` is ``@<aux-name>`` (a named auxiliary
curve of the diagram file) or an inline crossing word.  Twist powers may be
symbolic in n (``n``, ``-n``, ``2n+1``), instantiated at verification time.
"""

from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass, field
from fractions import Fraction

from . import kernel
from .canonical import canonical_key
from .curves import Crossing, Curve
from .diagrams import (ROLES, DestabSite, TrisectionDiagram, TrisectionType,
                       detect_destabilizations, destabilize, stabilize)
from .errors import IllegalDestabilizationError, IllegalSlideError, ValidationError


class ScriptError(ValueError):
    """Parse failure, with line information."""

    def __init__(self, message, line_no=None, column=None):
        self.line_no = line_no
        self.column = column
        where = "" if line_no is None else " (line %d)" % line_no
        super().__init__(message + where)


class MoveError(ValueError):
    """A legal-looking move failed its semantic preconditions."""

    def __init__(self, message, step=None):
        self.step = step
        where = "" if step is None else " (step %d)" % step
        super().__init__(message + where)


# ----------------------------------------------------------------------
# move values

@dataclass(frozen=True)
class NExpr:
    """Integer-linear expression coeff*n + const."""
    coeff: int
    const: int

    def __call__(self, n):
        return self.coeff * n + self.const

    def __str__(self):
        if self.coeff == 0:
            return str(self.const)
        cn = {1: "n", -1: "-n"}.get(self.coeff, "%dn" % self.coeff)
        if self.const == 0:
            return cn
        return "%s%+d" % (cn, self.const)


_NEXPR = re.compile(r"^(?:(?P<cn>[+-]?\d*)n)?(?P<c>[+-]?\d+)?$")


def parse_nexpr(text):
    text = text.replace(" ", "")
    m = _NEXPR.match(text)
    if not m or (m.group("cn") is None and m.group("c") is None):
        raise ScriptError("bad power expression %r" % text)
    coeff = 0
    if m.group("cn") is not None:
        cn = m.group("cn")
        coeff = {"": 1, "+": 1, "-": -1}.get(cn, None)
        if coeff is None:
            coeff = int(cn)
    const = int(m.group("c")) if m.group("c") else 0
    return NExpr(coeff, const)


@dataclass(frozen=True)
class Stabilize:
    variant: int


@dataclass(frozen=True)
class Destabilize:
    ai: int
    bi: int
    gi: int


@dataclass(frozen=True)
class Slide:
    family: str
    mover: int
    over_family: str
    over: int
    path: object  # 'auto' or PathLiteral
    reverse_over: bool = False


@dataclass(frozen=True)
class PathLiteral:
    mover_chord: int
    tokens: tuple
    over_chord: int


@dataclass(frozen=True)
class Twist:
    along: object  # ('aux', name) or tuple of Crossing
    power: NExpr


@dataclass(frozen=True)
class Relabel:
    family: str
    perm: tuple


@dataclass(frozen=True)
class Canon:
    pass


@dataclass
class MoveScript:
    source: str
    expect: str
    moves: list


# ----------------------------------------------------------------------
# parsing

TOKEN = re.compile(r"^(?P<label>[A-Za-z][A-Za-z0-9_.~]*)(?P<dir>[+-])@(?P<num>\d+)/(?P<den>\d+)$")


def parse_token(text, line_no=None):
    m = TOKEN.match(text)
    if not m:
        raise ScriptError("bad crossing token %r" % text, line_no)
    t = Fraction(int(m.group("num")), int(m.group("den")))
    return Crossing(m.group("label"), 1 if m.group("dir") == "+" else -1, t)


def parse_script(text):
    """Parse the move-script format; raises ScriptError on the first bad
    line."""
    source = ""
    expect = "self"
    moves = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kw = parts[0]
        if kw == "source":
            source = " ".join(parts[1:])
        elif kw == "expect":
            if len(parts) != 2:
                raise ScriptError("expect needs one descriptor", line_no)
            expect = parts[1]
        elif kw == "stab":
            if len(parts) != 2 or parts[1] not in ("1", "2", "3"):
                raise ScriptError("stab needs a variant 1, 2 or 3", line_no)
            moves.append(Stabilize(int(parts[1])))
        elif kw == "destab":
            if len(parts) != 4:
                raise ScriptError("destab needs three indices", line_no)
            try:
                ai, bi, gi = (int(p) for p in parts[1:])
            except ValueError:
                raise ScriptError("destab indices must be integers", line_no)
            moves.append(Destabilize(ai, bi, gi))
        elif kw == "slide":
            if len(parts) < 7 or parts[3] != "over":
                raise ScriptError(
                    "slide syntax: slide <family> <i> over [<family>] <j> "
                    "along <path>", line_no)
            family = parts[1]
            if family not in ROLES:
                raise ScriptError("unknown family %r" % family, line_no)
            if parts[4] in ROLES:
                over_family = parts[4]
                rest = parts[5:]
            else:
                over_family = family
                rest = parts[4:]
            if len(rest) < 3 or rest[1] != "along":
                raise ScriptError(
                    "slide syntax: slide <family> <i> over [<family>] <j> "
                    "along <path>", line_no)
            over_tok = rest[0]
            reverse_over = over_tok.endswith("r")
            if reverse_over:
                over_tok = over_tok[:-1]
            try:
                mover, over = int(parts[2]), int(over_tok)
            except ValueError:
                raise ScriptError("slide indices must be integers", line_no)
            pathspec = rest[2:]
            if pathspec == ["auto"]:
                path = "auto"
            else:
                if (len(pathspec) < 2 or not pathspec[0].startswith("m:")
                        or not pathspec[-1].startswith("o:")):
                    raise ScriptError(
                        "path literal: m:<chord> [tok ...] o:<chord>", line_no)
                try:
                    mc = int(pathspec[0][2:])
                    oc = int(pathspec[-1][2:])
                except ValueError:
                    raise ScriptError("bad chord anchors in path", line_no)
                toks = tuple(parse_token(t, line_no) for t in pathspec[1:-1])
                path = PathLiteral(mc, toks, oc)
            moves.append(Slide(family, mover, over_family, over, path,
                               reverse_over))
        elif kw == "twist":
            if len(parts) < 5 or parts[1] != "along" or "power" not in parts:
                raise ScriptError(
                    "twist syntax: twist along <path-closed> power <expr>",
                    line_no)
            pi = parts.index("power")
            spec = parts[2:pi]
            if len(spec) == 1 and spec[0].startswith("@"):
                along = ("aux", spec[0][1:])
            else:
                along = tuple(parse_token(t, line_no) for t in spec)
                if not along:
                    raise ScriptError("twist needs a closed path", line_no)
            power = parse_nexpr(" ".join(parts[pi + 1:]))
            moves.append(Twist(along, power))
        elif kw == "relabel":
            if len(parts) < 3 or parts[1] not in ROLES:
                raise ScriptError("relabel syntax: relabel <family> <perm>",
                                  line_no)
            try:
                perm = tuple(int(p) for p in parts[2:])
            except ValueError:
                raise ScriptError("relabel permutation must be integers", line_no)
            moves.append(Relabel(parts[1], perm))
        elif kw == "canon":
            moves.append(Canon())
        else:
            raise ScriptError("unknown move keyword %r" % kw, line_no)
    return MoveScript(source, expect, moves)


def emit_script(script: MoveScript):
    lines = []
    if script.source:
        lines.append("source %s" % script.source)
    if script.expect:
        lines.append("expect %s" % script.expect)
    for mv in script.moves:
        lines.append(format_move(mv))
    return "\n".join(lines) + "\n"


def format_move(mv):
    if isinstance(mv, Stabilize):
        return "stab %d" % mv.variant
    if isinstance(mv, Destabilize):
        return "destab %d %d %d" % (mv.ai, mv.bi, mv.gi)
    if isinstance(mv, Slide):
        if mv.path == "auto":
            path = "auto"
        else:
            toks = " ".join(_fmt_crossing(c) for c in mv.path.tokens)
            path = ("m:%d %s o:%d" % (mv.path.mover_chord, toks,
                                      mv.path.over_chord)).replace("  ", " ")
        return "slide %s %d over %s %d%s along %s" % (
            mv.family, mv.mover, mv.over_family, mv.over,
            "r" if mv.reverse_over else "", path)
    if isinstance(mv, Twist):
        if isinstance(mv.along, tuple) and mv.along and mv.along[0] == "aux":
            spec = "@%s" % mv.along[1]
        else:
            spec = " ".join(_fmt_crossing(c) for c in mv.along)
        return "twist along %s power %s" % (spec, mv.power)
    if isinstance(mv, Relabel):
        return "relabel %s %s" % (mv.family, " ".join(map(str, mv.perm)))
    if isinstance(mv, Canon):
        return "canon"
    raise TypeError(mv)


def _fmt_crossing(c):
    return "%s%s@%d/%d" % (c.label, "+" if c.direction == 1 else "-",
                           c.t.numerator, c.t.denominator)


# ----------------------------------------------------------------------
# application

class DiagramState:
    """A diagram plus named auxiliary curves carried through moves."""

    def __init__(self, diagram: TrisectionDiagram, aux=None):
        self.diagram = diagram
        self.aux = dict(aux or {})

    def clone(self):
        return DiagramState(self.diagram, dict(self.aux))


def _resolve_along(state, along):
    if isinstance(along, tuple) and along and along[0] == "aux":
        name = along[1]
        if name not in state.aux:
            raise MoveError("unknown auxiliary curve %r" % name)
        return state.aux[name]
    return Curve(list(along))


def apply_move(state: DiagramState, move, n=0, step=None):
    """Apply one move; returns (new state, facts dict)."""
    d = state.diagram
    facts = {"move": format_move(move)}
    if isinstance(move, Stabilize):
        new = stabilize(d, move.variant)
        facts["variant"] = move.variant
        return DiagramState(new, state.aux), facts
    if isinstance(move, Destabilize):
        site = DestabSite((move.ai - 1, move.bi - 1, move.gi - 1), 0)
        sites = detect_destabilizations(d)
        match = [s for s in sites if s.indices == site.indices]
        if not match:
            raise MoveError("triple %s is not a certified destabilization"
                            % (site.indices,), step)
        new = destabilize(d, match[0])
        facts["variant"] = match[0].variant
        facts["site"] = list(match[0].indices)
        # auxiliary curves survive only if disjoint from the removed summand
        new_aux = {}
        for name, c in state.aux.items():
            trip = [d.alpha[move.ai - 1], d.beta[move.bi - 1], d.gamma[move.gi - 1]]
            if all(kernel.geometric_intersection(d.surface, c, t) == 0 for t in trip):
                new_aux[name] = None  # carried below if possible
        # carrying aux curves across the compression is not needed by the
        # shipped scripts; they are dropped once consumed
        return DiagramState(new, {}), facts
    if isinstance(move, Slide):
        if move.over_family != move.family:
            raise MoveError("cross-family slide %s over %s is illegal"
                            % (move.family, move.over_family), step)
        fam = list(d.family(move.family))
        mi, oi = move.mover - 1, move.over - 1
        if not (0 <= mi < len(fam)) or not (0 <= oi < len(fam)):
            raise MoveError("slide index out of range", step)
        if mi == oi:
            raise MoveError("cannot slide a curve over itself", step)
        mover, over = fam[mi], fam[oi]
        if move.reverse_over:
            over = over.reversed()
        context = [c for k, c in enumerate(fam) if k not in (mi, oi)]
        for role in ROLES:
            if role != move.family:
                context.extend(d.family(role))
        context.extend(state.aux.values())
        path = None
        if move.path != "auto":
            path = kernel.SlidePath(move.path.mover_chord, move.path.tokens,
                                    move.path.over_chord)
        new_curve = kernel.band_slide(d.surface, mover, over, path=path,
                                      context=context)
        fam[mi] = new_curve
        new_d = d.replace_family(move.family, fam)
        # the family must stay pairwise disjoint
        for k, other in enumerate(new_d.family(move.family)):
            if k == mi:
                continue
            n_cross = kernel.geometric_intersection(new_d.surface,
                                                    new_d.family(move.family)[mi],
                                                    other)
            if n_cross:
                raise MoveError(
                    "slide breaks family disjointness (meets curve %d)" % (k + 1),
                    step)
        facts["family_disjoint"] = True
        return DiagramState(new_d, state.aux), facts
    if isinstance(move, Twist):
        along = _resolve_along(state, move.along)
        power = move.power(n)
        facts["power"] = power
        facts["power_expr"] = str(move.power)
        if power == 0:
            return state.clone(), facts
        fams = {}
        all_other = d.all_curves() + list(state.aux.values())
        for role in ROLES:
            fams[role] = [kernel.dehn_twist(d.surface, c, along, power,
                                            context=all_other)
                          for c in d.family(role)]
        new_aux = {name: kernel.dehn_twist(d.surface, c, along, power,
                                           context=all_other)
                   for name, c in state.aux.items()}
        new_d = TrisectionDiagram(d.surface, fams["alpha"], fams["beta"],
                                  fams["gamma"], d.declared_type)
        return DiagramState(new_d, new_aux), facts
    if isinstance(move, Relabel):
        fam = list(d.family(move.family))
        if sorted(move.perm) != list(range(1, len(fam) + 1)):
            raise MoveError("relabel %r is not a permutation of 1..%d"
                            % (move.perm, len(fam)), step)
        new_fam = [fam[i - 1] for i in move.perm]
        return DiagramState(d.replace_family(move.family, new_fam), state.aux), facts
    if isinstance(move, Canon):
        new_d = TrisectionDiagram(d.surface, d.alpha, d.beta, d.gamma,
                                  d.declared_type)
        return DiagramState(new_d, state.aux), facts
    raise MoveError("unsupported move %r" % (move,), step)


# ----------------------------------------------------------------------
# verification

@dataclass
class Certificate:
    source: str
    expect: str
    n: int
    steps: list = field(default_factory=list)
    endpoint: dict = field(default_factory=dict)
    final_type: str = ""
    final_hash: str = ""
    destab_count: int = 0
    certified: bool = False

    def to_json(self):
        return json.dumps({
            "schema": "trisect-certificate/1",
            "source": self.source,
            "expect": self.expect,
            "n": self.n,
            "steps": self.steps,
            "endpoint": self.endpoint,
            "final_type": self.final_type,
            "final_hash": self.final_hash,
            "destab_count": self.destab_count,
            "certified": self.certified,
        }, indent=2, sort_keys=True)

    def hash(self):
        return hashlib.sha256(self.to_json().encode()).hexdigest()

    def uniform_fingerprint(self):
        """Certificate digest with instantiated twist powers redacted.

        Two runs of the same symbolic script at different n agree on this
        fingerprint exactly when they differ only at twist instantiation.
        """
        steps = []
        for s in self.steps:
            s = dict(s)
            if "power" in s:
                s["power"] = "?"
            s.pop("type_after", None)
            steps.append(s)
        blob = json.dumps({"source": self.source, "steps": steps},
                          sort_keys=True)
        return hashlib.sha256(blob.encode()).hexdigest()


def verify_script(diagram, script: MoveScript, n=0, aux=None,
                  accept_genus2_standard=False, expect=None,
                  validate_endpoints=True):
    """Apply the script, checking legality at every step.

    Returns a Certificate; raises MoveError with the failing step index on
    the first illegal move, ValidationError on endpoint mismatch.
    """
    expect = expect or script.expect or "self"
    cert = Certificate(source=script.source, expect=expect, n=n)
    state = DiagramState(diagram, aux)
    if validate_endpoints:
        diagram.validate()
    for idx, move in enumerate(script.moves):
        try:
            state, facts = apply_move(state, move, n=n, step=idx)
        except (MoveError, IllegalSlideError, IllegalDestabilizationError,
                ValidationError) as e:
            raise MoveError("move %d (%s) illegal: %s"
                            % (idx, format_move(move), e), idx)
        t = state.diagram.compute_type()
        facts["type_after"] = str(t)
        cert.steps.append(facts)
        if isinstance(move, Destabilize):
            cert.destab_count += 1

    d = state.diagram
    endpoint = {"descriptor": expect}
    if expect == "self":
        endpoint["ok"] = True
    elif expect == "genus0":
        endpoint["ok"] = (d.surface.genus == 0 and not d.all_curves())
    elif expect == "standard":
        extra = 0
        while True:
            sites = detect_destabilizations(d)
            if not sites:
                break
            d = destabilize(d, sites[0])
            extra += 1
            cert.destab_count += 1
        endpoint["extra_destabs"] = extra
        if d.surface.genus == 0:
            endpoint["ok"] = True
        elif (accept_genus2_standard
              and d.compute_type() == TrisectionType(2, 1, 0, 1)):
            endpoint["ok"] = True
            endpoint["genus2_rule"] = "(2;1,0,1) accepted as standard"
        else:
            endpoint["ok"] = False
    elif expect.startswith("type:"):
        want = expect[5:]
        endpoint["ok"] = (str(d.compute_type()) == want)
    else:
        raise ValidationError("unknown endpoint descriptor %r" % expect)

    if validate_endpoints and d.surface.genus > 0:
        d.validate()
    cert.endpoint = endpoint
    cert.final_type = str(d.compute_type())
    cert.final_hash = d.canonical_hash()
    cert.certified = bool(endpoint.get("ok"))
    if not cert.certified:
        raise ValidationError(
            "endpoint %r not reached: final type %s" % (expect, cert.final_type))
    return cert, d
