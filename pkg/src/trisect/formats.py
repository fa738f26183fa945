"""Diagram file format (.tri): parse and emit.

Line-oriented, ``#`` comments.  Sections:

    tri-format 1
    surface closed <genus>            | surface bordered <genus> <boundary>
    declared-type closed g k1 k2 k3   | declared-type relative g k1 k2 k3 p b
    curve <role> <name> : <tok> ...           # crossing word
    curve <role> <name> twist <aux>^n : ...   # base word, twisted at load
    aux <name> : <tok> ...                    # named auxiliary curve
    arc <a|b|c> <name> : <end-tok> | <tok> ... | <end-tok>
    meta <key> <value...>

Crossing tokens are ``label+@p/q`` / ``label-@p/q``; arc endpoint tokens
are ``label@p/q``.  Parsing then emitting a canonically produced file is
the identity.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from . import kernel
from .curves import Arc, Crossing, Curve, EndPoint
from .diagrams import ROLES, RelativeType, TrisectionDiagram, TrisectionType
from .doubling import ArcedDiagram, RelativeTrisectionDiagram
from .errors import ValidationError
from .polygon import Surface

F = Fraction


class FormatError(ValueError):
    def __init__(self, message, line_no=None):
        where = "" if line_no is None else " (line %d)" % line_no
        super().__init__(message + where)
        self.line_no = line_no


TOKEN = re.compile(
    r"^(?P<label>[A-Za-z][A-Za-z0-9_.~]*)(?P<dir>[+-])@(?P<num>\d+)/(?P<den>\d+)$")
END_TOKEN = re.compile(
    r"^(?P<label>[A-Za-z][A-Za-z0-9_.~]*)@(?P<num>\d+)/(?P<den>\d+)$")


def _parse_crossing(tok, line_no):
    m = TOKEN.match(tok)
    if not m:
        raise FormatError("bad crossing token %r" % tok, line_no)
    return Crossing(m.group("label"),
                    1 if m.group("dir") == "+" else -1,
                    F(int(m.group("num")), int(m.group("den"))))


def _parse_endpoint(tok, line_no):
    m = END_TOKEN.match(tok)
    if not m:
        raise FormatError("bad endpoint token %r" % tok, line_no)
    return EndPoint(m.group("label"), F(int(m.group("num")), int(m.group("den"))))


def _fmt_crossing(c):
    return "%s%s@%d/%d" % (c.label, "+" if c.direction == 1 else "-",
                           c.t.numerator, c.t.denominator)


def _fmt_endpoint(e):
    return "%s@%d/%d" % (e.label, e.t.numerator, e.t.denominator)


@dataclass
class DiagramFile:
    """Parsed .tri document, before symbolic twist instantiation."""
    surface: Surface = None
    declared: object = None          # TrisectionType or RelativeType
    curves: list = field(default_factory=list)  # (role, name, word, twist_spec)
    aux: dict = field(default_factory=dict)
    arcs: dict = field(default_factory=lambda: {"a": [], "b": [], "c": []})
    meta: dict = field(default_factory=dict)

    @property
    def is_relative(self):
        return isinstance(self.declared, RelativeType) or (
            self.surface is not None and not self.surface.is_closed())

    def instantiate(self, n=0):
        """Concrete diagram with symbolic twists applied at parameter n.

        Returns (TrisectionDiagram | RelativeTrisectionDiagram, aux_dict)
        or (ArcedDiagram, aux) when arcs are present.
        """
        fams = {r: [] for r in ROLES}
        context = [w for (_r, _n, w, _t) in self.curves] + list(self.aux.values())
        for role, name, word, twist_spec in self.curves:
            curve = word
            if twist_spec is not None:
                aux_name, coeff = twist_spec
                if aux_name not in self.aux:
                    raise FormatError("twist references unknown aux %r" % aux_name)
                power = coeff * n
                curve = kernel.dehn_twist(self.surface, curve,
                                          self.aux[aux_name], power,
                                          context=context)
            fams[role].append(curve)
        if self.is_relative:
            rd = RelativeTrisectionDiagram(self.surface, fams["alpha"],
                                           fams["beta"], fams["gamma"],
                                           self.declared, aux=self.aux)
            if any(self.arcs.values()):
                return ArcedDiagram(rd, tuple(self.arcs["a"]),
                                    tuple(self.arcs["b"]),
                                    tuple(self.arcs["c"])), dict(self.aux)
            return rd, dict(self.aux)
        d = TrisectionDiagram(self.surface, fams["alpha"], fams["beta"],
                              fams["gamma"], self.declared)
        return d, dict(self.aux)


_TWIST_SPEC = re.compile(r"^(?P<aux>[A-Za-z][A-Za-z0-9_]*)\^(?P<coef>[+-]?\d*)n$")


def parse_diagram(text) -> DiagramFile:
    doc = DiagramFile()
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kw = parts[0]
        if kw == "tri-format":
            if parts[1:] != ["1"]:
                raise FormatError("unsupported format version", line_no)
        elif kw == "surface":
            if len(parts) == 3 and parts[1] == "closed":
                doc.surface = Surface(int(parts[2]), 0)
            elif len(parts) == 4 and parts[1] == "bordered":
                doc.surface = Surface(int(parts[2]), int(parts[3]))
            else:
                raise FormatError("surface closed <g> | bordered <g> <b>", line_no)
        elif kw == "declared-type":
            if parts[1] == "closed" and len(parts) == 6:
                doc.declared = TrisectionType(*map(int, parts[2:6]))
            elif parts[1] == "relative" and len(parts) == 8:
                doc.declared = RelativeType(*map(int, parts[2:8]))
            else:
                raise FormatError("bad declared-type", line_no)
        elif kw == "curve":
            if ":" not in parts:
                raise FormatError("curve line needs ':'", line_no)
            ci = parts.index(":")
            head, toks = parts[1:ci], parts[ci + 1:]
            if len(head) < 2:
                raise FormatError("curve <role> <name> [twist <aux>^kn] :", line_no)
            role, name = head[0], head[1]
            if role not in ROLES:
                raise FormatError("unknown family %r" % role, line_no)
            twist_spec = None
            if len(head) == 4 and head[2] == "twist":
                m = _TWIST_SPEC.match(head[3])
                if not m:
                    raise FormatError("bad twist spec %r" % head[3], line_no)
                coef = m.group("coef")
                coeff = {"": 1, "+": 1, "-": -1}.get(coef)
                if coeff is None:
                    coeff = int(coef)
                twist_spec = (m.group("aux"), coeff)
            elif len(head) != 2:
                raise FormatError("bad curve head", line_no)
            word = Curve([_parse_crossing(t, line_no) for t in toks])
            doc.curves.append((role, name, word, twist_spec))
        elif kw == "aux":
            if len(parts) < 3 or parts[2] != ":":
                raise FormatError("aux <name> : <tok> ...", line_no)
            doc.aux[parts[1]] = Curve(
                [_parse_crossing(t, line_no) for t in parts[3:]])
        elif kw == "arc":
            if len(parts) < 5 or parts[3] != ":":
                raise FormatError("arc <a|b|c> <name> : <end> <tok>* <end>", line_no)
            famname = parts[1]
            if famname not in ("a", "b", "c"):
                raise FormatError("arc family must be a, b or c", line_no)
            toks = parts[4:]
            if len(toks) < 2:
                raise FormatError("arc needs two endpoints", line_no)
            start = _parse_endpoint(toks[0], line_no)
            end = _parse_endpoint(toks[-1], line_no)
            mids = [_parse_crossing(t, line_no) for t in toks[1:-1]]
            doc.arcs[famname].append(Arc(start, mids, end))
        elif kw == "meta":
            if len(parts) < 3:
                raise FormatError("meta <key> <value...>", line_no)
            doc.meta[parts[1]] = " ".join(parts[2:])
        else:
            raise FormatError("unknown keyword %r" % kw, line_no)
    if doc.surface is None:
        raise FormatError("missing surface line")
    return doc


def emit_diagram(doc: DiagramFile) -> str:
    lines = ["tri-format 1"]
    s = doc.surface
    if s.is_closed():
        lines.append("surface closed %d" % s.genus)
    else:
        lines.append("surface bordered %d %d" % (s.genus, s.boundary_count))
    if doc.declared is not None:
        t = doc.declared
        if isinstance(t, TrisectionType):
            lines.append("declared-type closed %d %d %d %d"
                         % (t.g, t.k1, t.k2, t.k3))
        else:
            lines.append("declared-type relative %d %d %d %d %d %d"
                         % (t.g, t.k1, t.k2, t.k3, t.p, t.b))
    for key in sorted(doc.meta):
        lines.append("meta %s %s" % (key, doc.meta[key]))
    for name in sorted(doc.aux):
        lines.append("aux %s : %s" % (
            name, " ".join(_fmt_crossing(c) for c in doc.aux[name])))
    for role, name, word, twist_spec in doc.curves:
        toks = " ".join(_fmt_crossing(c) for c in word.crossings)
        if twist_spec is None:
            lines.append("curve %s %s : %s" % (role, name, toks))
        else:
            aux_name, coeff = twist_spec
            cs = {1: "", -1: "-"}.get(coeff, str(coeff))
            lines.append("curve %s %s twist %s^%sn : %s"
                         % (role, name, aux_name, cs, toks))
    for famname in ("a", "b", "c"):
        for i, arc in enumerate(doc.arcs[famname]):
            toks = [_fmt_endpoint(arc.start)]
            toks += [_fmt_crossing(c) for c in arc.crossings]
            toks.append(_fmt_endpoint(arc.end))
            lines.append("arc %s %s%d : %s" % (famname, famname, i + 1,
                                               " ".join(toks)))
    return "\n".join(lines) + "\n"


def document_for(diagram, meta=None, names=None, aux=None,
                 twist_specs=None) -> DiagramFile:
    """Build a DiagramFile from diagram values."""
    doc = DiagramFile()
    doc.meta = dict(meta or {})
    doc.aux = dict(aux or {})
    twist_specs = twist_specs or {}
    if isinstance(diagram, ArcedDiagram):
        rd = diagram.diagram
        doc.surface = rd.surface
        doc.declared = rd.declared_type
        for famname in ("a", "b", "c"):
            doc.arcs[famname] = list(diagram.arcs(famname))
        src = rd
    elif isinstance(diagram, RelativeTrisectionDiagram):
        doc.surface = diagram.surface
        doc.declared = diagram.declared_type
        src = diagram
    else:
        doc.surface = diagram.surface
        doc.declared = diagram.declared_type
        src = diagram
    for role in ROLES:
        for i, c in enumerate(src.family(role)):
            name = "%s%d" % (role[0], i + 1)
            doc.curves.append((role, name, c, twist_specs.get((role, i))))
    return doc


def load_diagram_file(path):
    with open(path) as fh:
        return parse_diagram(fh.read())
