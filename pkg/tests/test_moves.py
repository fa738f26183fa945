from fractions import Fraction

import pytest

from trisect.diagrams import TrisectionDiagram, TrisectionType, stabilize
from trisect.errors import ValidationError
from trisect.moves import (Canon, Destabilize, MoveError, NExpr, ScriptError,
                           Slide, Stabilize, Twist, apply_move, DiagramState,
                           emit_script, parse_nexpr, parse_script,
                           verify_script)
from trisect.polygon import Surface

F = Fraction


def empty_diagram():
    return TrisectionDiagram(Surface(0, 0), [], [], [],
                             TrisectionType(0, 0, 0, 0))


class TestParser:
    def test_stab(self):
        s = parse_script("stab 1\n")
        assert s.moves == [Stabilize(1)]

    def test_slide(self):
        s = parse_script("slide beta 2 over beta 5 along auto\n")
        mv = s.moves[0]
        assert mv == Slide("beta", 2, "beta", 5, "auto")

    def test_cross_family_slide_parses_but_fails(self):
        # legality is semantic: the parser accepts, the verifier rejects
        s = parse_script("slide beta 2 over alpha 1 along auto\n")
        assert isinstance(s.moves[0], Slide)
        d = stabilize(stabilize(empty_diagram(), 1), 2)
        with pytest.raises(MoveError):
            verify_script(d, parse_script(
                "expect self\nslide beta 1 over alpha 1 along auto\n"))

    def test_comment_and_header(self):
        s = parse_script("# comment\nsource fig5\nexpect genus0\nstab 2\n")
        assert s.source == "fig5"
        assert s.expect == "genus0"
        assert s.moves == [Stabilize(2)]

    def test_twist_aux(self):
        s = parse_script("twist along @c power -n\n")
        mv = s.moves[0]
        assert isinstance(mv, Twist)
        assert mv.along == ("aux", "c")
        assert mv.power == NExpr(-1, 0)

    def test_twist_literal(self):
        s = parse_script("twist along a1+@1/2 power 2\n")
        assert s.moves[0].power(0) == 2

    def test_bad_keyword(self):
        with pytest.raises(ScriptError):
            parse_script("wiggle 3\n")

    def test_bad_path(self):
        with pytest.raises(ScriptError):
            parse_script("slide alpha 1 over alpha 2 along nonsense stuff\n")

    def test_destab(self):
        s = parse_script("destab 3 5 7\n")
        assert s.moves == [Destabilize(3, 5, 7)]

    def test_nexpr(self):
        assert parse_nexpr("n") == NExpr(1, 0)
        assert parse_nexpr("-n") == NExpr(-1, 0)
        assert parse_nexpr("2n+1") == NExpr(2, 1)
        assert parse_nexpr("-n+2") == NExpr(-1, 2)
        assert parse_nexpr("3") == NExpr(0, 3)
        with pytest.raises(ScriptError):
            parse_nexpr("nn")

    def test_round_trip(self):
        text = ("source x\nexpect self\nstab 1\ndestab 1 1 1\n"
                "slide alpha 1 over alpha 2 along auto\n"
                "twist along @c power -n\ncanon\n")
        s = parse_script(text)
        assert parse_script(emit_script(s)).moves == s.moves


class TestVerify:
    def test_empty_script_self(self):
        cert, d = verify_script(empty_diagram(), parse_script("expect self\n"))
        assert cert.certified
        assert cert.destab_count == 0

    def test_stab_destab_genus0(self):
        script = parse_script("expect genus0\nstab 1\ndestab 1 1 1\n")
        cert, d = verify_script(empty_diagram(), script)
        assert cert.certified
        assert cert.destab_count == 1
        assert d.surface.genus == 0

    def test_wrong_endpoint_reported(self):
        script = parse_script("expect genus0\nstab 1\n")
        with pytest.raises(ValidationError) as e:
            verify_script(empty_diagram(), script)
        assert "(1;1,0,0)" in str(e.value)

    def test_illegal_destab_reported_with_step(self):
        script = parse_script("stab 1\nstab 2\ndestab 1 2 1\n")
        with pytest.raises(MoveError) as e:
            verify_script(empty_diagram(), script)
        assert e.value.step == 2

    def test_twist_power_zero_identity(self):
        d = stabilize(empty_diagram(), 1)
        script = parse_script("expect self\ntwist along a1+@1/2 power 0\n")
        cert, d2 = verify_script(d, script)
        assert cert.certified
        assert d2.canonical_hash() == d.canonical_hash()

    def test_twist_then_inverse_restores_hash(self):
        d = stabilize(empty_diagram(), 1)
        script = parse_script(
            "expect self\n"
            "twist along b1+@1/2 power 1\n"
            "twist along b1+@1/2 power -1\n")
        cert, d2 = verify_script(d, script)
        assert d2.canonical_hash() == d.canonical_hash()

    def test_certificates_deterministic(self):
        d = stabilize(empty_diagram(), 1)
        script = parse_script("expect self\ntwist along b1+@1/2 power n\ncanon\n")
        c1, _ = verify_script(d, script, n=1)
        c2, _ = verify_script(d, script, n=1)
        assert c1.hash() == c2.hash()

    def test_n_uniform_fingerprint(self):
        d = stabilize(empty_diagram(), 1)
        script = parse_script("expect self\ntwist along b1+@1/2 power n\n")
        certs = [verify_script(d, script, n=k)[0] for k in (-1, 0, 1, 2)]
        prints = {c.uniform_fingerprint() for c in certs}
        assert len(prints) == 1
        hashes = {c.hash() for c in certs}
        assert len(hashes) == 4

    def test_slide_in_stabilized_diagram(self):
        d = stabilize(stabilize(empty_diagram(), 1), 1)
        script = parse_script("expect type:(2;2,0,0)\n"
                              "slide alpha 1 over alpha 2 along auto\n")
        cert, d2 = verify_script(d, script)
        assert cert.certified
        assert cert.steps[0]["family_disjoint"]

    def test_slide_then_inverse_preserves_type(self):
        d = stabilize(stabilize(empty_diagram(), 1), 2)
        script = parse_script("expect type:(2;1,1,0)\n"
                              "slide alpha 1 over alpha 2 along auto\n")
        cert, d2 = verify_script(d, script)
        assert cert.certified

    def test_type_trace_recorded(self):
        script = parse_script("expect self\nstab 1\nstab 2\ndestab 2 2 2\n")
        cert, _ = verify_script(empty_diagram(), script)
        assert [s["type_after"] for s in cert.steps] == \
            ["(1;1,0,0)", "(2;1,1,0)", "(1;1,0,0)"]
