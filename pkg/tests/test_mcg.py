from fractions import Fraction

import pytest

import oracles
from conftest import fixture_path, fixture_text
from lgn import front as fr
from lgn import intlinalg as la
from lgn.complex import decompose
from lgn.invariants import SurgeryDiagram, h1_of, load_surgery
from lgn.lickorish import lickorish_atlas
from lgn.mcg import (MoveError, MoveSpec, RibbonComponent, TwistWord, add_meridian, apply_move,
                     chain3_surface, check_relation, detect_overtwisted_pattern, dump_ribbonlink,
                     front_cancel_delete, front_cancel_insert, homology_action, lantern_link,
                     lantern_surface, lickorish_link, load_ribbonlink, meridian_pairs,
                     parse_move_script, plumb_ribbon, preserves_pairing, ribbon_lantern,
                     serialize_move_script, torus_surface, variation_h1)
from lgn.ribbon import OpenBook, open_book


def tw(surface, *letters):
    return TwistWord(surface, list(letters))


def rl(name):
    return load_ribbonlink(fixture_text("moves", name + ".rl"))


def _transvection_oracle(J, c, s):
    n = len(c)
    return [[(1 if i == j else 0) + s * c[i] * sum(J[j][k] * c[k] for k in range(n))
             for j in range(n)] for i in range(n)]


def test_empty_word_identity():
    s = torus_surface()
    assert homology_action(tw(s)).matrix == la.identity(2)


def test_twist_and_inverse_cancel():
    s = torus_surface()
    assert homology_action(tw(s, ("A", 1), ("A", -1))).matrix == la.identity(2)


def test_torus_sixfold_relation():
    s = torus_surface()
    fg = s.fatgraph
    J = fg.pairing()
    ta = _transvection_oracle(J, s.coords("A"), 1)
    tb = _transvection_oracle(J, s.coords("B"), 1)
    M = la.identity(2)
    for _ in range(6):
        M = la.matmul(la.matmul(ta, tb), M)
    assert M == la.identity(2)
    w = tw(s, ("A", 1), ("B", 1)).power(6)
    assert homology_action(w).matrix == M
    # three repetitions act as -1, so six is the first identity
    assert homology_action(tw(s, ("A", 1), ("B", 1)).power(3)).matrix == [[-1, 0], [0, -1]]


def test_action_preserves_pairing():
    s = lickorish_atlas(2)
    w = tw(s, ("alpha1", 1), ("gamma1", -1), ("beta2", 1))
    assert preserves_pairing(homology_action(w))


def test_variation_examples():
    ob = open_book(decompose(fr.unknot()))
    assert variation_h1(ob) == ([], 0)
    assert variation_h1(OpenBook(ob.page, [])) == ([], 1)
    assert variation_h1(OpenBook(lickorish_atlas(1), [])) == ([], 2)


def test_relations():
    t = torus_surface()
    assert check_relation(tw(t, ("A", 1), ("B", 1), ("A", 1)),
                          tw(t, ("B", 1), ("A", 1), ("B", 1))) == "homology-equal"
    assert check_relation(tw(t, ("A", 1)), tw(t, ("A", -1))) == "homology-distinct"
    lan = lantern_surface()
    assert check_relation(tw(lan, ("a", 1), ("b", 1), ("c", 1), ("d", 1)),
                          tw(lan, ("g", 1), ("f", 1), ("e", 1))) == "homology-equal"
    ch = chain3_surface()
    assert check_relation(tw(ch, ("C", 1), ("B", 1), ("A", 1)).power(4),
                          tw(ch, ("X", 1), ("Y", 1))) == "homology-equal"


def test_boundary_twist_seen_by_variation():
    # a twist about a boundary-parallel curve acts trivially on H1; the
    # variation map still tells it apart from the identity
    lan = lantern_surface()
    assert homology_action(tw(lan, ("d", 1))).matrix == la.identity(lan.fatgraph.rank)
    assert check_relation(tw(lan, ("d", 1)), tw(lan)) == "homology-distinct"


def test_plumb_orders():
    two = SurgeryDiagram(fr.word("L 1; R 1; L 1; R 1").with_labels(("A", "B")), (-1, -1))
    r1 = plumb_ribbon(two, "A", "B", 1)
    assert r1.word().letters == [("A", 1), ("B", 1)]
    hopf = SurgeryDiagram(fr.hopf_pair().with_labels(("A", "B")), (-1, -1))
    r2 = plumb_ribbon(hopf, "A", "B", 2)
    assert r2.word().letters == [("B", 1), ("A", 1)]
    assert r1.h1() == h1_of(two) and r2.h1() == h1_of(hopf)
    with pytest.raises(MoveError, match="unlinked"):
        plumb_ribbon(hopf, "A", "B", 1)


@pytest.mark.parametrize("name", ["slide1", "slide2", "slide3", "slide4", "braid", "conjugate",
                                  "conjugate-neg", "cancel", "chain3", "lantern"])
def test_ribbon_move_scripts(name):
    link = rl(name)
    out = link
    for m in parse_move_script(fixture_text("moves", name + ".moves")):
        out = apply_move(out, m)
    assert out.h1() == link.h1()


@pytest.mark.parametrize("name,before,after", [("slide1", "Z/2 + Z/2", "Z/2 + Z"),
                                               ("slide3", "Z/3", "0")])
def test_slides_render_both_routes(name, before, after):
    # the input fixture, then the one with B's coefficient flipped
    link = rl(name)
    assert str(link.h1()) == str(link.h1_rendered()) == before
    flipped = link.replace([RibbonComponent(c.curve, c.height, 1 if c.label == "B" else
                                            c.coefficient, c.name) for c in link.components])
    assert str(flipped.h1()) == str(flipped.h1_rendered()) == after


def test_lantern_pair_independent_smith():
    left = lantern_link()
    right = ribbon_lantern(left, None)
    a, b = left.linking_matrix(), right.linking_matrix()
    assert oracles.smith_by_minors(a) == oracles.smith_by_minors(b) == ([2, 10], 0)
    assert tuple(la.cokernel(a)) == tuple(la.cokernel(b)) == ([2, 10], 0)


def test_ribbonlink_document_roundtrip():
    for name in ("slide1", "chain3", "lantern"):
        text = fixture_text("moves", name + ".rl")
        assert dump_ribbonlink(load_ribbonlink(text)) == text
    with pytest.raises(MoveError, match="format"):
        load_ribbonlink('{"format": "ribbonlink v0"}')


def test_conjugate_heights():
    out = apply_move(rl("braid"), MoveSpec("conjugate", (), {"curve": "alpha1", "delta": 1}))
    hs = [c.height for c in out.components]
    assert hs[0] == -1 and hs[-1] == 1
    assert all(-1 < h < 1 for h in hs[1:-1])


def test_braid_shape():
    out = apply_move(rl("braid"), MoveSpec("braid", ("x1", "y", "x2")))
    assert [(c.curve, c.height) for c in out.components] == [
        ("beta1", -1), ("alpha1", 0), ("beta1", 1)]


def test_move_errors():
    with pytest.raises(MoveError):
        MoveSpec("teleport")
    with pytest.raises(MoveError, match="needs"):
        apply_move(rl("slide1"), MoveSpec("handle_slide", ("B", "A"), {"variant": 3}))
    with pytest.raises(MoveError, match="no component"):
        apply_move(rl("braid"), MoveSpec("cancel_delete", ("nope", "y")))
    with pytest.raises(MoveError, match="ribbon"):
        apply_move(load_surgery(fixture_text("l41.surg")), MoveSpec("braid", ("a", "b", "c")))


def test_move_script_roundtrip():
    text = "moves v1\nmove handle_slide B A variant=2\nmove conjugate curve=alpha1 delta=-1\n"
    moves = parse_move_script(text)
    assert serialize_move_script(moves) == text
    with pytest.raises(MoveError, match="line 1"):
        parse_move_script("shove x y\n")


# -- front-level moves -------------------------------------------------------

def trefoil_with(coef):
    return SurgeryDiagram(fr.trefoil().with_labels(("K",)), (coef,))


def test_meridian_linking():
    d = add_meridian(trefoil_with(-1), "K", 1, "mu")
    f = d.front
    assert fr.linking_number(f, 0, 1) == -1 and fr.tb(f, 1) == -1
    assert meridian_pairs(d) == [(0, 1)]


def test_overtwisted_detector():
    left = load_surgery(fixture_text("moves", "stabs-left.surg"))
    right = load_surgery(fixture_text("moves", "stabs-right.surg"))
    assert not detect_overtwisted_pattern(left)
    assert detect_overtwisted_pattern(right)
    assert not detect_overtwisted_pattern(SurgeryDiagram(fr.FrontDiagram(()), ()))


def test_detector_monotone_under_annotations():
    right = load_surgery(fixture_text("moves", "stabs-right.surg"))
    bare = SurgeryDiagram(right.front, right.coefficients, {})
    assert detect_overtwisted_pattern(bare)         # auto-detected
    assert detect_overtwisted_pattern(right)        # declared as well


def test_delete_positive_stab():
    left = load_surgery(fixture_text("moves", "stabs-left.surg"))
    out = apply_move(left, MoveSpec("delete_positive_stab", ("K", "mu")))
    assert out.ncomponents == 0 and h1_of(out) == h1_of(left)
    right = load_surgery(fixture_text("moves", "stabs-right.surg"))
    with pytest.raises(MoveError):
        apply_move(right, MoveSpec("delete_positive_stab", ("K", "mu")))


def test_front_cancel_pair():
    d = trefoil_with(-1)
    ins = front_cancel_insert(d, "K", -1)
    assert ins.front.labels == ("K", "K.a", "K.b")
    assert [int(c.contact) for c in ins.coefficients] == [-1, -1, 1]
    assert h1_of(ins) == h1_of(d)
    back = front_cancel_delete(ins, "K.a", "K.b")
    assert back.front.events == d.front.events
    with pytest.raises(MoveError):
        front_cancel_delete(ins, "K", "K.a")


def test_lickorish_link_page():
    link = lickorish_link(1, (RibbonComponent("alpha1", Fraction(0), -1),))
    assert link.open_book().word[:2] == [("beta1", 1), ("alpha1", 1)]
    assert str(link.h1()) == str(link.h1_rendered())
