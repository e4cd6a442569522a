from fractions import Fraction

import pytest

import oracles
from conftest import fixture_text
from lgn import intlinalg as la
from lgn.front import linking_number, tb_all
from lgn.lickorish import (LickorishError, LickorishWord, algorithm1, curve_names,
                           intersection_table, lickorish_atlas, load_symbolic, pair_catalogue,
                           parse_word, predicted_linking_matrix, render_copies,
                           render_surgery_link, rendered_h1, serialize_word, symbolic_document,
                           render_structure_checks)
from lgn.mcg import variation_h1


def W(g, *letters):
    return LickorishWord(g, tuple(letters))


def test_atlas_genus1():
    assert curve_names(1) == ["alpha1", "beta1"]
    assert intersection_table(lickorish_atlas(1)) == {("alpha1", "beta1"): 1}


def test_atlas_genus2():
    s = lickorish_atlas(2)
    assert len(curve_names(2)) == 3 * 2 - 1
    t = intersection_table(s)
    assert t.get(("alpha1", "alpha2"), 0) == 0
    assert t[("alpha1", "beta1")] == t[("alpha2", "beta2")] == 1
    # gamma1 is a chain link between the two handles
    assert sum(1 for k, v in t.items() if "gamma1" in k and v) == 2


def test_atlas_rejects_genus0():
    with pytest.raises(LickorishError):
        W(0)


def test_algorithm1_example():
    w = parse_word(fixture_text("g2-example.word"))
    s = algorithm1(w)
    assert len(s.components) == 8
    coefs = [c.coefficient for c in s.components]
    assert coefs.count(1) == coefs.count(-1) == 4
    twists = [c for c in s.components if c.role == "twist"]
    assert [c.height for c in twists] == [Fraction(k, 4) for k in (1, 2, 3, 4)]
    assert [c.curve for c in twists] == ["alpha1", "gamma1", "beta1", "alpha2"]


def test_algorithm1_corrections_only():
    s = algorithm1(W(1))
    assert [(c.curve, c.height, c.coefficient) for c in s.components] == [
        ("alpha1", 0, 1), ("beta1", -1, 1)]


def test_algorithm1_negative_letter():
    s = algorithm1(W(1, ("beta1", -1)))
    assert len(s.components) == 3 and s.components[-1].coefficient == 1


def test_word_format():
    text = fixture_text("g2-example.word")
    w = parse_word(text)
    assert parse_word(serialize_word(w)) == w
    assert parse_word("lickorish v1\ngenus 1\nword a1+ b1-\n").letters == (
        ("alpha1", 1), ("beta1", -1))
    with pytest.raises(LickorishError, match="version"):
        parse_word("lickorish v2\ngenus 1\n")
    with pytest.raises(LickorishError, match="not available"):
        parse_word("lickorish v1\ngenus 1\nword +gamma1\n")


def test_symbolic_document_roundtrip():
    s = algorithm1(parse_word(fixture_text("g2-example.word")))
    assert load_symbolic(symbolic_document(s)) == s


def test_empty_word_render():
    r = render_surgery_link(algorithm1(W(1)))
    d = r.front
    evs = [(e.kind, e.pos) for e in d.events]
    assert linking_number(d, 0, 1) == oracles.lk(evs, 0, 1, d.orientations) == 0
    t, _ = oracles.tb_rot(evs, d.orientations)
    assert [t[k] + r.coefficients[k] for k in range(2)] == [0, 0]
    assert rendered_h1(r) == ([], 2) == variation_h1(W(1).open_book())


def test_height_order_matters():
    page = lickorish_atlas(1)
    gf = page.skeleton
    a, b = page.curve("alpha1"), page.curve("beta1")
    right, _ = render_copies(gf, [(a, Fraction(0)), (b, Fraction(-1))])
    wrong, _ = render_copies(gf, [(a, Fraction(-1)), (b, Fraction(0))])
    assert linking_number(right, 0, 1) == 0
    assert abs(linking_number(wrong, 0, 1)) == 1


def test_doubled_corrections_give_s3():
    w = W(1, ("alpha1", 1), ("beta1", 1))
    r = render_surgery_link(algorithm1(w))
    assert rendered_h1(r) == ([], 0) == variation_h1(w.open_book())


def test_template_tb():
    r = render_surgery_link(algorithm1(parse_word(fixture_text("g2-example.word"))))
    for comp, t in zip(r.components, tb_all(r.front)):
        assert t == (-2 if comp.kind == "gamma" else -1)
    assert render_structure_checks(r) == []
    assert r.front.ncomponents == 8


def test_pair_catalogue_classes():
    cat = pair_catalogue(2)
    assert {cls for _, cls in cat.values()} <= {"unlink", "hopf", "torus(-4,2)"}
    # alpha above beta is unlinked (the corrections), beta above alpha clasps
    assert cat[("alpha1", "beta1", False)] == (0, "unlink")
    assert cat[("beta1", "alpha1", False)][1] == "hopf"


def test_predicted_matrix_agrees_with_render():
    w = parse_word(fixture_text("g2-example.word"))
    s = algorithm1(w)
    r = render_surgery_link(s)
    from lgn.invariants import linking_matrix_front
    M = linking_matrix_front(r.front, r.coefficients)
    # reorder the prediction into front component order
    idx = [list(s.components).index(c) for c in r.components]
    P = predicted_linking_matrix(s)
    assert [[P[i][j] for j in idx] for i in idx] == M
    assert la.cokernel(M) == ([], 0) and abs(oracles._det(M)) == 1
