import pytest

import oracles
from conftest import fixture_text
from lgn import front as fr
from lgn.front import (FrontError, FrontSyntaxError, classical_invariants, hopf_pair,
                       is_non_split, linking_number, parse_front, reeb_pushoff, serialize_front,
                       tb, word)

CORPUS = ("unknot", "stab", "tb-3", "trefoil", "K2", "hopf")


def evs(d):
    return [(e.kind, e.pos) for e in d.events]


def test_minimal_unknot():
    d = parse_front("front v1\nL 1; R 1\n")
    assert d.ncomponents == 1
    ci = classical_invariants(d, 0)
    assert (ci.tb, ci.rot, ci.cusps, ci.crossings) == (-1, 0, 2, 0)


def test_nested_triple_twist_word():
    # the inner pair twisted three times is its own component
    d = word("L 1; L 2; X 2; X 2; X 2; R 2; R 1")
    _, _, _, n = oracles.trace(evs(d))
    assert d.ncomponents == n == 2
    assert len(d.crossings()) == 3
    assert sum(classical_invariants(d, c).cusps for c in range(2)) == 4


def test_position_out_of_range():
    with pytest.raises(FrontError, match="range"):
        word("L 1; R 2")


def test_unclosed_word():
    with pytest.raises(FrontError):
        word("L 1; L 1; R 1")


def test_syntax_error_reports_line_and_column():
    with pytest.raises(FrontSyntaxError) as ei:
        parse_front("front v1\nL 1\nQ 3\n")
    assert ei.value.line == 3


def test_unknown_version_rejected():
    with pytest.raises(FrontError):
        parse_front("front v2\nL 1; R 1\n")


def test_trefoil_tb():
    assert tb(fr.trefoil()) == 1


def test_stabilized_unknot():
    d = parse_front(fixture_text("stab.front"))
    ci = classical_invariants(d, 0)
    assert ci.tb == -2 and abs(ci.rot) == 1


@pytest.mark.parametrize("name", CORPUS)
def test_invariants_match_oracle(name):
    d = parse_front(fixture_text(f"{name}.front"))
    t, r = oracles.tb_rot(evs(d), d.orientations)
    for c in range(d.ncomponents):
        ci = classical_invariants(d, c)
        assert ci.tb == t[c] and ci.rot == r[c]
        assert ci.tb + ci.cusps // 2 - ci.writhe == 0


def test_split_and_nonsplit():
    assert is_non_split(fr.unknot())
    assert not is_non_split(word("L 1; R 1; L 1; R 1"))
    assert is_non_split(hopf_pair())


def test_hopf_linking():
    d = hopf_pair()
    assert linking_number(d, 0, 1) == oracles.lk(evs(d), 0, 1) == -1
    assert linking_number(word("L 1; R 1; L 1; R 1"), 0, 1) == 0


def test_linking_orientation_bilinear():
    d = hopf_pair()
    flipped = d.with_orientations((1, -1))
    assert linking_number(flipped, 0, 1) == -linking_number(d, 0, 1)
    assert linking_number(d, 1, 0) == linking_number(d, 0, 1)


def test_pushoffs():
    u = reeb_pushoff(fr.unknot(), 0)
    assert u.ncomponents == 2 and linking_number(u, 0, 1) == -1
    t = reeb_pushoff(fr.trefoil(), 0)
    assert linking_number(t, 0, 1) == 1
    tt = reeb_pushoff(t, 1)
    assert [linking_number(tt, a, b) for a, b in ((0, 1), (0, 2), (1, 2))] == [1, 1, 1]


def test_serialize_roundtrip_with_directives():
    text = "front v1\nL 1; L 3; X 2; X 2; R 1; R 1\nname 1 A\nname 2 B\norient 2 -\n"
    d = parse_front(text)
    assert d.labels == ("A", "B") and d.orientations == (1, -1)
    assert serialize_front(d) == text
    assert parse_front(serialize_front(d)) == d


def test_comments_and_newlines():
    d = parse_front("front v1 # header\nL 1 # open\nR 1\n")
    assert evs(d) == [("L", 1), ("R", 1)]


def test_delete_components():
    d = reeb_pushoff(fr.trefoil(), 0)
    assert fr.delete_components(d, [1]).events == fr.trefoil().events


def test_unknown_component():
    with pytest.raises(FrontError):
        classical_invariants(fr.unknot(), 3)
