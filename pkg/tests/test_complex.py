import json

import pytest

import oracles
from conftest import fixture_text
from lgn import front as fr
from lgn.complex import (Chord, ComplexError, build_complex, decompose, decomposition_document,
                         enumerate_faces, parse_disks, partition_faces, serialize_disks)

CONNECTED = ("unknot", "stab", "tb-3", "trefoil", "K2", "hopf")


def load(name):
    return fr.parse_front(fixture_text(f"{name}.front"))


def evs(d):
    return [(e.kind, e.pos) for e in d.events]


def test_unknot_bigon():
    c = build_complex(fr.unknot())
    assert (c.nvertices, c.nedges, len(c.faces())) == (2, 2, 1)
    (f,) = enumerate_faces(c)
    assert f.tb == -1
    assert sorted(k.kind for k in f.corners) == ["cusp-into-face"] * 2


def test_split_unknots_joined_by_one_arc():
    c = build_complex(fr.word("L 1; R 1; L 1; R 1"))
    arcs = [e for e in c.gf.edges if e.label[0] == "a"]
    assert len(arcs) == 1
    assert c.euler_relation() == 2


def test_trefoil_vertices_and_faces():
    d = fr.trefoil()
    c = build_complex(d)
    kinds = [col.kind for col in c.gf.cols]
    assert kinds.count("crossing") == 3
    faces = enumerate_faces(c)
    # the outer crossings each have one lateral quadrant in the unbounded face
    assert sorted(-2 * f.tb for f in faces) == oracles.sweep_faces(evs(d)) == [2, 2, 2, 2]
    assert sum(f.tb for f in faces) == -4


@pytest.mark.parametrize("name", CONNECTED)
def test_faces_match_sweep_oracle(name):
    d = load(name)
    c = build_complex(d)
    assert c.euler_relation() == 2
    assert sorted(-2 * f.tb for f in enumerate_faces(c)) == oracles.sweep_faces(evs(d))
    assert all(f.tb <= -1 for f in enumerate_faces(c))


def test_stabilized_unknot_face_sum():
    assert sum(f.tb for f in enumerate_faces(build_complex(fr.unknot(1)))) == -2


def test_tb3_three_disks_two_chords():
    cd = partition_faces(build_complex(load("tb-3")))
    assert len(cd.disks) == 3 and len(cd.chords) == 2
    assert all(f.tb == -1 for f in cd.disks)


def test_unknot_no_chords():
    cd = decompose(fr.unknot())
    assert len(cd.disks) == 1 and cd.chords == []


def test_trefoil_canonical_five_disks():
    cd = decompose(fr.trefoil())
    assert len(cd.disks) == 5


@pytest.mark.parametrize("name", CONNECTED)
def test_disk_order_is_topological(name):
    cd = decompose(load(name))
    assert all(hi > lo for hi, lo in cd.order)
    assert all(f.tb == -1 for f in cd.disks)


def test_explicit_mode_checks_faces():
    with pytest.raises(ComplexError, match="tb"):
        decompose(load("tb-3"), "explicit", [])


def test_explicit_trefoil_partition():
    chords = parse_disks(fixture_text("trefoil.disks"))
    cd = decompose(fr.trefoil(), "explicit", chords)
    assert len(cd.disks) == 4


def test_explicit_cusped_chords_rejected():
    with pytest.raises(ComplexError, match="cusps"):
        decompose(fr.trefoil(), "explicit", [Chord(0, 1, 5, 1, 2)])


def test_disks_format_roundtrip():
    text = "disks v1\nchord 1 1 5 1\nchord 2 0 6 2 cusps 2\n"
    assert serialize_disks(parse_disks(text)) == text
    with pytest.raises(ComplexError, match="version"):
        parse_disks("disks v9\n")


def test_decomposition_document_is_json():
    doc = decomposition_document(decompose(load("tb-3")))
    assert doc["format"] == "cells v1"
    assert len(doc["disks"]) == 3 and all(f["tb"] == -1 for f in doc["disks"])
    assert json.loads(json.dumps(doc)) == doc
