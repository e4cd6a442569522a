import pytest

from conftest import fixture_text
from lgn import front as fr
from lgn.complex import decompose, parse_disks
from lgn.mcg import variation_h1
from lgn.ribbon import (FatGraph, RibbonError, build_ribbon, disk_open_book, dump_openbook,
                        load_openbook, make_binding_connected, monodromy, open_book,
                        positively_stabilize, surface_invariants)


def load(name):
    return fr.parse_front(fixture_text(f"{name}.front"))


def bounds(d, mode="canonical", chords=None):
    return surface_invariants(build_ribbon(decompose(d, mode, chords))).as_tuple()


def test_unknot_annulus():
    cd = decompose(fr.unknot())
    ob = open_book(cd)
    assert surface_invariants(ob.page).as_tuple() == (0, 0, 2)
    assert ob.word == [("C1", 1)]
    # the core of the annulus is the knot itself
    fg = ob.page.fatgraph
    assert fg.coords(ob.page.curve("C1")) in ([1], [-1])
    assert abs(fg.coords(ob.page.curve("K1"))[0]) == 1


def test_trefoil_explicit_page():
    chords = parse_disks(fixture_text("trefoil.disks"))
    cd = decompose(fr.trefoil(), "explicit", chords)
    ob = monodromy(cd)
    assert ob.page.euler == -3 and ob.page.genus == 1 and ob.page.boundary_components == 3
    assert ob.word == [(f"C{j}", 1) for j in (1, 2, 3, 4)]


def test_tb3_page():
    ob = open_book(decompose(load("tb-3")))
    assert surface_invariants(ob.page).as_tuple() == (2, 0, 4)
    assert [s for _, s in ob.word] == [1, 1, 1]


def test_canonical_trefoil_bound():
    assert bounds(fr.trefoil())[0] == 3 + 4 // 2 - 1


@pytest.mark.parametrize("n", [1, 2, 3])
def test_torus_knot_pages(n):
    assert bounds(fr.torus_knot(n))[0] == 2 * n + 2


@pytest.mark.parametrize("name", ["unknot", "stab", "tb-3", "trefoil", "K2", "hopf"])
def test_euler_consistency(name):
    cd = decompose(load(name))
    s = build_ribbon(cd)
    fg = s.fatgraph
    assert s.euler == fg.nvertices - fg.nedges == 2 - 2 * s.genus - s.boundary_components
    assert -s.euler == len(cd.disks) - 1
    # every edge side is traced exactly once
    darts = sorted(d for cyc in fg.boundary_cycles() for d in cyc)
    assert darts == list(range(2 * fg.nedges))
    for k in range(cd.front.ncomponents):
        assert cd.front.labels[k] in s.atlas


def test_binding_connected_unknot():
    cd, arcs = make_binding_connected(decompose(fr.unknot()))
    assert arcs == 1
    assert FatGraph.from_graphfront(cd.gf).boundary_components() == 1


def test_binding_already_connected():
    cd0 = decompose(fr.hopf_pair())
    cd, arcs = make_binding_connected(cd0)
    assert arcs == 0 and cd is cd0


def test_binding_trefoil_steps():
    cd0 = decompose(fr.trefoil())
    b = build_ribbon(cd0).boundary_components
    cd, arcs = make_binding_connected(cd0)
    assert arcs == b - 1
    s = build_ribbon(cd)
    assert s.boundary_components == 1 and "K1" in s.atlas


@pytest.mark.parametrize("site,shape", [(((0, 0), (0, 1)), (1, 1, 1)),
                                        (((0, 0), (1, 1)), (1, 0, 3))])
def test_stabilize_annulus(site, shape):
    ob = open_book(decompose(fr.unknot()))
    st = positively_stabilize(ob, site)
    assert surface_invariants(st.page).as_tuple() == shape
    assert st.word[:-1] == ob.word and st.word[-1][1] == 1
    assert variation_h1(st) == variation_h1(ob)


def test_stabilize_disk():
    st = positively_stabilize(disk_open_book())
    assert surface_invariants(st.page).as_tuple() == (0, 0, 2)
    assert len(st.word) == 1 and variation_h1(st) == ([], 0)


def test_bad_site():
    ob = open_book(decompose(fr.unknot()))
    with pytest.raises(RibbonError):
        positively_stabilize(ob, ((0, 7), (1, 0)))
    with pytest.raises(RibbonError):
        positively_stabilize(ob, ((0, 0), (0, 0)))


def test_openbook_document_roundtrip():
    ob = open_book(decompose(fr.trefoil()))
    text = dump_openbook(ob)
    back = load_openbook(text)
    assert dump_openbook(back) == text
    with pytest.raises(RibbonError, match="format"):
        load_openbook('{"format": "openbook v2"}')
