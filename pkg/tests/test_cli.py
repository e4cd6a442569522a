import contextlib
import io
import json
from pathlib import Path
from xml.dom import minidom

import pytest

from conftest import FIXTURES, fixture_path
from lgn import front as fr
from lgn.cli import main
from lgn.complex import decompose
from lgn.invariants import load_surgery
from lgn.lickorish import parse_word
from lgn.ribbon import load_openbook
from lgn.svg import emit_svg


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out):
        code = main([str(a) for a in argv], err=err)
    return code, out.getvalue(), err.getvalue()


def ok(*argv):
    code, out, err = run(*argv)
    assert code == 0, err
    return out


def test_openbook_explicit_trefoil():
    doc = json.loads(ok("openbook", fixture_path("trefoil.front"), "--mode", "explicit",
                        "--disks", fixture_path("trefoil.disks")))
    assert doc["format"] == "openbook v1"
    assert doc["euler"] == -3 and doc["boundary"] == 3
    assert [s for _, s in doc["word"]] == [1, 1, 1, 1]


def test_surgery_render_example():
    doc = json.loads(ok("surgery", fixture_path("g2-example.word"), "--render"))
    d = load_surgery(doc)
    assert d.ncomponents == 8
    assert sorted(int(c.contact) for c in d.coefficients) == [-1] * 4 + [1] * 4


def test_h1_lens_space():
    assert ok("h1", fixture_path("l41.surg")).strip() == "Z/4"


def test_h1_of_word_and_ribbon_link():
    assert ok("h1", fixture_path("g2-example.word")).strip() == "0"
    assert ok("h1", fixture_path("moves", "lantern.rl")).strip() == "Z/2 + Z/10"


def test_invariants_table_and_json():
    assert "K1            1     0" in ok("invariants", fixture_path("trefoil.front"))
    doc = json.loads(ok("invariants", fixture_path("hopf.front"), "--json"))
    assert doc["lk"] == [[0, -1], [-1, 0]]
    assert [c["tb"] for c in doc["components"]] == [-1, -1]


def test_moves_preserve_h1(tmp_path):
    out = tmp_path / "after.surg"
    ok("moves", fixture_path("moves", "stabs-left.surg"), fixture_path("moves", "stabs-left.moves"),
       "-o", out)
    assert ok("h1", out).strip() == "0"


def test_compare():
    text = ok("compare", fixture_path("l41.surg"), fixture_path("moves", "stabs-left.surg"))
    assert "H1 DIFFER" in text
    doc = json.loads(ok("compare", fixture_path("l41.surg"), fixture_path("l41.surg"), "--json"))
    assert doc["h1"]["equal"] is True


def test_exit_codes(tmp_path):
    bad = tmp_path / "bad.front"
    bad.write_text("front v1\nL 1; R 3\n")
    code, _, err = run("validate", bad)
    assert code == 1 and "out of range" in err
    assert run("validate", tmp_path / "missing.front")[0] == 2
    assert run("h1")[0] == 2
    assert run("frobnicate")[0] == 2
    assert run("openbook", fixture_path("l41.surg"))[0] == 2
    newer = tmp_path / "new.front"
    newer.write_text("front v7\nL 1; R 1\n")
    code, _, err = run("validate", newer)
    assert code == 1 and "version" in err


@pytest.mark.parametrize("argv", [
    ("openbook", "trefoil.front"),
    ("surgery", "g2-example.word", "--render"),
    ("invariants", "K2.front", "--json"),
    ("render", "trefoil.front"),
    ("render", "tb-3.front", "--ribbon"),
])
def test_deterministic(argv):
    args = [fixture_path(a) if a.endswith((".front", ".word")) else a for a in argv]
    assert ok(*args) == ok(*args)


def test_openbook_roundtrip():
    text = ok("openbook", fixture_path("tb-3.front"))
    from lgn.ribbon import dump_openbook
    assert dump_openbook(load_openbook(text)) == text


def test_surgery_roundtrip(tmp_path):
    sym = tmp_path / "g2.rl"
    sym.write_text(ok("surgery", fixture_path("g2-example.word")))
    assert ok("validate", sym).startswith(str(sym))
    rendered = tmp_path / "g2.surg"
    rendered.write_text(ok("surgery", fixture_path("g2-example.word"), "--render"))
    from lgn.invariants import dump_surgery
    assert dump_surgery(load_surgery(rendered.read_text())) == rendered.read_text()
    assert ok("h1", rendered).strip() == "0"


def test_corpus_mode(tmp_path):
    out = ok("invariants", "--all", FIXTURES, "--jobs", "3")
    assert out == ok("invariants", "--all", FIXTURES)
    assert out.count("component") == 7     # one table per front file
    ok("render", "--all", FIXTURES, "-o", tmp_path)
    # fronts plus the surgery document
    assert len(list(tmp_path.glob("*.svg"))) == 8


# -- svg ---------------------------------------------------------------------

def classes(svg, name):
    dom = minidom.parseString(svg)
    return [el for el in dom.getElementsByTagName("path") + dom.getElementsByTagName("g")
            if name in el.getAttribute("class").split()]


def test_svg_unknot():
    svg = emit_svg(fr.unknot())
    assert len(classes(svg, "cusp")) == 4        # two paths per cusp
    assert classes(svg, "gap") == []


def test_svg_trefoil():
    svg = emit_svg(fr.trefoil())
    assert len(classes(svg, "gap")) == 3
    assert len(classes(svg, "cusp")) == 2 * 4
    assert len(classes(svg, "under")) == 6


def test_svg_ribbon_shading():
    svg = emit_svg(decompose(fr.unknot()).gf)
    assert classes(svg, "light") and classes(svg, "heavy")


def test_svg_monochrome(monkeypatch):
    monkeypatch.setenv("LGN_COLOR", "0")
    svg = emit_svg(fr.hopf_pair())
    strokes = {el.getAttribute("stroke") for el in classes(svg, "strand")}
    assert strokes == {"#000000"}
    monkeypatch.setenv("LGN_COLOR", "1")
    assert len({el.getAttribute("stroke") for el in classes(emit_svg(fr.hopf_pair()),
                                                              "strand")}) == 2


def test_validate_all_formats():
    paths = sorted(p for p in Path(FIXTURES).rglob("*") if p.is_file())
    out = ok("validate", *paths)
    assert out.count(": ok ") == len(paths)
    assert parse_word(Path(fixture_path("g2-example.word")).read_text()).genus == 2
