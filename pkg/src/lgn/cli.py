"""``lgn`` command line.

Exit status: 0 on success, 1 when an input is well formed at the shell level
but mathematically or syntactically invalid, 2 on usage errors (argparse,
missing files, wrong kind of document for the subcommand).
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from . import front as fr
from .complex import ComplexError, decompose, decomposition_document, parse_disks
from .invariants import (Homology, Report, SurgeryDiagram, SurgeryError, compare_presentations,
                         dump_surgery, h1_of, load_surgery, summarize)
from .lickorish import (LickorishError, TemplateError, algorithm1, parse_word,
                        render_surgery_link, serialize_word, symbolic_document)
from .mcg import (MoveError, RibbonLink, apply_move, dump_ribbonlink, load_ribbonlink,
                  parse_move_script, variation_h1)
from .ribbon import (RibbonError, build_ribbon, dump_openbook, load_openbook,
                     make_binding_connected, monodromy, surface_invariants)
from .svg import emit_svg

DOMAIN_ERRORS = (fr.FrontError, ComplexError, RibbonError, LickorishError, TemplateError,
                 SurgeryError, MoveError)


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# reading inputs

def sniff(text: str) -> str:
    """Format tag of a document from its leading magic token."""
    s = text.lstrip()
    if s.startswith("{"):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as e:
            raise SurgeryError(f"bad JSON: {e}") from None
        fmt = doc.get("format") if isinstance(doc, dict) else None
        if fmt is None:
            raise SurgeryError("JSON document without a format field")
        return fmt
    for ln in text.splitlines():
        ln = ln.split("#")[0].strip()
        if ln:
            if ln.split()[0] == "move":
                return "moves v1"       # the script header is optional
            return " ".join(ln.split()[:2])
    raise fr.FrontSyntaxError("empty document")


KNOWN = ("front v1", "lickorish v1", "disks v1", "moves v1", "surgery v1", "ribbonlink v1",
         "openbook v1", "surgery-symbolic v1", "cells v1")


def read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise UsageError(f"{path}: {e.strerror}") from None


def _provenance(d: SurgeryDiagram):
    src = d.annotations.get("lickorish")
    if src:
        d.provenance = parse_word(src).open_book()
    return d


def load(path: str):
    """(format tag, parsed object) for any supported document."""
    text = read(path)
    fmt = sniff(text)
    if fmt == "front v1":
        return fmt, fr.parse_front(text)
    if fmt == "lickorish v1":
        return fmt, parse_word(text)
    if fmt == "disks v1":
        return fmt, parse_disks(text)
    if fmt == "moves v1":
        return fmt, parse_move_script(text)
    if fmt == "surgery v1":
        return fmt, _provenance(load_surgery(text))
    if fmt == "ribbonlink v1":
        return fmt, load_ribbonlink(text)
    if fmt == "openbook v1":
        return fmt, load_openbook(text)
    if fmt in KNOWN:
        return fmt, json.loads(text)
    head = fmt.split()[0] if fmt else fmt
    if any(k.split()[0] == head for k in KNOWN):
        raise SurgeryError(f"unsupported version {fmt!r}")
    # unmarked text defaults to the front grammar, which reports the problem
    return "front v1", fr.parse_front(text)


def _expect(path, *kinds):
    fmt, obj = load(path)
    if fmt not in kinds:
        raise UsageError(f"{path}: expected {' or '.join(kinds)}, got {fmt}")
    return fmt, obj


def _emit(text: str, out):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# subcommands; each takes (args, path) and returns output text

def cmd_validate(args, path):
    fmt, obj = load(path)
    extra = ""
    if fmt == "front v1":
        extra = f" ({obj.ncomponents} components, {len(obj)} events)"
    return f"{path}: ok {fmt}{extra}\n"


def invariants_table(d: fr.FrontDiagram) -> dict:
    comps = []
    for c in range(d.ncomponents):
        ci = fr.classical_invariants(d, c)
        comps.append({"label": d.labels[c], "tb": ci.tb, "rot": ci.rot,
                      "crossings": ci.crossings, "cusps": ci.cusps})
    return {"components": comps, "lk": fr.linking_table(d)}


def cmd_invariants(args, path):
    fmt, obj = _expect(path, "front v1", "surgery v1")
    d = obj if fmt == "front v1" else obj.front
    tab = invariants_table(d)
    if args.json:
        return json.dumps(tab, indent=1, sort_keys=True) + "\n"
    w = max([len("component")] + [len(c["label"]) for c in tab["components"]])
    lines = [f"{'component':<{w}}  {'tb':>4}  {'rot':>4}"]
    for c in tab["components"]:
        lines.append(f"{c['label']:<{w}}  {c['tb']:>4}  {c['rot']:>4}")
    if d.ncomponents > 1:
        lines.append("lk")
        labs = [c["label"] for c in tab["components"]]
        lines.append(" " * (w + 2) + "  ".join(f"{lab:>4}" for lab in labs))
        for lab, row in zip(labs, tab["lk"]):
            lines.append(f"{lab:<{w}}  " + "  ".join(f"{v:>4}" for v in row))
    return "\n".join(lines) + "\n"


def cmd_openbook(args, path):
    _, d = _expect(path, "front v1")
    chords = None
    if args.mode == "explicit":
        if not args.disks:
            raise UsageError("--mode explicit needs --disks FILE")
        _, chords = _expect(args.disks, "disks v1")
    elif args.disks:
        raise UsageError("--disks is only meaningful with --mode explicit")
    cd = decompose(d, args.mode, chords)
    arcs = 0
    if args.connect_binding:
        cd, arcs = make_binding_connected(cd)
    page = build_ribbon(cd)
    ob = monodromy(cd, page)
    extra = {"support": list(surface_invariants(page).as_tuple()),
             "mode": args.mode, "binding_arcs": arcs}
    if args.cells:
        extra["cells"] = decomposition_document(cd)
    return dump_openbook(ob, extra)


def cmd_surgery(args, path):
    _, w = _expect(path, "lickorish v1")
    sym = algorithm1(w)
    if not args.render:
        doc = symbolic_document(sym)
        doc["source"] = serialize_word(w)
        return json.dumps(doc, indent=1, sort_keys=True) + "\n"
    r = render_surgery_link(sym)
    sd = SurgeryDiagram(r.front, tuple(r.coefficients), {"lickorish": serialize_word(w)})
    return dump_surgery(sd)


def cmd_moves(args, path):
    fmt, d = _expect(path, "surgery v1", "ribbonlink v1")
    _, moves = _expect(args.script, "moves v1")
    for m in moves:
        d = apply_move(d, m)
    if isinstance(d, RibbonLink):
        return dump_ribbonlink(d)
    if moves:
        d.annotations.pop("lickorish", None)     # the diagram no longer comes from the word
    return dump_surgery(d)


def _h1_and_summary(path):
    fmt, obj = _expect(path, "surgery v1", "ribbonlink v1", "openbook v1", "lickorish v1")
    if fmt == "surgery v1":
        return h1_of(obj), summarize(obj), obj
    if fmt == "ribbonlink v1":
        return obj.h1(), f"{len(obj.components)} ribbon components", obj
    if fmt == "openbook v1":
        return Homology(*map(_tuple, variation_h1(obj))), f"open book, {len(obj.word)} twists", obj
    ob = obj.open_book()
    return Homology(*map(_tuple, variation_h1(ob))), f"lickorish word, {len(obj.letters)} letters", ob


def _tuple(x):
    return tuple(x) if isinstance(x, list) else x


def cmd_h1(args, path):
    h, _, _ = _h1_and_summary(path)
    return f"{h}\n"


def cmd_compare(args, path):
    ha, sa, a = _h1_and_summary(args.paths[0])
    hb, sb, b = _h1_and_summary(args.paths[1])
    if isinstance(a, SurgeryDiagram) and isinstance(b, SurgeryDiagram):
        rep = compare_presentations(a, b)
    else:
        rep = Report(ha, hb, sa, sb)
    if args.json:
        return json.dumps(rep.as_dict(), indent=1, sort_keys=True) + "\n"
    return rep.text() + "\n"


def cmd_render(args, path):
    fmt, obj = _expect(path, "front v1", "surgery v1", "lickorish v1", "ribbonlink v1")
    if fmt == "lickorish v1":
        obj = render_surgery_link(algorithm1(obj)).front
    elif fmt == "surgery v1":
        obj = obj.front
    elif fmt == "ribbonlink v1":
        obj = obj.graph if args.ribbon else obj.render().front
        return emit_svg(obj, title=os.path.basename(path))
    if args.ribbon:
        obj = decompose(obj).gf
    return emit_svg(obj, title=os.path.basename(path))


COMMANDS = {"validate": cmd_validate, "invariants": cmd_invariants, "openbook": cmd_openbook,
            "surgery": cmd_surgery, "moves": cmd_moves, "h1": cmd_h1, "compare": cmd_compare,
            "render": cmd_render}

CORPUS_SUFFIX = {"render": ".svg", "openbook": ".openbook.json", "surgery": ".surg"}


def build_parser():
    p = argparse.ArgumentParser(prog="lgn", description="Legendrian surgery diagrams and open books")
    sub = p.add_subparsers(dest="command", required=True, metavar="command")

    def add(name, help_, nargs="?"):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("paths", nargs=nargs)
        sp.add_argument("-o", "--output", help="write here instead of stdout")
        sp.add_argument("--all", metavar="DIR", help="run on every file in DIR")
        sp.add_argument("--jobs", type=int, default=1, help="files processed concurrently with --all")
        return sp

    add("validate", "parse and check documents", "*")
    sp = add("invariants", "tb, rot and linking numbers of a front")
    sp.add_argument("--json", action="store_true")
    sp = add("openbook", "open book supporting a front's contact structure")
    sp.add_argument("--mode", choices=("canonical", "explicit"), default="canonical")
    sp.add_argument("--disks", help="chord file for --mode explicit")
    sp.add_argument("--connect-binding", action="store_true")
    sp.add_argument("--cells", action="store_true", help="include the cell decomposition")
    sp = add("surgery", "surgery link of a Lickorish word")
    sp.add_argument("--render", action="store_true", help="emit a rendered surgery document")
    sp = add("moves", "apply a move script to a surgery or ribbon link document")
    sp.add_argument("script")
    add("h1", "first homology of the described manifold")
    sp = add("compare", "compare two presentations", 2)
    sp.add_argument("--json", action="store_true")
    sp = add("render", "SVG drawing")
    sp.add_argument("--ribbon", action="store_true", help="draw the ribbon schematic")
    return p


def _corpus(args, fn, err):
    try:
        names = sorted(n for n in os.listdir(args.all)
                       if os.path.isfile(os.path.join(args.all, n)))
    except OSError as e:
        raise UsageError(f"{args.all}: {e.strerror}") from None

    def one(name):
        path = os.path.join(args.all, name)
        try:
            return name, fn(args, path), None
        except DOMAIN_ERRORS + (UsageError,) as e:
            return name, None, e

    with ThreadPoolExecutor(max_workers=max(1, args.jobs)) as ex:
        results = list(ex.map(one, names))        # map keeps input order
    status = 0
    chunks = []
    for name, text, e in results:
        if e is not None:
            if isinstance(e, UsageError) and args.command != "validate":
                continue        # documents of other kinds are skipped
            print(f"lgn: {name}: {e}", file=err)
            status = 1
            continue
        if args.output and args.command in CORPUS_SUFFIX:
            os.makedirs(args.output, exist_ok=True)
            stem = name.rsplit(".", 1)[0]
            with open(os.path.join(args.output, stem + CORPUS_SUFFIX[args.command]), "w",
                      encoding="utf-8") as fh:
                fh.write(text)
        else:
            chunks.append(text if args.command == "validate" else f"== {name}\n{text}")
    if chunks:
        _emit("".join(chunks), args.output if args.command not in CORPUS_SUFFIX else None)
    return status


def main(argv=None, err=None) -> int:
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    fn = COMMANDS[args.command]
    try:
        if args.all:
            if args.command in ("compare", "moves") or args.paths:
                raise UsageError("--all takes no other input paths")
            return _corpus(args, fn, err)
        if args.command == "validate":
            if not args.paths:
                raise UsageError("validate needs at least one path")
            _emit("".join(fn(args, p) for p in args.paths), args.output)
            return 0
        if args.command == "compare":
            _emit(fn(args, None), args.output)
            return 0
        if not args.paths:
            raise UsageError(f"{args.command} needs an input path")
        _emit(fn(args, args.paths), args.output)
        return 0
    except UsageError as e:
        print(f"lgn {args.command}: {e}", file=err)
        return 2
    except DOMAIN_ERRORS as e:
        print(f"lgn {args.command}: {e}", file=err)
        return 1


if __name__ == "__main__":
    sys.exit(main())
