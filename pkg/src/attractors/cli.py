"""Command-line entry point: ``attractors <subcommand> ...``.

Texts are read from files (``-`` is stdin) with one trailing newline removed
unless ``--raw`` is given. Results go to stdout as JSON; failures print a JSON
record ``{"error": "<subcommand>:<code>", ...}`` to stderr and exit with 2.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import adag as adag_mod
from .bounds import bounds_report
from .compressors import (
    MacroScheme,
    RlGrammar,
    Lz77Parse,
    attractor_from_bwt_runs,
    attractor_from_grammar,
    attractor_from_lz77,
    attractor_from_macro,
    attractor_from_suffix_tree,
    balanced_rl_grammar,
    bwt_runs,
    decode_macro,
    lz77_parse,
)
from .derive import measures_report, pad_attractor, parse_from_attractor, slp_from_attractor
from .errors import AttractorError, FormatError
from .textcore import AttractorSet, Text, build_index, smallest_attractor_bruteforce, verify_attractor
from .treeattr import (
    LabeledTree,
    SetCoverInstance,
    bruteforce_path_attractor,
    greedy_path_attractor,
    greedy_string_attractor,
    tree_from_setcover,
)


class IoError(AttractorError):
    code = "io-error"


def _read_bytes(path: str) -> bytes:
    try:
        if path == "-":
            return sys.stdin.buffer.read()
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        raise IoError(f"{path}: {exc.strerror}") from exc


def _read_text(path: str, raw: bool) -> Text:
    data = _read_bytes(path)
    if not raw:
        if data.endswith(b"\r\n"):
            data = data[:-2]
        elif data.endswith(b"\n"):
            data = data[:-1]
    return Text.from_bytes(data)


def _read_json(path: str):
    try:
        return json.loads(_read_bytes(path))
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc.msg})") from exc


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj) + "\n")


def _attractor_arg(path: str, t: Text) -> AttractorSet:
    g = AttractorSet.from_json(_read_json(path))
    g.check_range(t.n)
    return g


# ------------------------------------------------------------ subcommands


def cmd_attractor(a):
    t = _read_text(a.text, a.raw)
    idx = build_index(t)
    kind = a.kind
    if kind == "lz77":
        g = attractor_from_lz77(lz77_parse(t, idx))
    elif kind == "bwt":
        g = attractor_from_bwt_runs(t, bwt_runs(t, idx))
    elif kind == "grammar":
        gr = RlGrammar.from_json(_read_json(a.grammar)) if a.grammar else balanced_rl_grammar(t)
        g = attractor_from_grammar(gr, t)
    elif kind == "macro":
        ms = MacroScheme.from_json(_read_json(a.scheme)) if a.scheme else lz77_parse(t, idx).to_macro()
        decoded, _ = decode_macro(ms)
        if decoded.raw != t.raw:
            raise FormatError("macro scheme does not decode to the text")
        g = attractor_from_macro(ms)
    elif kind == "stree":
        g = attractor_from_suffix_tree(t, idx)
    elif kind == "greedy":
        g = greedy_string_attractor(t)
    else:
        g = smallest_attractor_bruteforce(t, idx, a.limit)
    _emit(g.to_json(t.n))


def cmd_verify(a):
    t = _read_text(a.text, a.raw)
    g = _attractor_arg(a.attractor, t)
    v = verify_attractor(t, build_index(t), g)
    if v:
        print("valid")
        return 0
    w = v.witness
    _emit({"valid": False, "witness": {"i": w.i, "j": w.j, "reason": w.reason}})
    return 1


def cmd_brute(a):
    t = _read_text(a.text, a.raw)
    _emit(smallest_attractor_bruteforce(t, build_index(t), a.limit).to_json(t.n))


def cmd_greedy(a):
    t = _read_text(a.text, a.raw)
    _emit(greedy_string_attractor(t).to_json(t.n))


def cmd_tree_greedy(a):
    _emit(greedy_path_attractor(LabeledTree.from_json(_read_json(a.tree))).to_json())


def cmd_tree_brute(a):
    tree = LabeledTree.from_json(_read_json(a.tree))
    _emit(bruteforce_path_attractor(tree, a.limit).to_json())


def _derived(a):
    t = _read_text(a.text, a.raw)
    idx = build_index(t)
    pa = pad_attractor(t, _attractor_arg(a.attractor, t), idx)
    return t, idx, pa


def cmd_to_parse(a):
    t, idx, pa = _derived(a)
    _emit(parse_from_attractor(t, idx, pa).to_json())


def cmd_to_slp(a):
    t, idx, pa = _derived(a)
    _emit(slp_from_attractor(t, idx, pa).to_json())


def cmd_lz77(a):
    t = _read_text(a.text, a.raw)
    _emit(lz77_parse(t).to_json())


def cmd_decode(a):
    obj = _read_json(a.file)
    if a.kind == "parse":
        text, _ = decode_macro(MacroScheme.from_json(obj))
        out = text.raw
    elif a.kind == "slp":
        out = RlGrammar.from_json(obj).expand().encode("latin-1")
    else:
        out = Lz77Parse.from_json(obj).decode().encode("latin-1")
    sys.stdout.buffer.write(out)
    sys.stdout.flush()


def cmd_adag_build(a):
    t = _read_text(a.text, a.raw)
    d = adag_mod.build_adag(t, None, _attractor_arg(a.attractor, t), a.tau, a.w)
    data = adag_mod.serialize(d)
    try:
        with open(a.output, "wb") as fh:
            fh.write(data)
    except OSError as exc:
        raise IoError(f"{a.output}: {exc.strerror}") from exc
    _emit(adag_mod.space_report(d).to_json())


def cmd_adag_extract(a):
    d = adag_mod.deserialize(_read_bytes(a.file))
    sys.stdout.buffer.write(adag_mod.extract(d, a.pos, a.len).encode("latin-1") + b"\n")
    sys.stdout.flush()


def cmd_bounds(a):
    t = _read_text(a.text, a.raw)
    g = _attractor_arg(a.attractor, t) if a.attractor else None
    rep = bounds_report(t, attractor=g, gamma=a.gamma if g is None else None, exact=a.exact)
    print(rep.table()) if a.table else _emit(rep.to_json())


def cmd_report(a):
    rep = measures_report(_read_text(a.text, a.raw))
    print(rep.table()) if a.table else _emit(rep.to_json())


def cmd_reduce(a):
    sc = SetCoverInstance.from_json(_read_json(a.instance))
    tree, t_padded = tree_from_setcover(sc)
    _emit({"t": t_padded, "tree": tree.to_json()})


# ----------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="attractors", description="String attractor toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    def text_cmd(name, func, **kw):
        sp = sub.add_parser(name, **kw)
        sp.add_argument("text", help="text file, or - for stdin")
        sp.add_argument("--raw", action="store_true", help="keep a trailing newline")
        sp.set_defaults(func=func)
        return sp

    sp = sub.add_parser("attractor", help="attractor induced by a compressor")
    sp.add_argument("kind", choices=["lz77", "bwt", "grammar", "macro", "stree", "greedy", "brute"])
    sp.add_argument("text")
    sp.add_argument("--raw", action="store_true")
    sp.add_argument("--grammar", help="grammar JSON (default: built-in balanced grammar)")
    sp.add_argument("--scheme", help="macro scheme JSON (default: the LZ77 parse)")
    sp.add_argument("--limit", type=int, default=18)
    sp.set_defaults(func=cmd_attractor)

    sp = text_cmd("verify", cmd_verify, help="check an attractor")
    sp.add_argument("attractor", help="attractor JSON file, or -")

    sp = text_cmd("brute", cmd_brute, help="exact smallest attractor")
    sp.add_argument("--limit", type=int, default=18)
    text_cmd("greedy", cmd_greedy, help="greedy attractor")
    text_cmd("lz77", cmd_lz77, help="LZ77 parse as JSON")

    sp = sub.add_parser("tree-greedy", help="greedy path attractor of a tree")
    sp.add_argument("tree")
    sp.set_defaults(func=cmd_tree_greedy)
    sp = sub.add_parser("tree-brute", help="smallest path attractor of a tree")
    sp.add_argument("tree")
    sp.add_argument("--limit", type=int, default=16)
    sp.set_defaults(func=cmd_tree_brute)

    for name, func in (("to-parse", cmd_to_parse), ("to-slp", cmd_to_slp)):
        sp = text_cmd(name, func)
        sp.add_argument("attractor")

    sp = sub.add_parser("decode", help="decode a parse, SLP or LZ77 JSON file")
    sp.add_argument("kind", choices=["parse", "slp", "lz77"])
    sp.add_argument("file")
    sp.set_defaults(func=cmd_decode)

    ad = sub.add_parser("adag", help="build or query an A-DAG").add_subparsers(dest="action", required=True)
    sp = ad.add_parser("build")
    sp.add_argument("text")
    sp.add_argument("attractor")
    sp.add_argument("--tau", type=int, default=2)
    sp.add_argument("--w", type=int, default=64)
    sp.add_argument("-o", "--output", required=True)
    sp.add_argument("--raw", action="store_true")
    sp.set_defaults(func=cmd_adag_build)
    sp = ad.add_parser("extract")
    sp.add_argument("file")
    sp.add_argument("--pos", type=int, required=True)
    sp.add_argument("--len", type=int, required=True)
    sp.set_defaults(func=cmd_adag_extract)

    sp = text_cmd("bounds", cmd_bounds, help="repetitiveness bounds")
    sp.add_argument("--gamma", type=int)
    sp.add_argument("--attractor")
    sp.add_argument("--exact", action="store_true", help="treat the given gamma as the optimum")
    sp.add_argument("--table", action="store_true")

    sp = text_cmd("report", cmd_report, help="compressor and derived sizes")
    sp.add_argument("--table", action="store_true")

    sp = sub.add_parser("reduce-setcover", help="reduction tree of a set-cover instance")
    sp.add_argument("instance")
    sp.set_defaults(func=cmd_reduce)
    return p


def _prefix(a) -> str:
    return f"adag-{a.action}" if a.command == "adag" else a.command


def run(argv=None) -> int:
    a = build_parser().parse_args(argv)
    try:
        return a.func(a) or 0
    except AttractorError as exc:
        sys.stderr.write(json.dumps(exc.record(_prefix(a))) + "\n")
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
