"""Command line interface: ``threepage <command> ...``.

Exit codes: 0 success, Proved or Admissible; 1 invalid input; 2 Unknown
(budget exhausted); 3 Refuted, NotAdmissible or a failed self-test.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Optional, Sequence

from .pages import DecodeError, NotClassical, decode, to_link_diagram
from .relations import Tier, enumerate_relations, family_counts
from .rewrite import Outcome, SearchBudget, describe_path, equivalent, is_central, simplify_with_path
from .surface import (
    Admissibility,
    BracketCapExceeded,
    ResolutionSign,
    admissible,
    classical_invariants,
    euler_characteristic,
    resolve,
)
from .word import Word, WordParseError, format_word, parse_word

EXIT_OK, EXIT_INVALID, EXIT_UNKNOWN, EXIT_REFUTED = 0, 1, 2, 3
_OUTCOME_EXIT = {Outcome.PROVED: EXIT_OK, Outcome.UNKNOWN: EXIT_UNKNOWN, Outcome.REFUTED: EXIT_REFUTED}
_ADMISSIBLE_EXIT = {
    Admissibility.ADMISSIBLE: EXIT_OK,
    Admissibility.UNKNOWN: EXIT_UNKNOWN,
    Admissibility.NOT_ADMISSIBLE: EXIT_REFUTED,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2, which is reserved for Unknown
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _emit(args, doc: dict, text: str) -> None:
    if getattr(args, "json", False):
        print(json.dumps(doc, indent=2))
    else:
        print(text)


def _word(text: str) -> Word:
    return parse_word(text)


def _budget(args, *words) -> SearchBudget:
    kw = {}
    if getattr(args, "max_states", None):
        kw["max_states"] = args.max_states
    budget = SearchBudget.for_words(*words, **kw)
    if getattr(args, "max_length", None):
        budget = SearchBudget(args.max_length, budget.max_states, budget.max_depth)
    return budget


def _str_invariants(inv: dict) -> dict:
    out = {}
    for k, v in inv.items():
        if k == "linking":
            out[k] = [list(r) for r in v]
        elif k == "bracket":
            out[k] = str(v)
        else:
            out[k] = v
    return out


# ----------------------------------------------------------------------------
# commands


def cmd_parse(args) -> int:
    w = _word(args.word)
    doc = {"word": format_word(w), "length": len(w), "singular": w.count("x")}
    _emit(args, doc, format_word(w))
    return EXIT_OK


def cmd_decode(args) -> int:
    d = decode(args.word)
    if args.json:
        print(d.to_json())
    else:
        arcs = ", ".join(f"P{p}:{len(d.page_arcs[p])}" for p in range(3))
        print(f"components {d.component_count}; singular points {len(d.singular_points)}; arcs {arcs}")
    return EXIT_OK


def cmd_resolve(args) -> int:
    w = _word(args.word)
    r = resolve(w, args.sign, signs=args.signs.split(",") if args.signs else None)
    decode(r)
    _emit(args, {"word": format_word(r), "length": len(r)}, format_word(r))
    return EXIT_OK


def cmd_chi(args) -> int:
    chi = euler_characteristic(args.word)
    _emit(args, {"chi": chi}, str(chi))
    return EXIT_OK


def cmd_invariants(args) -> int:
    from .surface import is_trivial_link

    w = _word(args.word)
    decode(w)
    doc = {
        "word": format_word(w),
        "components": decode(w).component_count,
        "singular": w.count("x"),
        "chi": euler_characteristic(w),
        "resolutions": {},
    }
    budget = _budget(args, w)
    for sign in ResolutionSign:
        r = resolve(w, sign)
        entry = _str_invariants(classical_invariants(r))
        entry["word"] = format_word(r)
        entry["triviality"] = is_trivial_link(r, budget).to_dict()
        doc["resolutions"][sign.value] = entry
    print(json.dumps(doc, indent=2))
    return EXIT_OK


def cmd_admissible(args) -> int:
    w = _word(args.word)
    rep = admissible(w, _budget(args, w) if args.max_states or args.max_length else None)
    _emit(args, rep.to_dict(), rep.overall.value)
    return _ADMISSIBLE_EXIT[rep.overall]


def cmd_equiv(args) -> int:
    w1, w2 = _word(args.w1), _word(args.w2)
    v = equivalent(w1, w2, args.tier, _budget(args, w1, w2))
    doc = v.to_dict()
    text = v.outcome.value
    if v.proved and args.path:
        text += "\n" + "\n".join(describe_path(w1, v.path))
    elif v.witness:
        text += "\n" + "\n".join(f"{k}: {a} vs {b}" for k, (a, b) in v.witness.items())
    _emit(args, doc, text)
    return _OUTCOME_EXIT[v.outcome]


def cmd_simplify(args) -> int:
    w = _word(args.word)
    best, path = simplify_with_path(w, args.tier, _budget(args, w))
    doc = {"word": format_word(best), "length": len(best), "path": [str(s) for s in path]}
    _emit(args, doc, format_word(best))
    return EXIT_OK


def cmd_central(args) -> int:
    w = _word(args.word)
    budget = None
    if args.max_states or args.max_length:
        budget = _budget(args, w + parse_word("a0"))  # w g is one letter longer
    v = is_central(w, args.tier, budget)
    lines = [v.outcome.value] + [
        f"{g}: {r.outcome.value}" for g, r in v.per_generator.items()
    ]
    _emit(args, v.to_dict(), "\n".join(lines))
    return _OUTCOME_EXIT[v.outcome]


def cmd_relations(args) -> int:
    rels = enumerate_relations(args.tier, extended=args.extended)
    if args.json:
        doc = {
            "tier": Tier.parse(args.tier).name.lower(),
            "count": len(rels),
            "families": family_counts(rels),
            "relations": [
                {"family": r.family, "index": r.index, "case": r.case,
                 "lhs": format_word(r.lhs), "rhs": format_word(r.rhs)}
                for r in rels
            ],
        }
        print(json.dumps(doc, indent=2))
    else:
        for r in rels:
            print(r)
    return EXIT_OK


def cmd_encode(args) -> int:
    from .encoder import PlanarMarkedDiagram, encode_diagram

    with open(args.input) as fh:
        d = PlanarMarkedDiagram.from_json(fh.read())
    w = encode_diagram(d)
    doc = {
        "word": format_word(w),
        "length": len(w),
        "components": decode(w).component_count,
        "singular": w.count("x"),
    }
    if not w.has_singular():
        doc["crossings"] = to_link_diagram(w).crossing_count
    _emit(args, doc, format_word(w))
    return EXIT_OK


def cmd_selftest(args) -> int:
    from .selftest import run_selftest

    t0 = time.perf_counter()
    report = run_selftest(contexts=args.contexts, seed=args.seed, corrupt=args.corrupt_table,
                          log=None if args.json else print)
    if args.timing:
        report["seconds"] = round(time.perf_counter() - t0, 1)
    if args.json:
        print(json.dumps(report, indent=2))
    else:
        if args.timing:
            print(f"{report['seconds']} s")
        print("PASS" if report["ok"] else "FAIL")
    return EXIT_OK if report["ok"] else EXIT_REFUTED


# ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="threepage", description="Word calculus for 3-page embeddings of 2-links.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def word_cmd(name, func, help, json_flag=True):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("word", help='quoted word, e.g. "a1 c1"')
        if json_flag:
            sp.add_argument("--json", action="store_true")
        sp.set_defaults(func=func)
        return sp

    def budget_flags(sp):
        sp.add_argument("--max-states", type=int, default=None)
        sp.add_argument("--max-length", type=int, default=None, help="maximal word length")

    def tier_flag(sp, default):
        sp.add_argument("--tier", choices=["classical", "singular", "full"], default=default)

    word_cmd("parse", cmd_parse, "validate and normalize a word")
    word_cmd("decode", cmd_decode, "decode into a marked-graph diagram")
    sp = word_cmd("resolve", cmd_resolve, "resolve the singular points")
    sp.add_argument("--sign", choices=["pos", "neg", "+", "-"], default="pos")
    sp.add_argument("--signs", default=None, help="experimental: comma separated sign per x letter")
    word_cmd("chi", cmd_chi, "Euler characteristic of the represented surface")
    sp = word_cmd("invariants", cmd_invariants, "JSON summary of invariants", json_flag=False)
    budget_flags(sp)
    sp = word_cmd("admissible", cmd_admissible, "certify both resolutions as unlinks")
    budget_flags(sp)

    sp = sub.add_parser("equiv", help="bounded search for w1 = w2")
    sp.add_argument("w1")
    sp.add_argument("w2")
    tier_flag(sp, "full")
    budget_flags(sp)
    sp.add_argument("--path", action="store_true", help="print the proof path")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_equiv)

    sp = word_cmd("simplify", cmd_simplify, "shortest equivalent word found")
    tier_flag(sp, "full")
    budget_flags(sp)
    sp = word_cmd("central", cmd_central, "check commutation with all 15 letters")
    tier_flag(sp, "singular")
    budget_flags(sp)

    sp = sub.add_parser("relations", help="list relation instances")
    sp.add_argument("--list", action="store_true", help="one instance per line (default)")
    tier_flag(sp, "full")
    sp.add_argument("--extended", action="store_true", help="include the redundant instances")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_relations)

    sp = sub.add_parser("encode", help="encode a planar diagram (JSON) as a word")
    sp.add_argument("--input", required=True)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_encode)

    sp = sub.add_parser("selftest", help="relation-safety suite and fixture checks")
    sp.add_argument("--contexts", type=int, default=200, help="random contexts per relation")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--corrupt-table", metavar="LETTER", default=None,
                    help="mirror one table entry first; the suite must then fail")
    sp.add_argument("--timing", action="store_true", help="report wall time")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_selftest)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    from .encoder import DiagramError, EncodeError

    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_INVALID
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (WordParseError, DecodeError, NotClassical, DiagramError, BracketCapExceeded,
            ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except EncodeError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
