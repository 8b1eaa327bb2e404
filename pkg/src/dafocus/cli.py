"""Command-line interface: prove, parse, compare, focalise, cutelim, selftest.

Exit status is 0 when the goal is provable (or the check passes), 1 when it
is not, and 2 on malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass, field
from importlib import resources
from pathlib import Path

from .calculus import DA, DA_FOC, DAF, count_cuts, from_json, prove_all, replay, to_json
from .config import parse_sequent, sequent_text
from .focus import prove_focused
from .formula import Signature, parse_declaration, parse_formula
from .lexicon import entry_env, goals, read_lexicon
from .oracle import OracleConfig, OracleReport, check_sequent, corpus, minimise
from .render import latex, tree_text
from .semantics import default_env, readings, term_text
from .transform import cut_eliminate, embed_da, focalise

DEFAULT_MAX_PROOFS = 1000


class InputError(ValueError):
    pass


# ---------------------------------------------------------------- helpers

def _signature(decls) -> Signature:
    sig = Signature()
    for d in decls or ():
        parse_declaration(d if d.startswith("atom ") else "atom " + d, sig)
    return sig


def _engines(args) -> list[str]:
    if args.focused:
        return ["focused"]
    if args.unfocused:
        return ["unfocused"]
    return ["unfocused", "focused"]


def _search(engine: str, s, max_proofs):
    if engine == "focused":
        return prove_focused(s, max_proofs=max_proofs)
    return prove_all(s, max_proofs=max_proofs)


def _system(engine: str) -> str:
    return DA_FOC if engine == "focused" else DA


def _read_json(path) -> dict:
    text = Path(path).read_text(encoding="utf-8") if path and path != "-" else sys.stdin.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"invalid JSON at line {e.lineno} column {e.colno}: {e.msg}") from None


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2, ensure_ascii=False))


# ------------------------------------------------------------------ prove

def cmd_prove(args) -> int:
    s = parse_sequent(args.sequent, _signature(args.declare))
    max_proofs = args.max_proofs
    report = {"sequent": sequent_text(s), "engines": {}}
    provable = False
    for engine in _engines(args):
        res = _search(engine, s, max_proofs)
        shown = res.derivations if args.all else res.derivations[:1]
        provable = provable or res.provable
        report["engines"][engine] = {
            "provable": res.provable, "proofs": len(res.derivations), "truncated": res.truncated,
            "budget_exceeded": res.budget_exceeded, "nodes": res.nodes,
            "derivations": shown,
        }
    if args.json:
        for engine, info in report["engines"].items():
            info["derivations"] = [to_json(d, _system(engine)) for d in info["derivations"]]
        _emit(report)
    else:
        print(f"sequent: {report['sequent']}")
        for engine, info in report["engines"].items():
            flags = " (truncated)" if info["truncated"] else ""
            flags += " (node budget exhausted)" if info["budget_exceeded"] else ""
            verdict = "provable" if info["provable"] else "not provable"
            print(f"{engine}: {verdict}, {info['proofs']} proof(s){flags}, {info['nodes']} nodes")
            for i, d in enumerate(info["derivations"], 1):
                print(f"-- {engine} derivation {i}")
                print(latex(d) if args.latex else tree_text(d))
    return 0 if provable else 1


# ------------------------------------------------------------------ parse

def _lexicon_path(name: str) -> Path:
    p = Path(name)
    if p.exists():
        return p
    packaged = resources.files("dafocus") / "data" / name
    if packaged.is_file():
        return Path(str(packaged))
    raise InputError(f"lexicon not found: {name}")


def cmd_parse(args) -> int:
    lex = read_lexicon(_lexicon_path(args.lexicon))
    goal = parse_formula(args.goal, lex.signature)
    gs = goals(lex, args.sentence.split(), goal, args.cap)
    engine = _engines(args)[0] if args.focused or args.unfocused else "focused"
    out = {"sentence": args.sentence, "goal": args.goal, "candidates": len(gs.candidates),
           "truncated": gs.truncated, "parses": []}
    seen = []
    for c in gs.candidates:
        res = _search(engine, c.sequent, args.max_proofs)
        if not res.provable:
            continue
        env = entry_env(c)
        terms = [term_text(t) for t in readings(c.sequent, res.derivations, env)]
        for t in terms:
            if t not in seen:
                seen.append(t)
        out["parses"].append({"sequent": sequent_text(c.sequent), "proofs": len(res.derivations),
                              "truncated": res.truncated, "readings": terms,
                              "rules": sorted({r for d in res.derivations for r in d.rules_used()})})
    out["readings"] = seen
    if args.json:
        _emit(out)
    else:
        print(f"{args.sentence} : {args.goal}")
        print(f"{len(gs.candidates)} candidate sequent(s){' (truncated)' if gs.truncated else ''}, "
              f"{len(out['parses'])} provable, {len(seen)} reading(s)")
        for p in out["parses"]:
            print(f"  {p['sequent']}   {p['proofs']} proof(s)")
            for t in p["readings"]:
                print(f"    {t}")
        if not out["parses"]:
            print("no parse")
    return 0 if out["parses"] else 1


# ---------------------------------------------------------------- compare

@dataclass
class CompareReport:
    sequent: str
    unfocused_proofs: int
    focused_proofs: int
    reading_count: int
    readings: list = field(default_factory=list)
    focused_readings: list = field(default_factory=list)
    readings_equal: bool = True
    readings_equal_commuting: bool = True
    unfocused_nodes: int = 0
    focused_nodes: int = 0
    unfocused_truncated: bool = False
    focused_truncated: bool = False


def compare(s, max_proofs: int | None = DEFAULT_MAX_PROOFS) -> CompareReport:
    u = prove_all(s, max_proofs=max_proofs)
    f = prove_focused(s, max_proofs=max_proofs)
    env = default_env(s)
    ur = readings(s, u.derivations, env)
    fr = readings(s, f.derivations, env)
    urc = set(readings(s, u.derivations, env, commuting=True))
    frc = set(readings(s, f.derivations, env, commuting=True))
    return CompareReport(
        sequent=sequent_text(s), unfocused_proofs=len(u.derivations), focused_proofs=len(f.derivations),
        reading_count=len(urc | frc), readings=[term_text(t) for t in ur],
        focused_readings=[term_text(t) for t in fr], readings_equal=set(ur) == set(fr),
        readings_equal_commuting=urc == frc, unfocused_nodes=u.nodes, focused_nodes=f.nodes,
        unfocused_truncated=u.truncated, focused_truncated=f.truncated)


def cmd_compare(args) -> int:
    s = parse_sequent(args.sequent, _signature(args.declare))
    rep = compare(s, args.max_proofs)
    if args.json:
        _emit(asdict(rep))
    else:
        print(f"sequent: {rep.sequent}")
        print(f"unfocused: {rep.unfocused_proofs} proof(s), {rep.unfocused_nodes} nodes"
              f"{' (truncated)' if rep.unfocused_truncated else ''}")
        print(f"focused:   {rep.focused_proofs} proof(s), {rep.focused_nodes} nodes"
              f"{' (truncated)' if rep.focused_truncated else ''}")
        print(f"readings:  {rep.reading_count}")
        for t in rep.readings:
            print(f"  unfocused  {t}")
        for t in rep.focused_readings:
            print(f"  focused    {t}")
        if not rep.readings_equal:
            print("note: reading sets differ in beta normal form"
                  + (" but agree up to case commuting conversions" if rep.readings_equal_commuting else ""))
    return 0 if rep.unfocused_proofs or rep.focused_proofs else 1


# ------------------------------------------------------- proof transforms

def cmd_focalise(args) -> int:
    d, system = from_json(_read_json(args.input))
    if system != DA:
        raise InputError(f"focalise expects an unfocused ({DA}) derivation, got {system}")
    out = focalise(d.conclusion, d)
    _emit(to_json(out, DA_FOC))
    return 0


def cmd_cutelim(args) -> int:
    d, system = from_json(_read_json(args.input))
    if system == DA:
        replay(d, DA, general_identity=True)
        d = embed_da(d)
    elif system == DAF:
        replay(d, DAF)
    else:
        raise InputError(f"cutelim expects a {DAF} or {DA} derivation, got {system}")
    out = cut_eliminate(d, args.fuel)
    replay(out, DAF)
    assert count_cuts(out) == 0
    _emit(to_json(out, DAF))
    return 0


# --------------------------------------------------------------- selftest

def cmd_selftest(args) -> int:
    cfg = OracleConfig(max_connectives=args.max_connectives, atoms=tuple(args.atoms.split(",")),
                       max_antecedent=args.max_antecedent, samples=args.samples, seed=args.seed,
                       readings=not args.no_readings, node_budget=None)
    report = OracleReport()
    for s in corpus(cfg):
        found = check_sequent(s, cfg, report)
        if found:
            v = found[0]
            small = minimise(v.sequent, cfg, v.kind)
            print(f"violation ({v.kind}) on {sequent_text(v.sequent)}: {v.detail}")
            print(f"minimised counterexample: {sequent_text(small)}")
            print(report.summary())
            return 1
    print(report.summary())
    return 0


# ------------------------------------------------------------------- main

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="dafocus", description="Displacement calculus prover")
    sub = ap.add_subparsers(dest="command", required=True)

    def engines(p):
        g = p.add_mutually_exclusive_group()
        g.add_argument("--focused", action="store_true")
        g.add_argument("--unfocused", action="store_true")
        g.add_argument("--both", action="store_true")

    p = sub.add_parser("prove", help="prove a sequent")
    p.add_argument("sequent")
    engines(p)
    p.add_argument("--all", action="store_true", help="print every derivation found")
    p.add_argument("--max-proofs", type=int, default=DEFAULT_MAX_PROOFS)
    p.add_argument("--json", action="store_true")
    p.add_argument("--latex", action="store_true")
    p.add_argument("--declare", action="append", metavar="DECL", help="atom declaration, e.g. 'a bias +'")
    p.set_defaults(func=cmd_prove)

    p = sub.add_parser("parse", help="parse a sentence with a lexicon")
    p.add_argument("sentence")
    p.add_argument("-l", "--lexicon", default="base.lex")
    p.add_argument("-g", "--goal", default="S")
    engines(p)
    p.add_argument("--max-proofs", type=int, default=DEFAULT_MAX_PROOFS)
    p.add_argument("--cap", type=int, default=10**4, help="maximum number of candidate sequents")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("compare", help="proof and reading counts of both engines")
    p.add_argument("sequent")
    p.add_argument("--max-proofs", type=int, default=DEFAULT_MAX_PROOFS)
    p.add_argument("--json", action="store_true")
    p.add_argument("--declare", action="append", metavar="DECL")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("focalise", help="focused derivation from an unfocused one (JSON)")
    p.add_argument("input", nargs="?", default="-")
    p.set_defaults(func=cmd_focalise)

    p = sub.add_parser("cutelim", help="eliminate cuts from a weak focused derivation (JSON)")
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("--fuel", type=int, default=10**6)
    p.set_defaults(func=cmd_cutelim)

    p = sub.add_parser("selftest", help="dual-engine oracle over generated sequents")
    p.add_argument("--max-connectives", type=int, default=2)
    p.add_argument("--max-antecedent", type=int, default=3)
    p.add_argument("--atoms", default="a,b")
    p.add_argument("--samples", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--no-readings", action="store_true")
    p.set_defaults(func=cmd_selftest)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, KeyError, OSError) as e:
        # syntax, sort, lexicon and replay errors are all ValueErrors
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
