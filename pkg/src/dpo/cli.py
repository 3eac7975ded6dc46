"""Batch command-line front-end over the engine.

Exit codes are stable: 0 ok, 1 parse/precondition failure, 2 dangling
condition violated, 3 check verdict false, 4 derivations dependent,
5 internal inconsistency. Machine-readable JSON reports go to standard
output; a human summary goes to standard error unless ``--json`` is given.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import io, randgen
from .diagrams import is_pullback, is_pushout_injective
from .errors import (
    DanglingConditionError,
    DependentDerivationsError,
    FormatError,
    InternalConsistencyError,
    PreconditionError,
)
from .graph import is_isomorphic, validate_graph
from .independence import (
    ParallelPair,
    commute,
    parallel_independent,
    verify_commutation_squares,
)
from .morphism import validate_morphism
from .rewriting import Match, apply, dangling_condition, find_matches, validate_rule

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_DANGLING = 2
EXIT_VERDICT_FALSE = 3
EXIT_DEPENDENT = 4
EXIT_INTERNAL = 5


def _emit(doc: dict, summary: str, args: argparse.Namespace) -> None:
    print(json.dumps(doc, indent=2, sort_keys=True))
    if not args.json:
        print(summary, file=sys.stderr)


def _load_match(selector_index: int | None, selector_file: str | None, rule, host) -> Match:
    if selector_file is not None:
        m = io.load_morphism(selector_file, source=rule.L, target=host)
        report = validate_morphism(m)
        if not report.ok:
            raise PreconditionError(f"match file invalid: {report.violations[0]}")
        return Match(m)
    matches = find_matches(rule, host)
    index = selector_index or 0
    if index >= len(matches):
        raise PreconditionError(f"match index {index} out of range ({len(matches)} matches)")
    return matches[index]


def _parse_selector(value: str) -> tuple[int | None, str | None]:
    try:
        return int(value), None
    except ValueError:
        return None, value


def cmd_validate(args: argparse.Namespace) -> int:
    doc = io.load_json(args.path)
    if isinstance(doc, dict) and {"L", "K", "R"} <= set(doc):
        kind, report = "rule", validate_rule(io.rule_from_json(doc))
    elif isinstance(doc, dict) and "nodes" in doc:
        kind, report = "graph", validate_graph(io.graph_from_json(doc))
    elif isinstance(doc, dict) and "fv" in doc:
        kind, report = "morphism", validate_morphism(io.load_morphism(args.path))
    else:
        raise FormatError("unrecognized document kind")
    _emit(
        {
            "kind": kind,
            "ok": report.ok,
            "violations": [{"clause": v.clause, "item": v.item} for v in report.violations],
        },
        f"{kind}: {'ok' if report.ok else f'{len(report.violations)} violation(s)'}",
        args,
    )
    return EXIT_OK if report.ok else EXIT_VERDICT_FALSE


def cmd_iso(args: argparse.Namespace) -> int:
    g = io.load_graph(args.graph1)
    h = io.load_graph(args.graph2)
    witness = is_isomorphic(g, h)
    _emit(
        {
            "isomorphic": witness is not None,
            "witness": io.iso_witness_to_json(witness) if witness else None,
        },
        "isomorphic" if witness else "not isomorphic",
        args,
    )
    return EXIT_OK if witness else EXIT_VERDICT_FALSE


def cmd_match(args: argparse.Namespace) -> int:
    rule = io.load_rule(args.rule)
    host = io.load_graph(args.graph)
    matches = find_matches(rule, host)
    _emit(
        {"count": len(matches), "matches": [io.morphism_to_json(m.m) for m in matches]},
        f"{len(matches)} match(es)",
        args,
    )
    return EXIT_OK


def cmd_apply(args: argparse.Namespace) -> int:
    rule = io.load_rule(args.rule)
    host = io.load_graph(args.graph)
    rv = validate_rule(rule)
    if not rv.ok:
        raise PreconditionError(f"rule invalid: {rv.violations[0]}")
    match = _load_match(args.match_index, args.match, rule, host)
    report = dangling_condition(rule, match)
    if not report:
        print(json.dumps(io.check_report_to_json(report), indent=2), file=sys.stderr)
        raise DanglingConditionError(report.counterexample or ())
    derivation = apply(rule, match)
    left = is_pushout_injective(derivation.left_square)
    right = is_pushout_injective(derivation.right_square)
    io.save_json(io.graph_to_json(derivation.H), args.out)
    trace_path = args.trace or str(Path(args.out).with_suffix("")) + ".trace.json"
    io.save_json(io.derivation_trace_json(derivation, left, right), trace_path)
    if args.dot:
        Path(args.dot).write_text(io.to_dot(derivation.H), encoding="utf-8")
    _emit(
        {
            "out": str(args.out),
            "trace": str(trace_path),
            "nodes": len(derivation.H.nodes),
            "edges": len(derivation.H.edges),
        },
        f"wrote {args.out} ({len(derivation.H.nodes)} nodes, {len(derivation.H.edges)} edges)",
        args,
    )
    return EXIT_OK


def cmd_check_square(args: argparse.Namespace) -> int:
    square = io.load_square(args.square)
    check = is_pushout_injective if args.mode == "pushout" else is_pullback
    report = check(square)
    _emit(
        io.check_report_to_json(report),
        f"{args.mode}: {'yes' if report.verdict else f'no ({report.failed_clause})'}",
        args,
    )
    return EXIT_OK if report.verdict else EXIT_VERDICT_FALSE


def _build_pair(args: argparse.Namespace) -> ParallelPair:
    rule1 = io.load_rule(args.rule1)
    rule2 = io.load_rule(args.rule2)
    host = io.load_graph(args.graph)
    idx1, file1 = _parse_selector(args.match1)
    idx2, file2 = _parse_selector(args.match2)
    m1 = _load_match(idx1, file1, rule1, host)
    m2 = _load_match(idx2, file2, rule2, host)
    return ParallelPair(apply(rule1, m1), apply(rule2, m2))


def _blocking_items(pair: ParallelPair) -> list[dict]:
    blocked = []
    for side, m, context in (
        ("L1 into D2", pair.d1.match.m, pair.d2.deletion.D),
        ("L2 into D1", pair.d2.match.m, pair.d1.deletion.D),
    ):
        for v in sorted(m.source.nodes):
            if m.fv[v] not in context.nodes:
                blocked.append({"triangle": side, "item": ["node", m.fv[v]]})
        for e in sorted(m.source.edges):
            if m.fe[e] not in context.edges:
                blocked.append({"triangle": side, "item": ["edge", m.fe[e]]})
    return blocked


def cmd_independent(args: argparse.Namespace) -> int:
    pair = _build_pair(args)
    witness = parallel_independent(pair)
    if witness is None:
        blocked = _blocking_items(pair)
        _emit(
            {"independent": False, "blocked": blocked},
            f"dependent ({len(blocked)} blocking item(s))",
            args,
        )
        return EXIT_DEPENDENT
    _emit(
        {
            "independent": True,
            "j1": io.morphism_to_json(witness.j1),
            "j2": io.morphism_to_json(witness.j2),
        },
        "parallel independent",
        args,
    )
    return EXIT_OK


def cmd_commute(args: argparse.Namespace) -> int:
    pair = _build_pair(args)
    witness = parallel_independent(pair)
    if witness is None:
        blocked = _blocking_items(pair)
        _emit(
            {"independent": False, "blocked": blocked},
            f"dependent ({len(blocked)} blocking item(s))",
            args,
        )
        return EXIT_DEPENDENT
    result = commute(pair)
    squares = verify_commutation_squares(pair, witness, result)
    if not squares:
        raise InternalConsistencyError(
            f"commutation squares failed verification: {squares.failed_clause}"
        )
    io.save_json(io.graph_to_json(result.Gp), args.out)
    report = {
        "G_prime": io.graph_to_json(result.Gp),
        "residual_match_2": io.morphism_to_json(result.e1.match.m),
        "residual_match_1": io.morphism_to_json(result.e2.match.m),
        "iso": io.iso_witness_to_json(result.iso),
        "squares": io.check_report_to_json(squares),
    }
    report_path = args.report or str(Path(args.out).with_suffix("")) + ".report.json"
    io.save_json(report, report_path)
    if args.dot:
        Path(args.dot).write_text(io.to_dot(result.Gp), encoding="utf-8")
    _emit(
        {"out": str(args.out), "report": str(report_path), "nodes": len(result.Gp.nodes)},
        f"commuted; wrote {args.out}",
        args,
    )
    return EXIT_OK


def cmd_gen(args: argparse.Namespace) -> int:
    rng = random.Random(args.seed)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for i in range(args.graphs):
        path = out / f"graph_{i}.json"
        io.save_json(io.graph_to_json(randgen.random_graph(rng)), path)
        written.append(str(path))
    for i in range(args.rules):
        path = out / f"rule_{i}.json"
        io.save_json(io.rule_to_json(randgen.random_rule(rng)), path)
        written.append(str(path))
    _emit({"written": written}, f"wrote {len(written)} file(s) to {out}", args)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dpo", description=__doc__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine report only")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("validate", parents=[common], help="validate a graph, rule or morphism file")
    p.add_argument("path")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("iso", parents=[common], help="test two graph files for isomorphism")
    p.add_argument("graph1")
    p.add_argument("graph2")
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("match", parents=[common], help="enumerate injective matches of a rule")
    p.add_argument("rule")
    p.add_argument("graph")
    p.set_defaults(func=cmd_match)

    p = sub.add_parser("apply", parents=[common], help="apply a rule at a match")
    p.add_argument("rule")
    p.add_argument("graph")
    p.add_argument("--match-index", type=int, default=None)
    p.add_argument("--match", default=None, help="explicit morphism file")
    p.add_argument("--out", required=True)
    p.add_argument("--trace", default=None)
    p.add_argument("--dot", default=None, help="also write the result in DOT syntax")
    p.set_defaults(func=cmd_apply)

    p = sub.add_parser("check-square", parents=[common], help="check a square file as pushout or pullback")
    p.add_argument("square")
    p.add_argument("--mode", choices=("pushout", "pullback"), required=True)
    p.set_defaults(func=cmd_check_square)

    for verb, func in (("independent", cmd_independent), ("commute", cmd_commute)):
        p = sub.add_parser(verb, parents=[common])
        p.add_argument("rule1")
        p.add_argument("rule2")
        p.add_argument("graph")
        p.add_argument("--match1", required=True, help="match index or morphism file")
        p.add_argument("--match2", required=True, help="match index or morphism file")
        if verb == "commute":
            p.add_argument("--out", required=True)
            p.add_argument("--report", default=None)
            p.add_argument("--dot", default=None)
        p.set_defaults(func=func)

    p = sub.add_parser("gen", parents=[common], help="generate a random test corpus")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.add_argument("--graphs", type=int, default=4)
    p.add_argument("--rules", type=int, default=2)
    p.set_defaults(func=cmd_gen)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DependentDerivationsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEPENDENT
    except DanglingConditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DANGLING
    except (FormatError, PreconditionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except InternalConsistencyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


def console_main() -> None:
    sys.exit(main())
