# cremona/cli.py
"""
Command-line front end.

Expressions are products of generators read right to left: in "sigma * tau" tau is applied
first.  Every subcommand accepts --json; domain failures exit with 1 and print the error name
and payload on stderr, malformed input exits with 2.
"""
import argparse
import json
import logging
import sys
from typing import Any, Dict, List, Optional, Sequence

from cremona.amalgam import rewrite_identity, trace_from_jsonl, verify_trace, word_to_dicts, format_word
from cremona.bubble import base_points, sorted_points
from cremona.config import DEFAULT_FIELD, FUZZ_MAX_LENGTH, FUZZ_SEED, FUZZ_TRIALS, LOG_FORMAT, LOG_LEVEL
from cremona.decompose import decompose
from cremona.errors import CremonaError, NotDeJonquieres, UsageError
from cremona.expressions import parse_expression, to_map, to_word
from cremona.jonq import cremona_to_jonq
from cremona.polymap import CremonaMap
from cremona.scalar import field_from_spec, field_spec

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_USAGE = 2


class _ArgumentParser(argparse.ArgumentParser):
    """Parse failures surface as UsageError so main() owns every exit code."""

    def error(self, message):
        raise UsageError(message)


def _emit(args, payload: Dict[str, Any], lines: Sequence[str]):
    if args.json:
        print(json.dumps({"status": "ok", **payload}, indent=2))
    else:
        for line in lines:
            print(line)


def _map_payload(f: CremonaMap) -> Dict[str, Any]:
    return {"map": f.to_strings(), "degree": f.degree}


def _read_map(args) -> CremonaMap:
    return to_map(parse_expression(args.expression, args.field), args.field)


# --- Subcommands ---

def cmd_compose(args) -> int:
    f = _read_map(args)
    _emit(args, _map_payload(f), [str(f), f"degree {f.degree}"])
    return EXIT_OK


def cmd_degree(args) -> int:
    f = _read_map(args)
    _emit(args, {"degree": f.degree}, [str(f.degree)])
    return EXIT_OK


def cmd_basepoints(args) -> int:
    f = _read_map(args)
    points = sorted_points(base_points(f)) if f.degree > 1 else []
    records = [{"point": str(q), "multiplicity": m, "depth": q.depth} for q, m in points]
    lines = [f"{q}  m={m}" + ("" if q.is_proper() else f"  (infinitely near, depth {q.depth})") for q, m in points]
    lines.append(f"degree {f.degree}, sum {sum(m for _, m in points)}, sum of squares {sum(m * m for _, m in points)}")
    _emit(args, {**_map_payload(f), "points": records}, lines)
    return EXIT_OK


def cmd_jmember(args) -> int:
    f = _read_map(args)
    try:
        g = cremona_to_jonq(f)
    except NotDeJonquieres:
        _emit(args, {**_map_payload(f), "member": False}, ["not in J"])
        return EXIT_OK
    _emit(args, {**_map_payload(f), "member": True, "pair": g.to_strings()}, ["in J", str(g)])
    return EXIT_OK


def cmd_decompose(args) -> int:
    f = _read_map(args)
    result = decompose(f)
    lines = [format_word(result.word) or "id"]
    lines.extend(f"  {s.degree_before} -> {s.degree_after} via {', '.join(s.points)} ({s.core})" for s in result.steps)
    _emit(args, {**_map_payload(f), **result.to_dict()}, lines)
    return EXIT_OK


def cmd_rewrite(args) -> int:
    word = to_word(parse_expression(args.expression, args.field), args.field)
    outcome = rewrite_identity(word, args.field, args.budget)
    if args.trace:
        with open(args.trace, "w", encoding="utf-8") as handle:
            handle.write(outcome.trace.to_jsonl())
        logger.info(f"Trace written to {args.trace}")
    summary = outcome.to_dict()
    lines = [f"input  {format_word(word) or 'id'}",
             f"final  {format_word(outcome.trace.final) or '(empty word)'}",
             f"moves  {summary['moves']} elementary, {summary['top_level_moves']} top-level "
             f"(budget {outcome.budget})",
             f"kinds  {', '.join(summary['kinds']) or '-'}"]
    lines.extend(f"  {s['case']}: {s['before']} -> {s['after']}" for s in outcome.steps)
    payload = {**summary, "initial": word_to_dicts(word), "final": word_to_dicts(outcome.trace.final)}
    if args.trace:
        payload["trace_file"] = args.trace
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_verify(args) -> int:
    path = args.trace_file or args.trace
    if not path:
        raise UsageError("verify needs a trace file (positional or --trace).")
    try:
        with open(path, encoding="utf-8") as handle:
            trace = trace_from_jsonl(handle.read())
    except OSError as e:
        raise UsageError(f"Cannot read trace file '{path}': {e}", path=path)
    ok, index, reason = verify_trace(trace)
    payload = {"verdict": "OK" if ok else "REJECTED", "first_failing_move": index, "reason": reason,
               "moves": len(trace.moves), "field": trace.base_field}
    if args.json:
        print(json.dumps({"status": "ok" if ok else "rejected", **payload}, indent=2))
    else:
        print("OK" if ok else f"REJECTED at move {index}: {reason}")
    return EXIT_OK if ok else EXIT_DOMAIN


def cmd_fuzz(args) -> int:
    from fuzz.main_processor import run_fuzz
    summary = run_fuzz(trials=args.trials, seed=args.seed, field=args.field, max_length=args.max_length,
                       mode=args.mode, budget=args.budget, db_path=args.db)
    lines = [f"{summary['ok']}/{summary['trials']} trial(s) reduced and verified (seed {summary['seed']})",
             f"cases {summary['cases']}",
             f"max moves {summary['max_moves']}"]
    if summary["failing_trials"]:
        lines.append(f"failing trials {summary['failing_trials']} {summary['statuses']}")
    _emit(args, summary, lines)
    return EXIT_OK if not summary["failing_trials"] else EXIT_DOMAIN


# --- Parser ---

def build_parser() -> argparse.ArgumentParser:
    common = _ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="Machine-readable output on stdout.")
    common.add_argument("--field", default=DEFAULT_FIELD, metavar="q|fp:P", help="Base field (default %(default)s).")
    common.add_argument("--budget", type=int, default=None, metavar="N", help="Elementary move budget for rewriting.")
    common.add_argument("--trace", default=None, metavar="FILE", help="Trace file (JSON lines).")
    common.add_argument("--seed", type=int, default=FUZZ_SEED, metavar="N", help="Random seed for fuzzing.")

    parser = _ArgumentParser(prog="cremona", description="Exact computations with plane Cremona maps.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    for name, handler, help_text in (
        ("compose", cmd_compose, "Evaluate an expression to a polynomial triple."),
        ("degree", cmd_degree, "Degree of the map an expression denotes."),
        ("basepoints", cmd_basepoints, "Base points (proper and infinitely near) with multiplicities."),
        ("jmember", cmd_jmember, "Test membership in the de Jonquieres group."),
        ("decompose", cmd_decompose, "Write a map as a word in linear and de Jonquieres letters."),
        ("rewrite", cmd_rewrite, "Reduce an identity word to the empty word with a certificate."),
    ):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("expression", help="e.g. 'sigma * tau', '[Y*Z : X*Z : X*Y]', 'A[1,0,0;0,0,1;0,1,0]'")
        p.set_defaults(handler=handler)

    p = sub.add_parser("verify", parents=[common], help="Replay a trace file and report the verdict.")
    p.add_argument("trace_file", nargs="?", default=None, help="Trace file (or use --trace).")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("fuzz", parents=[common], help="Reduce and verify random identity words.")
    p.add_argument("--trials", type=int, default=FUZZ_TRIALS, metavar="N")
    p.add_argument("--max-length", type=int, default=FUZZ_MAX_LENGTH, metavar="N",
                   help="Maximal length of the random half g.")
    p.add_argument("--mode", choices=("decomposed", "formal"), default="decomposed")
    p.add_argument("--db", default=None, metavar="FILE", help="Store per-trial rows in this SQLite file.")
    p.set_defaults(handler=cmd_fuzz)
    return parser


def _report(error: CremonaError, as_json: bool):
    data = error.to_dict()
    if as_json:
        print(json.dumps(data), file=sys.stderr)
    else:
        print(f"{data['error']}: {data['message']}", file=sys.stderr)
        if data["details"]:
            print(json.dumps(data["details"]), file=sys.stderr)


def main(argv: Optional[List[str]] = None) -> int:
    logging.basicConfig(level=LOG_LEVEL, format=LOG_FORMAT)
    argv = list(sys.argv[1:] if argv is None else argv)
    as_json = "--json" in argv
    try:
        args = build_parser().parse_args(argv)
        args.field = field_from_spec(args.field)
        logger.debug(f"Running '{args.command}' over {field_spec(args.field)}")
        return args.handler(args)
    except UsageError as e:
        _report(e, as_json)
        return EXIT_USAGE
    except CremonaError as e:
        _report(e, as_json)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
