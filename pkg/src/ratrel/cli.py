"""Command line front door: ``ratrel member|encode|classify|suite|dot|witness``.

Output is JSON on stdout unless ``--pretty`` is given.  Exit codes: 0
success, 1 property failure, 2 input error, 3 domain error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Callable

from . import coding, relations, transducer
from .buchi import automaton_A, automaton_A_complement
from .grid import GridError, GridSpec, in_P, in_S
from .suites import SUITES, run_suite
from .transducer import BuchiTransducer, TransducerError
from .words import AlphabetError, WordError, parse_lasso

OK, PROPERTY_FAILURE, INPUT_ERROR, DOMAIN_ERROR = 0, 1, 2, 3


class InputError(Exception):
    pass


BUILTINS: dict[str, Callable[[], BuchiTransducer]] = {
    "T": relations.build_T,
    "T1": relations.build_T1,
    "C1": coding.build_C1_transducer,
    "C2": coding.build_C2_transducer,
    "C3": coding.build_C3_transducer,
    "C4": coding.build_C4_transducer,
    "complement": coding.build_complement_transducer,
    "S": relations.build_S_relation,
    "P": relations.build_P_relation,
}

AUTOMATA = {"A": automaton_A, "A_complement": automaton_A_complement}


def _emit(data: Any, pretty: bool, text: str | None = None) -> None:
    if pretty and text is not None:
        print(text)
    else:
        print(json.dumps(data, sort_keys=False))


def _read_json(path: str) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def _load_transducer(name: str) -> BuchiTransducer:
    if name in BUILTINS:
        return BUILTINS[name]()
    if not Path(name).exists():
        raise InputError(f"{name!r} is neither a builtin ({', '.join(BUILTINS)}) nor a file")
    try:
        return BuchiTransducer.from_json(_read_json(name))
    except (TransducerError, AlphabetError, KeyError, TypeError) as exc:
        raise InputError(f"bad transducer in {name}: {exc}") from exc


def _load_grid(path: str) -> GridSpec:
    try:
        return GridSpec.from_json(_read_json(path))
    except (GridError, AttributeError) as exc:
        raise InputError(f"bad grid in {path}: {exc}") from exc


def _lasso(text: str):
    try:
        return parse_lasso(text)
    except WordError as exc:
        raise InputError(str(exc)) from exc


def cmd_member(args) -> int:
    T = _load_transducer(args.transducer)
    u, v = _lasso(args.u), _lasso(args.v)
    try:
        accepted = transducer.accepts_pair(T, u, v)
    except AlphabetError as exc:
        raise InputError(str(exc)) from exc
    if not args.witness:
        _emit(accepted, args.pretty, "accepted" if accepted else "rejected")
        return OK
    out: dict[str, Any] = {"accepted": accepted}
    if accepted:
        lasso = transducer.find_accepting_lasso(T, u, v)
        run = lasso.prefix(T, lasso.threshold)
        report = transducer.validate_run(T, run, run.consumed_input, run.consumed_output)
        out["component"] = [list(c) for c in lasso.component]
        out["stem_length"] = len(lasso.stem)
        out["cycle_length"] = len(lasso.cycle)
        out["run"] = run.to_json()
        out["validation"] = report.to_json()
    text = None
    if args.pretty:
        lines = ["accepted" if accepted else "rejected"]
        if accepted:
            lines.append(f"accepting component: {len(out['component'])} configurations")
            lines += [f"  {t['from']} --{t['input'] or 'ε'}/{t['output'] or 'ε'}--> {t['to']}"
                      for t in out["run"]["transitions"]]
            lines.append(f"valid: {out['validation']['valid']}, "
                         f"final visits: {out['validation']['final_visits']}")
        text = "\n".join(lines)
    _emit(out, args.pretty, text)
    return OK


def cmd_encode(args) -> int:
    g = _load_grid(args.grid)
    if args.nblocks < 0:
        raise InputError("nblocks must be non-negative")
    p1, p2 = coding.encode_prefix(g, args.nblocks)
    _emit([p1, p2], args.pretty, f"{p1}\n{p2}")
    return OK


def cmd_classify(args) -> int:
    g = _load_grid(args.grid)
    verdict = {
        "in_S": in_S(g),
        "in_P": in_P(g),
        "r_holds_for_code": relations.r_holds_for_code(g),
        "r1_holds_for_code": relations.r1_holds_for_code(g),
    }
    verdict["consistent"] = (verdict["in_S"] == verdict["r_holds_for_code"]
                             and verdict["in_P"] == verdict["r1_holds_for_code"])
    _emit(verdict, args.pretty, "\n".join(f"{k}: {str(v).lower()}" for k, v in verdict.items()))
    if not verdict["consistent"]:
        print("REDUCTION VIOLATION", file=sys.stderr)
        return PROPERTY_FAILURE
    return OK


def cmd_suite(args) -> int:
    report = run_suite(args.name, args.seed, args.n)
    data = report.to_json()
    text = None
    if args.pretty:
        parts = report.parts or [report]
        text = "\n".join(f"{p.suite}: {p.cases} cases, {len(p.failures)} failures" for p in parts)
    _emit(data, args.pretty, text)
    # timing varies run to run, so it stays off stdout
    print(f"wall time {report.wall_time:.3f}s", file=sys.stderr)
    return OK if report.ok else PROPERTY_FAILURE


def cmd_dot(args) -> int:
    if args.name in AUTOMATA:
        obj = AUTOMATA[args.name]()
    else:
        obj = _load_transducer(args.name)
    if args.format == "json":
        print(json.dumps(obj.to_json()))
    elif isinstance(obj, BuchiTransducer):
        print(transducer.to_dot(obj, args.name), end="")
    else:
        print(obj.to_dot(args.name), end="")
    return OK


def cmd_witness(args) -> int:
    g = _load_grid(args.grid)
    if args.column < 1 or args.nblocks < 1:
        raise InputError("column and nblocks must be positive")
    try:
        run = relations.witness_run(g, args.column, args.nblocks)
    except relations.DeadColumnError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return DOMAIN_ERROR
    p1, p2 = coding.encode_prefix(g, args.nblocks)
    T = relations.build_T()
    report = transducer.validate_run(T, run, p1, run.consumed_output)
    if not p2.startswith(run.consumed_output):
        report = transducer.RunReport(False, report.final_visits, len(run.transitions),
                                      "tape 2 is not a prefix of the code")
    out = {"run": run.to_json(), "validation": report.to_json()}
    text = None
    if args.pretty:
        lines = [f"  {t.source} --{t.label()}--> {t.target}" for t in run.transitions]
        lines.append(f"valid: {report.valid}, final visits: {report.final_visits}")
        text = "\n".join(lines)
    _emit(out, args.pretty, text)
    return OK if report.valid else PROPERTY_FAILURE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ratrel", description=__doc__.splitlines()[0])
    parser.add_argument("--pretty", action="store_true", help="human-readable output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("member", help="decide membership of a lasso pair")
    p.add_argument("transducer", help=f"builtin ({', '.join(BUILTINS)}) or transducer JSON file")
    p.add_argument("u", help="input lasso STEM|CYCLE")
    p.add_argument("v", help="output lasso STEM|CYCLE")
    p.add_argument("--witness", action="store_true", help="print an accepting run")
    p.set_defaults(func=cmd_member)

    p = sub.add_parser("encode", help="code prefixes of a grid")
    p.add_argument("grid")
    p.add_argument("nblocks", type=int)
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("classify", help="S/P membership and the reduction checks")
    p.add_argument("grid")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("suite", help="run a seeded property suite")
    p.add_argument("name", choices=["all", *SUITES])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-n", type=int, default=100)
    p.set_defaults(func=cmd_suite)

    p = sub.add_parser("dot", help="export a builtin as DOT or JSON")
    p.add_argument("name", help=f"builtin ({', '.join([*BUILTINS, *AUTOMATA])}) or JSON file")
    p.add_argument("--format", choices=["dot", "json"], default="dot")
    p.set_defaults(func=cmd_dot)

    p = sub.add_parser("witness", help="run of T over a grid code tracking one column")
    p.add_argument("grid")
    p.add_argument("column", type=int)
    p.add_argument("nblocks", type=int)
    p.set_defaults(func=cmd_witness)

    for p in sub.choices.values():
        p.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS,
                       help="human-readable output")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
