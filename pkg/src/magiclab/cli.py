"""Command-line surface.

Subcommands: construct (family witnesses), verify (labeling audit), index
(exact search), rect (rectangle constructions), eit (tournament feasibility
and schedules).  JSON is the machine interface; tables are for humans.

Exit codes: 0 success / magic / feasible, 1 verified-not-magic or
infeasible, 2 usage, parse, or hypothesis errors, 3 indeterminate outcomes
(unknown at cap, exhausted budget, undecided feasibility).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import families, rectangles, search
from .graphs import Graph, graph_from_json, parse_edge_list, regular_degree
from .labeling import Labeling, labeling_from_json, verify_s_magic

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_INDETERMINATE = 3


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_USAGE):
        super().__init__(message)
        self.code = code


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from exc


def _load_graph(path: str, one_indexed: bool) -> Graph:
    text = _read_text(path)
    stripped = text.lstrip()
    try:
        if stripped.startswith("{"):
            return graph_from_json(json.loads(text))
        return parse_edge_list(text, one_indexed=one_indexed)
    except ValueError as exc:
        raise CliError(f"{path}: {exc}") from exc


def _load_labeling(path: str) -> Labeling:
    text = _read_text(path)
    stripped = text.lstrip()
    try:
        if stripped.startswith("{"):
            return labeling_from_json(json.loads(text))
        values = [int(tok) for tok in text.split()]
        if not values:
            raise ValueError("no labels found")
        return Labeling(tuple(values))
    except ValueError as exc:
        raise CliError(f"{path}: {exc}") from exc


def _print_json(doc: dict) -> None:
    print(json.dumps(doc, indent=2))


def _default_budget_ms() -> float | None:
    raw = os.environ.get("MAGICLAB_BUDGET_MS", "").strip()
    if not raw:
        return None
    try:
        return float(raw)
    except ValueError:
        raise CliError(f"MAGICLAB_BUDGET_MS is not a number: {raw!r}")


def _search_config(args: argparse.Namespace) -> search.SearchConfig:
    budget_ms = args.budget_ms if args.budget_ms is not None else _default_budget_ms()
    return search.SearchConfig(
        theta_cap=args.cap,
        node_limit=args.budget,
        budget_ms=budget_ms,
    )


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_construct(args: argparse.Namespace) -> int:
    try:
        if args.family == "hnp":
            result = families.theta_hnp(args.n, args.p)
        elif args.family == "m-hnp":
            result = families.theta_m_hnp(args.m, args.n, args.p)
        elif args.family == "m-cycle-lex":
            result = families.theta_m_cycle_lex(args.m, args.p, args.n)
        else:  # lex
            if not args.base:
                raise CliError("--family lex requires --base <edgelist>")
            base = _load_graph(args.base, args.one_indexed)
            result = families.theta_lex_blowup(base, args.n)
    except (families.HypothesisError, families.NotRegularError, ValueError) as exc:
        raise CliError(str(exc)) from exc
    if args.out == "csv":
        if result.witness is None:
            raise CliError(
                "no witness labeling constructed for this branch; "
                "use `magiclab index` on the built graph for a desk-scale search",
                code=EXIT_INDETERMINATE,
            )
        print("vertex,label")
        for v, lab in enumerate(result.witness.labels):
            print(f"{v},{lab}")
    else:
        _print_json(result.to_json_dict())
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace) -> int:
    graph = _load_graph(args.graph, args.one_indexed)
    labeling = _load_labeling(args.labels)
    try:
        report = verify_s_magic(graph, labeling)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    _print_json(report.to_json_dict())
    return EXIT_OK if report.is_magic else EXIT_NEGATIVE


def _cmd_index(args: argparse.Namespace) -> int:
    graph = _load_graph(args.graph, args.one_indexed)
    result = search.compute_index(graph, _search_config(args))
    _print_json(result.to_json_dict())
    if result.kind in ("finite", "infinite"):
        return EXIT_OK
    return EXIT_INDETERMINATE


def _build_rect(args: argparse.Namespace) -> list[rectangles.Rectangle]:
    case = args.case
    if case in ("1", "2"):
        if args.m is None:
            raise CliError(f"--case {case} requires --m")
        return [rectangles.case1(args.m) if case == "1" else rectangles.case2(args.m)]
    if case == "3":
        if args.n is None or args.m is None:
            raise CliError("--case 3 requires --n and --m")
        return [rectangles.case3(args.n, args.m)]
    if case in ("even", "odd"):
        if args.n is None or args.p is None:
            raise CliError(f"--case {case} requires --n and --p")
        build = rectangles.balanced_even if case == "even" else rectangles.balanced_odd
        return [build(args.n, args.p)]
    if case == "complement":
        if not args.input:
            raise CliError("--case complement requires --input")
        rect = rectangles.rectangle_from_csv(_read_text(args.input))
        return [rectangles.complement(rect)]
    # split
    if not args.input or args.pieces is None:
        raise CliError("--case split requires --input and --pieces")
    rect = rectangles.rectangle_from_csv(_read_text(args.input))
    return rectangles.split(rect, args.pieces)


def _cmd_rect(args: argparse.Namespace) -> int:
    try:
        rects = _build_rect(args)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    if args.out == "json":
        docs = [rectangles.rectangle_to_json(r) for r in rects]
        _print_json(docs[0] if len(docs) == 1 else {"pieces": docs})
    else:
        chunks = []
        for k, rect in enumerate(rects):
            head = f"# piece {k}\n" if len(rects) > 1 else ""
            chunks.append(head + rectangles.rectangle_to_csv(rect))
        print("\n".join(chunks), end="")
    return EXIT_OK


def _cmd_eit(args: argparse.Namespace) -> int:
    if args.graph:
        graph = _load_graph(args.graph, args.one_indexed)
        if graph.order != args.teams:
            raise CliError(
                f"--teams {args.teams} does not match graph order {graph.order}"
            )
        r = regular_degree(graph)
        if r != args.rounds:
            raise CliError(
                f"--rounds {args.rounds} does not match graph degree {r}"
            )
        if args.labels:
            labeling = _load_labeling(args.labels)
        else:
            result = search.compute_index(graph, _search_config(args))
            if result.witness is None:
                _print_json(result.to_json_dict())
                return EXIT_INDETERMINATE
            labeling = result.witness
        try:
            schedule = families.eit_schedule(graph, labeling)
        except (families.NotMagicError, families.NotRegularError) as exc:
            raise CliError(str(exc), code=EXIT_NEGATIVE) from exc
        if args.format == "table":
            print(families.schedule_table(schedule), end="")
        else:
            _print_json(schedule)
        return EXIT_OK
    try:
        verdict = families.eit_feasible(args.teams, args.rounds)
    except families.HypothesisError as exc:
        raise CliError(str(exc)) from exc
    if args.format == "table":
        state = {True: "feasible", False: "infeasible", None: "unknown"}[
            verdict.feasible
        ]
        print(f"EIT({verdict.teams},{verdict.rounds}): {state} -- {verdict.reason}")
    else:
        _print_json(verdict.to_json_dict())
    if verdict.feasible is True:
        return EXIT_OK
    if verdict.feasible is False:
        return EXIT_NEGATIVE
    return EXIT_INDETERMINATE


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="magiclab",
        description="Distance magic and S-magic graph labelings: "
        "constructions, verification, and exact index search.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="closed-form index and witness for a family")
    c.add_argument("--family", required=True, choices=["hnp", "m-hnp", "m-cycle-lex", "lex"])
    c.add_argument("--n", type=int, required=True, help="part / fiber size")
    c.add_argument("--p", type=int, default=0, help="part count or cycle length")
    c.add_argument("--m", type=int, default=1, help="number of disjoint copies")
    c.add_argument("--base", help="edge-list file for --family lex")
    c.add_argument("--out", choices=["json", "csv"], default="json")
    c.add_argument("--one-indexed", action="store_true")
    c.set_defaults(func=_cmd_construct)

    v = sub.add_parser("verify", help="audit a labeling against a graph")
    v.add_argument("--graph", required=True)
    v.add_argument("--labels", required=True)
    v.add_argument("--one-indexed", action="store_true")
    v.set_defaults(func=_cmd_verify)

    i = sub.add_parser("index", help="exact distance magic index by search")
    i.add_argument("--graph", required=True)
    i.add_argument("--cap", type=int, default=1, help="largest index to explore")
    i.add_argument("--budget", type=int, default=None, help="backtracking node budget")
    i.add_argument("--budget-ms", type=float, default=None, help="wall-clock budget")
    i.add_argument("--one-indexed", action="store_true")
    i.set_defaults(func=_cmd_index)

    r = sub.add_parser("rect", help="build or transform label rectangles")
    r.add_argument(
        "--case",
        required=True,
        choices=["1", "2", "3", "even", "odd", "complement", "split"],
    )
    r.add_argument("--n", type=int)
    r.add_argument("--p", type=int)
    r.add_argument("--m", type=int)
    r.add_argument("--input", help="CSV rectangle for complement/split")
    r.add_argument("--pieces", type=int, help="piece count for split")
    r.add_argument("--out", choices=["csv", "json"], default="csv")
    r.set_defaults(func=_cmd_rect)

    e = sub.add_parser("eit", help="equalized tournament feasibility / schedule")
    e.add_argument("--teams", type=int, required=True)
    e.add_argument("--rounds", type=int, required=True)
    e.add_argument("--graph", help="tournament graph; emits a schedule")
    e.add_argument("--labels", help="labeling file; searched for when absent")
    e.add_argument("--format", choices=["json", "table"], default="json")
    e.add_argument("--cap", type=int, default=1)
    e.add_argument("--budget", type=int, default=None)
    e.add_argument("--budget-ms", type=float, default=None)
    e.add_argument("--one-indexed", action="store_true")
    e.set_defaults(func=_cmd_eit)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors, matching our contract
        return int(exc.code or 0)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
