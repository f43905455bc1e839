"""Command line front end.

Subcommands: ``solve`` and ``analyze`` read a graph or position (JSON file,
``-`` for stdin), ``family`` emits a generated board, ``verify`` runs the
certified checks, ``search`` scans a corpus, ``serve`` starts the HTTP
service.  Exit code 0 on success, 1 on domain errors or failed checks, 2 on
usage errors.
"""

from __future__ import annotations

import argparse
import json
import pathlib
import sys
from concurrent.futures import ProcessPoolExecutor
from itertools import combinations_with_replacement

from . import families, search
from .families import FamilyError, FamilySpec
from .graph import GraphError, from_json
from .rules import (
    IllegalMoveError,
    InvalidPositionError,
    Position,
    position_from_json,
)
from .solver import (
    BudgetExceededError,
    SolveBudget,
    Solver,
    decompose,
    grundy_sum,
)
from .strategies import (
    CertificateViolationError,
    StrategyBudgetError,
    StrategyError,
    copycat_applicable,
    find_involutions,
    is_branching_tree,
    branching_tree_predict,
    ngon_special_predict,
    verify_copycat,
)
from .symmetry import SymmetryBudgetError

DOMAIN_ERRORS = (
    GraphError,
    IllegalMoveError,
    InvalidPositionError,
    FamilyError,
    StrategyError,
    StrategyBudgetError,
    CertificateViolationError,
    search.ScanStateError,
    BudgetExceededError,
    SymmetryBudgetError,
    json.JSONDecodeError,
    OSError,
)


# ----------------------------------------------------------------------
# input plumbing
# ----------------------------------------------------------------------


def _literal(text: str):
    """Best-effort typing for parameter values: int, bool, tuple, or string."""
    low = text.lower()
    if low in ("true", "false"):
        return low == "true"
    try:
        return int(text)
    except ValueError:
        pass
    if "," in text:
        return tuple(_literal(part) for part in text.split(","))
    return text


def _kv(text: str) -> tuple[str, object]:
    if "=" not in text:
        raise argparse.ArgumentTypeError(f"expected key=value, got {text!r}")
    key, value = text.split("=", 1)
    return key, _literal(value)


def _family_spec(text: str) -> FamilySpec:
    """Parse ``name`` or ``name:k=3,nested=true`` into a FamilySpec."""
    name, _, tail = text.partition(":")
    params = {}
    for item in filter(None, tail.split(",")):
        key, value = _kv(item)
        params[key] = value
    return FamilySpec.of(name, **params)


def _read_json(path: str):
    text = sys.stdin.read() if path == "-" else pathlib.Path(path).read_text()
    return json.loads(text)


def _load_position(args) -> Position:
    if getattr(args, "position", None):
        return position_from_json(_read_json(args.position))
    data = _read_json(args.graph)
    if isinstance(data, dict) and "orientation" in data:
        return position_from_json(data)
    return Position.empty(from_json(data))


def _budget(args) -> SolveBudget:
    return SolveBudget(max_nodes=getattr(args, "budget_nodes", None))


# ----------------------------------------------------------------------
# solve / analyze / family
# ----------------------------------------------------------------------


def _cmd_solve(args) -> int:
    pos = _load_position(args)
    s = Solver(pos.graph, budget=_budget(args))
    value = s.grundy(pos)
    win = "first" if value else "second"
    if args.json:
        print(json.dumps({"grundy": value, "winner": win, "nodes": s.nodes}))
    elif args.grundy:
        print(value)
    elif args.winner:
        print(win)
    else:
        print(f"grundy {value}")
        print(f"winner {win}")
    return 0


def _cmd_analyze(args) -> int:
    pos = _load_position(args)
    report = Solver(pos.graph, budget=_budget(args)).analyze(pos)
    if args.json:
        print(json.dumps(report.to_json()))
        return 0
    print(
        f"grundy {report.grundy}  winner {report.winner}  "
        f"moves {len(report.moves)}  nodes {report.nodes}"
    )
    for m in report.moves:
        mark = "  * winning" if m.winning else ""
        print(f"  {m.edge} {m.direction} -> grundy {m.child_grundy}{mark}")
    return 0


def _cmd_family(args) -> int:
    params: dict = {}
    if args.n is not None:
        params["n"] = args.n
    if args.seed is not None:
        params["seed"] = args.seed
    for key, value in args.param:
        params[key] = value
    g = families.generate(args.name, **params)
    print(json.dumps(g.to_json(), indent=2))
    return 0


# ----------------------------------------------------------------------
# verify: each check is (name, ok, detail, extra-json)
# ----------------------------------------------------------------------


def _emit_checks(checks: list[tuple], as_json: bool) -> int:
    if as_json:
        print(
            json.dumps(
                [
                    {"check": name, "ok": ok, "detail": detail, **(extra or {})}
                    for name, ok, detail, extra in checks
                ],
                indent=2,
            )
        )
    else:
        for name, ok, detail, _ in checks:
            print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
    return 0 if checks and all(c[1] for c in checks) else 1


def _verify_copycat(args) -> list[tuple]:
    g = from_json(_read_json(args.graph))
    involutions = find_involutions(g)
    usable = [h for h in involutions if copycat_applicable(g, h)]
    if not usable:
        why = (
            "no involution satisfies the cell condition"
            if involutions
            else "no involution with at most one fixed edge"
        )
        return [("copycat", False, why, None)]
    checks = []
    for i, h in enumerate(usable):
        try:
            cert = verify_copycat(g, h, budget_nodes=args.budget_nodes or 2_000_000)
        except (CertificateViolationError, StrategyBudgetError) as exc:
            checks.append((f"copycat[{i}]", False, str(exc), None))
            continue
        opening = (
            f", opening {cert.opening.edge} {cert.opening.direction}"
            if cert.opening
            else ""
        )
        checks.append(
            (
                f"copycat[{i}]",
                True,
                f"{cert.role} certificate{opening}, "
                f"{cert.positions} positions, {cert.pairs} pairs",
                {"certificate": cert.to_json()},
            )
        )
    return checks


def _tree_check(graph_json: dict) -> tuple[int, int, int]:
    g = from_json(graph_json)
    return g.size, Solver(g).grundy(), branching_tree_predict(g)


def _verify_branching_tree(args) -> list[tuple]:
    limit = args.n or 11
    trees = [t for t in families.enumerate_trees(limit) if is_branching_tree(t)]
    payloads = [t.to_json() for t in trees]
    if args.jobs and args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_tree_check, payloads))
    else:
        results = [_tree_check(p) for p in payloads]
    bad = [(size, got, want) for size, got, want in results if got != want]
    if bad:
        return [
            (
                "branching-tree",
                False,
                f"{len(bad)} of {len(results)} trees disagree, first: {bad[0]}",
                None,
            )
        ]
    return [
        (
            "branching-tree",
            True,
            f"all {len(results)} branching trees up to {limit} markable edges "
            "match the parity prediction",
            None,
        )
    ]


def _verify_ngon_special(args) -> list[tuple]:
    ns = [args.n] if args.n else list(range(3, 11))
    checks = []
    for n in ns:
        want = ngon_special_predict(n)
        got = Solver(families.cycle_with_special(n)).grundy()
        checks.append(
            (
                f"ngon-special n={n}",
                got == want,
                f"theorem value {want} "
                + ("matches solver" if got == want else f"!= solver value {got}"),
                None,
            )
        )
    return checks


def _verify_decomposition(args) -> list[tuple]:
    top = args.n or 5
    checks = []
    for a, b in combinations_with_replacement(range(3, top + 1), 2):
        g = families.wedge_cycles(a, b, special=True)
        whole = Solver(g).grundy()
        frags = decompose(Position.empty(g))
        xored = grundy_sum(frags)
        checks.append(
            (
                f"decomposition wedge({a},{b})",
                whole == xored and len(frags) == 2,
                f"whole {whole} vs xor {xored} over {len(frags)} fragments",
                None,
            )
        )
    return checks


def _verify_mathews_spiders(args) -> list[tuple]:
    checks = []
    for legs in ((2, 2, 2), (2, 2, 4), (2, 4, 4)):
        got = Solver(families.spider(legs)).grundy()
        checks.append(
            (
                f"mathews-spider {legs}",
                got == 0,
                f"even legs solve to grundy {got}",
                None,
            )
        )
    return checks


def _golden_check(entry: dict) -> dict:
    g = families.generate(entry["family"], **entry["params"])
    return {
        "digest": g.digest(),
        "size": g.size,
        "grundy": Solver(g).grundy(),
    }


def _verify_golden_suite(args) -> list[tuple]:
    entries = families.goldens()
    if args.jobs and args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_golden_check, entries))
    else:
        results = [_golden_check(e) for e in entries]
    checks = []
    for entry, got in zip(entries, results):
        label = search._spec_label(FamilySpec.of(entry["family"], **entry["params"]))
        mismatches = [
            f"{field} {got[field]} != {entry[field]}"
            for field in ("digest", "size", "grundy")
            if got[field] != entry[field]
        ]
        checks.append(
            (
                f"golden {label}",
                not mismatches,
                f"grundy {entry['grundy']}" if not mismatches else "; ".join(mismatches),
                None,
            )
        )
    return checks


_VERIFIERS = {
    "copycat": _verify_copycat,
    "branching-tree": _verify_branching_tree,
    "ngon-special": _verify_ngon_special,
    "decomposition": _verify_decomposition,
    "mathews-spiders": _verify_mathews_spiders,
    "golden-suite": _verify_golden_suite,
}


def _cmd_verify(args) -> int:
    return _emit_checks(_VERIFIERS[args.subject](args), args.json)


# ----------------------------------------------------------------------
# search / serve
# ----------------------------------------------------------------------


def _cmd_search(args) -> int:
    if args.trees is None and not args.family and not args.corpus:
        print("error: nothing to scan; give --trees, --family or --corpus",
              file=sys.stderr)
        return 2
    corpus: list = []
    if args.trees:
        corpus += search.corpus_from_trees(args.trees)
    for spec in args.family or []:
        corpus += search.corpus_from_families([spec])
    if args.corpus:
        corpus += search.corpus_from_file(args.corpus)
    report = search.scan_corpus(
        corpus,
        threshold=args.threshold,
        budget_nodes=args.budget_nodes,
        workers=args.jobs or 1,
        state_file=args.state,
    )
    if args.out:
        with open(args.out, "w") as fh:
            for record in report.records:
                fh.write(json.dumps(record.to_json()) + "\n")
    if args.json:
        if not args.out:
            for record in report.records:
                print(json.dumps(record.to_json()))
        print(json.dumps(report.summary()))
        return 0
    summary = report.summary()
    print(f"scanned {summary['graphs']} graphs (threshold {report.threshold})")
    for size, counts in summary["histogram"].items():
        line = ", ".join(f"grundy {g}: {c}" for g, c in counts.items())
        print(f"  markable {size}: {line}")
    for key in ("parityViolations", "highGrundy", "errors"):
        values = summary[key]
        print(f"{key}: {', '.join(values) if values else 'none'}")
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(
        create_app(budget_nodes=args.budget_nodes),
        host=args.host,
        port=args.port,
    )
    return 0


# ----------------------------------------------------------------------
# parser
# ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gameofcycles",
        description="Solve and explore the Game of Cycles.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def board_flags(p):
        p.add_argument("--graph", default="-", help="graph JSON file, - for stdin")
        p.add_argument("--position", help="position JSON file (graph + orientation)")
        p.add_argument("--budget-nodes", type=int, help="solver node budget")
        p.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("solve", help="grundy value / winner of a board")
    board_flags(p)
    pick = p.add_mutually_exclusive_group()
    pick.add_argument("--grundy", action="store_true", help="print only the grundy value")
    pick.add_argument("--winner", action="store_true", help="print only the winner")
    p.set_defaults(handler=_cmd_solve)

    p = sub.add_parser("analyze", help="per-move report for a board")
    board_flags(p)
    p.set_defaults(handler=_cmd_analyze)

    p = sub.add_parser("family", help="emit a family board as graph JSON")
    p.add_argument("name", help="family name, e.g. fishy")
    p.add_argument("--n", type=int, help="main size parameter")
    p.add_argument("--seed", type=int, help="rng seed for randomized families")
    p.add_argument(
        "-p",
        "--param",
        type=_kv,
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="extra family parameter, repeatable",
    )
    p.set_defaults(handler=_cmd_family)

    p = sub.add_parser("verify", help="run a certified check")
    p.add_argument("subject", choices=sorted(_VERIFIERS))
    p.add_argument("--graph", default="-", help="graph JSON file for copycat, - for stdin")
    p.add_argument("--n", type=int, help="single n / size limit, check-dependent")
    p.add_argument("--jobs", type=int, help="worker processes for batch checks")
    p.add_argument("--budget-nodes", type=int, help="verification budget")
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser("search", help="scan a corpus of boards")
    p.add_argument("--trees", type=int, metavar="N", help="add all trees up to N edges")
    p.add_argument(
        "--family",
        type=_family_spec,
        action="append",
        metavar="NAME[:K=V,...]",
        help="add one family member, repeatable",
    )
    p.add_argument("--corpus", help="add graphs from a JSON corpus file")
    p.add_argument("--threshold", type=int, default=search.DEFAULT_THRESHOLD)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--budget-nodes", type=int, help="per-graph node budget")
    p.add_argument("--state", help="checkpoint file for resumable scans")
    p.add_argument("--out", help="write per-graph records to this JSONL file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=_cmd_search)

    p = sub.add_parser("serve", help="start the HTTP analysis service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--budget-nodes", type=int, default=2_000_000)
    p.set_defaults(handler=_cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except DOMAIN_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
