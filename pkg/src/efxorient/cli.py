"""Command line entry point: ``efxorient <subcommand> ...``.

Exit codes: 0 yes / found / pass, 1 no / none, 2 unknown / budget exhausted, 3 input error.
Files may be plain graph / valuation / orientation JSON or an instance bundle
(``{"graph": ..., "valuation": ...}``); a bundle can be passed wherever a graph
or valuation file is expected.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Optional

from . import __version__
from .atlas import canonical_form, connected_graphs
from .characterize import check_01_characterization, matching_condition
from .classify import classify_strong
from .counterexamples import certify, generate
from .graph import Graph, GraphError, SizeBoundError, chromatic_number
from .search import SearchBudgetExceeded, check_counterexample, default_budget, exists_efx_for_all_01, find_efx_orientation
from .valuations import InvalidValuation, valuation_from_json
from .verify import Orientation, verify_efx

EXIT_YES, EXIT_NO, EXIT_UNKNOWN, EXIT_ERROR = 0, 1, 2, 3


class InputError(Exception):
    pass


def _load(path: str) -> tuple[dict, str]:
    try:
        raw = Path(path).read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise InputError(f"{path} must hold a JSON object")
    return data, hashlib.sha256(raw).hexdigest()


def _graph(path: str, inputs: dict) -> Graph:
    data, digest = _load(path)
    inputs[path] = digest
    return Graph.from_json(data.get("graph", data))


def _valuation(path: str, g: Graph, inputs: dict):
    data, digest = _load(path)
    inputs[path] = digest
    return valuation_from_json(g, data.get("valuation", data))


def cmd_verify(args, inputs: dict) -> tuple[dict, int]:
    g = _graph(args.graph, inputs)
    val = _valuation(args.valuation, g, inputs)
    data, digest = _load(args.orientation)
    inputs[args.orientation] = digest
    o = Orientation.from_json(data)
    o.check(g)
    report = verify_efx(g, val, o)
    return report.to_json(), EXIT_YES if report.verdict else EXIT_NO


def cmd_find(args, inputs: dict) -> tuple[dict, int]:
    g = _graph(args.graph, inputs)
    val = _valuation(args.valuation or args.graph, g, inputs)
    budget = args.budget if args.budget is not None else default_budget()
    try:
        out = find_efx_orientation(g, val, limit=budget, jobs=args.jobs)
    except SearchBudgetExceeded as exc:
        return {"result": "budget-exhausted", "stats": exc.stats}, EXIT_UNKNOWN
    if out.found:
        return {"result": "found", "orientation": out.orientation.to_json(), "stats": out.stats}, EXIT_YES
    return {"result": "exhausted-none", "stats": out.stats}, EXIT_NO


def cmd_classify01(args, inputs: dict) -> tuple[dict, int]:
    g = _graph(args.graph, inputs)
    c = check_01_characterization(g)
    return c.to_json(), EXIT_YES if c.orientable else EXIT_NO


def cmd_oracle01(args, inputs: dict) -> tuple[dict, int]:
    g = _graph(args.graph, inputs)
    r = exists_efx_for_all_01(g)
    out = {"all_orientable": r.all_orientable}
    if not r.all_orientable:
        out["valuation"] = r.counterexample.to_json()
    return out, EXIT_YES if r.all_orientable else EXIT_NO


def cmd_classify(args, inputs: dict) -> tuple[dict, int]:
    g = _graph(args.graph, inputs)
    c = classify_strong(g)
    code = {"yes": EXIT_YES, "no": EXIT_NO, "unknown": EXIT_UNKNOWN}[c.verdict]
    return c.to_json(), code


def _gen_params(args, inputs: dict) -> dict:
    if args.family == "triangles-path":
        return {"path_len": args.path_len}
    if args.family == "odd-cycles":
        if args.share is None or args.lens is None:
            raise InputError("odd-cycles needs --share and --lens")
        try:
            lens = [int(x) for x in args.lens.split(",")]
        except ValueError:
            raise InputError(f"--lens must be two comma-separated integers, got {args.lens!r}") from None
        if len(lens) != 2:
            raise InputError("--lens needs exactly two cycle lengths")
        return {"share": args.share, "lens": lens}
    if args.family == "bipartite-plus-edge":
        if args.graph is None or args.u is None or args.v is None:
            raise InputError("bipartite-plus-edge needs --graph, --u and --v")
        return {"graph": _graph(args.graph, inputs), "u": args.u, "v": args.v}
    return {}


def cmd_gen(args, inputs: dict) -> tuple[dict, int]:
    try:
        inst = generate(args.family, **_gen_params(args, inputs))
    except (ValueError, KeyError) as exc:
        raise InputError(str(exc)) from None
    bundle = inst.to_json()
    code = EXIT_YES
    if args.verify:
        status = certify(inst, limit=args.budget)
        bundle["verification"] = status
        if status == "refuted":
            code = EXIT_NO
        elif status != "confirmed":
            code = EXIT_UNKNOWN
    if args.out:
        Path(args.out).write_text(json.dumps(bundle, indent=2) + "\n")
    return bundle, code


def _atlas_row(job: tuple[Graph, int]) -> dict:
    g, oracle_max_m = job
    c01 = check_01_characterization(g)
    mc = matching_condition(g)
    row = {
        "n": g.n,
        "m": g.m,
        "edges": [list(e) for e in canonical_form(g)[1]],
        "chi": chromatic_number(g),
        "orientable01": c01.orientable,
        "matching_condition": mc.satisfied,
    }
    if g.m <= oracle_max_m:
        row["oracle01"] = exists_efx_for_all_01(g, max_edges=oracle_max_m).all_orientable
    return row


def run_atlas(max_n: int, max_m: Optional[int] = None, oracle_max_m: int = 7, jobs: int = 1) -> dict:
    """Sweep all connected graphs within the bounds and check the three structural claims."""
    graphs = connected_graphs(max_n, max_m)
    jobs_in = [(g, oracle_max_m) for g in graphs]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_atlas_row, jobs_in, chunksize=8))
    else:
        rows = [_atlas_row(j) for j in jobs_in]
    counts: dict[int, int] = {}
    for r in rows:
        counts[r["n"]] = counts.get(r["n"], 0) + 1
    oracle_rows = [r for r in rows if "oracle01" in r]
    equiv_bad = [r["edges"] for r in oracle_rows if r["oracle01"] != r["orientable01"]]
    chi_bad = [r["edges"] for r in rows if r["orientable01"] and r["chi"] > 3]
    cor_bad = [r["edges"] for r in rows if r["orientable01"] and not r["matching_condition"]]
    converse = [r["edges"] for r in rows if r["matching_condition"] and not r["orientable01"]]
    assertions = {
        "characterization_equals_bruteforce": {"checked": len(oracle_rows), "violations": equiv_bad, "pass": not equiv_bad},
        "orientable01_implies_chi_at_most_3": {"checked": len(rows), "violations": chi_bad, "pass": not chi_bad},
        "orientable01_implies_matching_condition": {"checked": len(rows), "violations": cor_bad, "pass": not cor_bad},
        "matching_condition_without_orientable01": {"count": len(converse), "examples": converse[:5]},
    }
    return {
        "bounds": {"max_n": max_n, "max_m": max_m, "oracle_max_m": oracle_max_m},
        "graphs": len(rows),
        "counts_by_n": {str(k): v for k, v in sorted(counts.items())},
        "assertions": assertions,
        "rows": rows,
    }


def _atlas_table(report: dict) -> str:
    lines = [f"{'n':>2} {'m':>2} {'chi':>3} {'01':>3} {'match':>5} {'oracle':>6}  edges"]
    for r in report["rows"]:
        oracle = {True: "yes", False: "no"}.get(r.get("oracle01"), "-")
        lines.append(
            f"{r['n']:>2} {r['m']:>2} {r['chi']:>3} {'yes' if r['orientable01'] else 'no':>3} "
            f"{'sat' if r['matching_condition'] else 'viol':>5} {oracle:>6}  {r['edges']}"
        )
    for name, a in report["assertions"].items():
        status = "PASS" if a.get("pass", True) else "FAIL"
        lines.append(f"{status} {name}: {a.get('checked', a.get('count'))}")
    return "\n".join(lines) + "\n"


def cmd_atlas(args, inputs: dict) -> tuple[dict, int]:
    if args.max_n < 1:
        raise InputError("--max-n must be at least 1")
    report = run_atlas(args.max_n, args.max_m, args.oracle_max_m, args.jobs)
    if args.report:
        Path(args.report).write_text(_atlas_table(report))
    ok = all(a.get("pass", True) for a in report["assertions"].values())
    if not args.rows:
        report = {k: v for k, v in report.items() if k != "rows"}
    return report, EXIT_YES if ok else EXIT_NO


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="efxorient", description="EFX orientations of graphical instances")
    p.add_argument("--version", action="version", version=__version__)
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json", help="JSON output (default)")
    fmt.add_argument("--text", dest="fmt", action="store_const", const="text", help="indented human-readable output")
    p.add_argument("--seed", type=int, default=0, help="recorded in the run report")
    p.set_defaults(fmt="json")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("verify", help="check an orientation for EFX")
    s.add_argument("graph")
    s.add_argument("valuation")
    s.add_argument("orientation")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("find", help="search for an EFX orientation")
    s.add_argument("graph", help="graph file or instance bundle")
    s.add_argument("valuation", nargs="?", help="valuation file (omit for a bundle)")
    s.add_argument("--budget", type=int, default=None, help="search node budget")
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_find)

    s = sub.add_parser("classify01", help="binary strong orientability via the forest condition")
    s.add_argument("graph")
    s.set_defaults(func=cmd_classify01)

    s = sub.add_parser("oracle01", help="binary strong orientability by brute force")
    s.add_argument("graph")
    s.set_defaults(func=cmd_oracle01)

    s = sub.add_parser("classify", help="strong orientability verdict")
    s.add_argument("graph")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("gen", help="generate a certified unorientable instance")
    s.add_argument(
        "family",
        choices=["glued-triangles-vertex", "triangles-path", "shared-edge-triangles", "odd-cycles", "bipartite-plus-edge"],
    )
    s.add_argument("--path-len", type=int, default=1)
    s.add_argument("--share", help="edge, vertex or path:<len>")
    s.add_argument("--lens", help="two odd cycle lengths, e.g. 5,3")
    s.add_argument("--graph", help="host bipartite graph for bipartite-plus-edge")
    s.add_argument("--u", type=int)
    s.add_argument("--v", type=int)
    s.add_argument("--out")
    s.add_argument("--verify", action="store_true", help="confirm by exhaustive search")
    s.add_argument("--budget", type=int, default=None)
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("atlas", help="sweep small connected graphs")
    s.add_argument("--max-n", type=int, required=True)
    s.add_argument("--max-m", type=int, default=None)
    s.add_argument("--oracle-max-m", type=int, default=7)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--report", help="write a text table here")
    s.add_argument("--rows", action="store_true", help="include per-graph rows in the output")
    s.set_defaults(func=cmd_atlas)
    return p


def main(argv: Optional[list[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; map to the input-error code
        return EXIT_ERROR if exc.code else 0
    inputs: dict = {}
    try:
        result, code = args.func(args, inputs)
    except (InputError, GraphError, InvalidValuation, SizeBoundError, ValueError, KeyError, TypeError) as exc:
        result, code = {"error": f"{type(exc).__name__}: {exc}"}, EXIT_ERROR
    report = {"command": argv, "inputs": inputs, "seed": args.seed, "result": result, "exit_code": code}
    if args.fmt == "text":
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        print(json.dumps(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
