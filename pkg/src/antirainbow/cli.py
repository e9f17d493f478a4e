"""Command-line surface: files in, JSON/CSV (and figures) out.

Exit codes: 0 success / all checks pass, 1 a verification check failed,
2 input or usage error.  Diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .audit import AuditBudgetError, certificate_check, rainbow_copy_search, rainbow_subgraph_audit
from .coloring import EdgeColoring, anti_rainbow_coloring, is_proper_coloring
from .decompose import (
    CheckResult,
    Decomposition,
    degenerate_decomposition,
    verify_decomposition,
)
from .density import format_fraction, max_density, max_two_density
from .graphs import GraphInputError, degeneracy_ordering, parse_graph
from .experiments import (
    TrialConfig,
    coloring_sweep,
    derive_seed,
    records_to_csv,
    triangle_threshold_sweep,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT = 2

GUARANTEE_MINIMUM = 18


def _load_graph(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise GraphInputError(f"cannot read {path}: {exc}") from None
    return parse_graph(text)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def _cmd_density(args) -> int:
    g = _load_graph(args.graph)
    w = max_density(g)
    payload = {
        "m": format_fraction(w.value),
        "witness": sorted(w.vertices),
        "edge_count": w.edge_count,
        "vertex_count": w.vertex_count,
    }
    _emit(f"m = {format_fraction(w.value)}", None)
    _emit(
        f"witness ({w.vertex_count} vertices, {w.edge_count} edges): "
        + " ".join(str(v) for v in sorted(w.vertices)),
        None,
    )
    if args.out:
        _emit(json.dumps(payload, indent=2), args.out)
    return EXIT_OK


def _cmd_two_density(args) -> int:
    g = _load_graph(args.graph)
    w = max_two_density(g)
    payload = {
        "m2": format_fraction(w.value),
        "witness": sorted(w.vertices) if w.vertices else None,
        "edge_count": w.edge_count,
        "vertex_count": w.vertex_count,
    }
    _emit(f"m2 = {format_fraction(w.value)}", None)
    if w.vertices:
        _emit(
            f"witness ({w.vertex_count} vertices, {w.edge_count} edges): "
            + " ".join(str(v) for v in sorted(w.vertices)),
            None,
        )
    else:
        print("note: value is the 1/2 floor, no attaining subgraph", file=sys.stderr)
    if args.out:
        _emit(json.dumps(payload, indent=2), args.out)
    return EXIT_OK


def _cmd_degeneracy(args) -> int:
    g = _load_graph(args.graph)
    order, deg = degeneracy_ordering(g)
    _emit(f"degeneracy = {deg}", None)
    if args.out:
        _emit(json.dumps({"degeneracy": deg, "order": list(order)}, indent=2), args.out)
    return EXIT_OK


def _cmd_decompose(args) -> int:
    g = _load_graph(args.graph)
    dec = degenerate_decomposition(g, tight_mu=args.tight_mu)
    _emit(dec.to_json(), args.out)
    return EXIT_OK


def _cmd_color(args) -> int:
    g = _load_graph(args.graph)
    col, dec = anti_rainbow_coloring(g, tight_mu=args.tight_mu)
    if not col.guarantee:
        msg = (
            f"warning: m(G) = {format_fraction(col.m_value)} < {GUARANTEE_MINIMUM}; "
            "colouring produced without the rainbow-sparsity guarantee"
        )
        if args.guarantee_only:
            print(msg.replace("warning", "error"), file=sys.stderr)
            return EXIT_INPUT
        print(msg, file=sys.stderr)
    _emit(col.to_json(g), args.out)
    return EXIT_OK


def _cmd_check(args) -> int:
    g = _load_graph(args.graph)
    if not args.decomposition and not args.coloring:
        print("error: check needs --decomposition and/or --coloring", file=sys.stderr)
        return EXIT_INPUT

    checks = []
    dec = col = None
    if args.decomposition:
        dec = Decomposition.from_json_dict(
            json.loads(Path(args.decomposition).read_text())
        )
        checks.extend(verify_decomposition(g, dec))
    if args.coloring:
        col = EdgeColoring.from_json_dict(json.loads(Path(args.coloring).read_text()))
        proper = is_proper_coloring(g, col)
        checks.append(
            CheckResult("proper_coloring", proper, "incident edges never share a colour")
        )
    if dec is not None and col is not None:
        checks.extend(certificate_check(g, dec, col))
    if args.max_edges and col is not None:
        try:
            violations = rainbow_subgraph_audit(g, col, args.max_edges)
        except AuditBudgetError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_INPUT
        ok = not violations if col.guarantee else True
        detail = (
            f"{len(violations)} rainbow subgraphs at or above m(G) "
            f"(guarantee {'applies' if col.guarantee else 'void below threshold'})"
        )
        checks.append(CheckResult("rainbow_subgraph_audit", ok, detail))

    report = [c.to_json_dict() for c in checks]
    _emit(json.dumps(report, indent=2), args.out)
    failures = [c for c in checks if not c.passed]
    for c in failures:
        print(f"FAIL {c.name}: {c.details}", file=sys.stderr)
    return EXIT_CHECK_FAILED if failures else EXIT_OK


def _cmd_rainbow(args) -> int:
    g = _load_graph(args.graph)
    pattern = _load_graph(args.pattern)
    col, _ = anti_rainbow_coloring(g)
    emb = rainbow_copy_search(g, col, pattern)
    payload = {
        "rainbow_found": emb is not None,
        "mapping": None if emb is None else {str(k): v for k, v in emb.mapping.items()},
    }
    _emit(json.dumps(payload, indent=2), args.out)
    return EXIT_OK


def _cmd_experiment(args) -> int:
    cfg_data = json.loads(Path(args.config).read_text())
    kind = cfg_data.get("kind", "triangle")
    n = int(cfg_data["n"])
    trials = args.trials or int(cfg_data.get("trials", 100))
    master_seed = args.seed if args.seed is not None else int(cfg_data.get("master_seed", 0))
    raw_p = cfg_data["p"]
    ps = [Fraction(str(x)) for x in (raw_p if isinstance(raw_p, list) else [raw_p])]

    out_base = Path(args.out) if args.out else None

    if kind == "triangle":
        points = triangle_threshold_sweep(n, ps, trials, master_seed)
        records = [rec for pt in points for rec in pt.records]
        summary = {
            "kind": kind,
            "n": n,
            "trials": trials,
            "master_seed": master_seed,
            "note": "empirical containment curve at desk scale; no asymptotic claim",
            "points": [pt.to_json_dict() for pt in points],
        }
        csv_text = records_to_csv(records)
        if out_base:
            base = out_base.with_suffix("")
            base.with_suffix(".csv").write_text(csv_text)
            base.with_suffix(".summary.json").write_text(json.dumps(summary, indent=2))
            from .figures import save_rate_curve

            save_rate_curve(points, str(base.with_suffix(".png")), n)
            print(
                f"wrote {base.with_suffix('.csv')}, {base.with_suffix('.summary.json')}, "
                f"{base.with_suffix('.png')}",
                file=sys.stderr,
            )
        else:
            print(csv_text, end="")
        return EXIT_OK

    if kind == "coloring":
        pattern = None
        if cfg_data.get("pattern"):
            pattern = _load_graph(cfg_data["pattern"])
        all_records = []
        point_summaries = []
        for j, p in enumerate(ps):
            cfg = TrialConfig(
                n=n,
                p=p,
                trials=trials,
                master_seed=(
                    master_seed
                    if len(ps) == 1
                    else derive_seed(master_seed, 1_000_003 * (j + 1))
                ),
                pattern=pattern,
            )
            records = coloring_sweep(cfg)
            all_records.extend(records)
            ran = [rec for rec in records if not rec.skipped]
            point_summaries.append(
                {
                    "p": format_fraction(p),
                    "trials": trials,
                    "skipped": sum(1 for rec in records if rec.skipped),
                    "proper": sum(1 for rec in ran if rec.coloring_proper),
                    "decomp_ok": sum(1 for rec in ran if rec.decomposition_ok),
                    "errors": sum(1 for rec in ran if rec.error),
                }
            )
        summary = {
            "kind": kind,
            "n": n,
            "trials": trials,
            "master_seed": master_seed,
            "note": "pipeline stress harness; invariants checked per trial",
            "points": point_summaries,
        }
        csv_text = records_to_csv(all_records)
        if out_base:
            base = out_base.with_suffix("")
            base.with_suffix(".csv").write_text(csv_text)
            base.with_suffix(".summary.json").write_text(json.dumps(summary, indent=2))
            from .figures import save_pipeline_summary

            save_pipeline_summary(all_records, str(base.with_suffix(".png")))
            print(
                f"wrote {base.with_suffix('.csv')}, {base.with_suffix('.summary.json')}, "
                f"{base.with_suffix('.png')}",
                file=sys.stderr,
            )
        else:
            print(csv_text, end="")
        return EXIT_OK

    print(f"error: unknown experiment kind {kind!r}", file=sys.stderr)
    return EXIT_INPUT


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="antirainbow",
        description=(
            "Forest decompositions and proper edge colourings whose rainbow "
            "subgraphs stay sparse, with exact density computations."
        ),
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    def add_common(p, out=True):
        if out:
            p.add_argument("--out", help="write the JSON/CSV payload to this path")

    p = sub.add_parser("density", help="maximal density m(G) with witness")
    p.add_argument("graph")
    add_common(p)
    p.set_defaults(func=_cmd_density)

    p = sub.add_parser("two-density", help="maximum 2-density m2(H) with witness")
    p.add_argument("graph")
    add_common(p)
    p.set_defaults(func=_cmd_two_density)

    p = sub.add_parser("degeneracy", help="degeneracy and peeling order")
    p.add_argument("graph")
    add_common(p)
    p.set_defaults(func=_cmd_degeneracy)

    p = sub.add_parser("decompose", help="degenerate forest decomposition (JSON)")
    p.add_argument("graph")
    p.add_argument("--tight-mu", action="store_true", help="recompute m per layer")
    add_common(p)
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("color", help="anti-rainbow edge colouring (JSON)")
    p.add_argument("graph")
    p.add_argument("--tight-mu", action="store_true", help="recompute m per layer")
    p.add_argument(
        "--guarantee-only",
        action="store_true",
        help="refuse graphs with m(G) below the guarantee threshold",
    )
    add_common(p)
    p.set_defaults(func=_cmd_color)

    p = sub.add_parser("check", help="verify decomposition/colouring artifacts")
    p.add_argument("graph")
    p.add_argument("--decomposition", help="decomposition JSON to verify")
    p.add_argument("--coloring", help="colouring JSON to verify")
    p.add_argument(
        "--max-edges",
        type=int,
        help="also audit rainbow subgraphs up to this many edges",
    )
    add_common(p)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("rainbow", help="search a rainbow copy of a pattern")
    p.add_argument("graph")
    p.add_argument("pattern", help="pattern edge-list file")
    add_common(p)
    p.set_defaults(func=_cmd_rainbow)

    p = sub.add_parser("experiment", help="run a seeded sweep from a config file")
    p.add_argument("config", help="JSON config: kind, n, p (value or list), trials, master_seed")
    p.add_argument("--seed", type=int, help="override the master seed")
    p.add_argument("--trials", type=int, help="override the trial count")
    add_common(p)
    p.set_defaults(func=_cmd_experiment)

    return parser


def run(argv: list[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except GraphInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
