"""Command-line front end.

Exit codes: 0 success / all checks pass, 1 usage or input error,
2 a check failed, 3 a check was numerically inconclusive.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from . import __version__
from .counterexample import analytic_supremum, equality_case, hand_witness, search_max_violation
from .errors import BudgetExceeded, GraphError, HypothesisViolation, NotAKTree, ParameterError, PostconditionError
from .formats import from_graph6, from_json, to_dict, to_graph6
from .ktree import FamilyTag, enumerate_ktrees, make_named
from .rewire import climb
from .spectral import default_gap_tol, graph_spectrum
from .stats import l_max, simplicial_vertices
from .verify import Verdict, overall, reports_to_csv, reports_to_json, run_grid

EXIT_OK, EXIT_USAGE, EXIT_FAIL, EXIT_INCONCLUSIVE = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


@dataclass
class CliConfig:
    subcommand: str
    options: dict = field(default_factory=dict)
    gap_tol: float = 0.0
    version: str = __version__


def _round(obj):
    """Recursively round floats to 12 significant digits."""
    if isinstance(obj, float):
        return float(f"{obj:.12g}")
    if isinstance(obj, dict):
        return {k: _round(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round(v) for v in obj]
    return obj


def _emit(obj) -> None:
    print(json.dumps(_round(obj), sort_keys=True))


def _read_graph(path: str, fmt: str):
    text = sys.stdin.read() if path == "-" else open(path, encoding="ascii").read()
    if fmt == "graph6":
        return from_graph6(text.strip().splitlines()[0] if text.strip() else "")
    try:
        return from_json(text)
    except json.JSONDecodeError as exc:
        raise GraphError(f"input is not valid JSON: {exc}") from exc


def _write_graph(g, fmt: str) -> None:
    if fmt == "graph6":
        print(to_graph6(g).decode("ascii"))
    else:
        print(json.dumps(to_dict(g), separators=(",", ":")))


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ktree-signless", description="Signless Laplacian indices of k-trees.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    fam = sub.add_parser("families", help="build a named family member")
    fam.add_argument("--family", required=True, choices=[t.value for t in FamilyTag])
    fam.add_argument("--n", type=_positive, required=True)
    fam.add_argument("--k", type=_positive, required=True)
    fam.add_argument("--format", choices=["json", "graph6"], default="json")

    en = sub.add_parser("enumerate", help="one representative per isomorphism class")
    en.add_argument("--n", type=_positive, required=True)
    en.add_argument("--k", type=_positive, required=True)
    en.add_argument("--count-only", action="store_true")
    en.add_argument("--format", choices=["json", "graph6"], default="json")

    for name, text in (("stats", "simplicial set and pendant-clique statistic"),
                       ("climb", "climb to the k-star by simplicial steps")):
        sp = sub.add_parser(name, help=text)
        sp.add_argument("--input", required=True, help="graph file, or - for stdin")
        sp.add_argument("--k", type=_positive, required=True)
        sp.add_argument("--format", choices=["json", "graph6"], default="json")
        if name == "climb":
            sp.add_argument("--trace", action="store_true", help="also print every shift move")

    spec = sub.add_parser("spectrum", help="signless Laplacian spectrum")
    spec.add_argument("--input", required=True)
    spec.add_argument("--format", choices=["json", "graph6"], default="json")
    spec.add_argument("--full", action="store_true", help="include the Perron vector")

    ver = sub.add_parser("verify", help="exhaustive verification over a grid")
    ver.add_argument("--k-min", type=_positive, default=1)
    ver.add_argument("--k-max", type=_positive, default=4)
    ver.add_argument("--n-max", type=_positive, default=13)
    ver.add_argument("--jobs", type=_positive, default=1)
    ver.add_argument("--report", help="write the JSON report here")
    ver.add_argument("--csv", help="write the per-class CSV here")

    ce = sub.add_parser("counterexample", help="violations of the sum inequality")
    ce.add_argument("--k", type=_positive, default=1)
    ce.add_argument("--trials", type=_positive, default=10_000)
    ce.add_argument("--seed", type=int, default=42)
    return p


def _families(args) -> int:
    _write_graph(make_named(args.family, args.n, args.k).graph, args.format)
    return EXIT_OK


def _enumerate(args) -> int:
    graphs = enumerate_ktrees(args.n, args.k)
    if args.count_only:
        print(len(graphs))
        return EXIT_OK
    for g in graphs:
        _write_graph(g, args.format)
    return EXIT_OK


def _stats(args) -> int:
    g = _read_graph(args.input, args.format)
    value, witness = l_max(g, args.k)
    _emit({"S1": simplicial_vertices(g, args.k), "l": value, "witness": list(witness)})
    return EXIT_OK


def _spectrum(args) -> int:
    g = _read_graph(args.input, args.format)
    res = graph_spectrum(g)
    out = {"eigenvalues": res.eigenvalues.tolist(), "q1": res.q1}
    if args.full:
        out["perron"] = res.perron.tolist()
        out["residual"] = res.residual
    _emit(out)
    return EXIT_OK


def _climb(args) -> int:
    g = _read_graph(args.input, args.format)
    log: list = []
    try:
        path = climb(g, args.k, log)
    except PostconditionError as exc:
        print(f"climb failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    steps = []
    for h in path:
        res = graph_spectrum(h)
        steps.append({
            "graph": to_dict(h),
            "S1": len(simplicial_vertices(h, args.k)),
            "l": l_max(h, args.k)[0],
            "q1": res.q1,
        })
    out = {"steps": steps}
    if args.trace:
        out["moves"] = [
            {"source": m.source, "target": m.target, "shifted": sorted(m.shifted)} for m in log
        ]
    _emit(out)
    return EXIT_OK


def _verify(args, config: CliConfig) -> int:
    reports = run_grid(args.k_min, args.k_max, args.n_max, args.jobs, config.gap_tol)
    cfg = {k: v for k, v in config.options.items() if k not in ("report", "csv", "jobs")}
    cfg["gap_tol"] = config.gap_tol
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(reports_to_json(reports, cfg) + "\n")
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            fh.write(reports_to_csv(reports, cfg))
    for r in reports:
        marks = sorted(f"{name}={v.value}" for name, v in r.verdicts.items() if v is not Verdict.INAPPLICABLE)
        gap = "-" if r.min_gap is None else f"{r.min_gap:.12g}"
        print(f"n={r.n} k={r.k} classes={r.class_size} min_gap={gap} " + " ".join(marks))
    result = overall(reports)
    print(f"overall: {result.value}")
    return {Verdict.PASS: EXIT_OK, Verdict.FAIL: EXIT_FAIL, Verdict.INCONCLUSIVE: EXIT_INCONCLUSIVE}[result]


def _counterexample(args) -> int:
    best = search_max_violation(args.k, args.trials, args.seed)
    out = best.to_dict()
    out["hand_witness"] = hand_witness().to_dict()
    out["equality_case"] = equality_case(0.5)
    out["supremum"] = analytic_supremum(args.k)
    out["config"] = {"k": args.k, "trials": args.trials, "seed": args.seed, "version": __version__}
    _emit(out)
    return EXIT_OK


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        gap_tol = default_gap_tol()
    except ValueError:
        print("KTREE_GAP_TOL must be a number", file=sys.stderr)
        return EXIT_USAGE
    options = {k: v for k, v in vars(args).items() if k != "subcommand"}
    config = CliConfig(args.subcommand, options, gap_tol)
    handlers = {
        "families": _families,
        "enumerate": _enumerate,
        "stats": _stats,
        "spectrum": _spectrum,
        "climb": _climb,
        "counterexample": _counterexample,
    }
    try:
        if args.subcommand == "verify":
            return _verify(args, config)
        return handlers[args.subcommand](args)
    except (ParameterError, GraphError, NotAKTree, BudgetExceeded, HypothesisViolation, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
