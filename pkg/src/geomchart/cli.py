"""Command-line surface: estimation, chart limits, theory curves and
simulation tables from two-column CSV input.

Exit codes: 0 success, 1 validation error (bad flags, malformed or
out-of-range input), 2 numerical failure (series non-convergence).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import charts, moments, simulate
from .estimators import ESTIMATOR_NAMES, StudyData, estimate_report

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_NUMERIC = 2

_EPILOG = (
    "exit codes: 0 success, 1 validation error, 2 numerical failure "
    "(series non-convergence)"
)

CSV_HEADER = ["subgroup_id", "count"]


@dataclass(frozen=True)
class InputRecord:
    subgroup_id: str
    count: int


@dataclass(frozen=True)
class RenderSpec:
    """Where and how a command's output lands."""

    path: str
    fmt: str  # svg | csv | json
    title: str | None = None
    xlabel: str | None = None
    ylabel: str | None = None

    def __post_init__(self) -> None:
        if self.fmt not in ("svg", "csv", "json"):
            raise ValueError(f"unsupported output format {self.fmt!r}")


def _table_spec(path) -> RenderSpec | None:
    if path is None:
        return None
    fmt = "csv" if Path(path).suffix.lower() == ".csv" else "json"
    return RenderSpec(path=str(path), fmt=fmt)


def _figure_spec(args) -> RenderSpec | None:
    if args.render is None:
        return None
    if Path(args.render).suffix.lower() != ".svg":
        raise ValueError(f"--render expects an .svg path, got {args.render!r}")
    return RenderSpec(
        path=str(args.render),
        fmt="svg",
        title=args.title,
        xlabel=getattr(args, "xlabel", None),
        ylabel=getattr(args, "ylabel", None),
    )


def read_study_csv(path, shift: int = 0) -> StudyData:
    """Read `subgroup_id,count` rows into StudyData, grouping rows by id in
    first-appearance order.  Malformed rows are rejected with their line
    number."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ValueError(f"cannot read {path}: {exc}") from exc

    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise ValueError(f"{path}: no records") from None
    if [h.strip() for h in header] != CSV_HEADER:
        raise ValueError(
            f"{path}: line 1: expected header {','.join(CSV_HEADER)!r}, "
            f"got {','.join(header)!r}"
        )

    records: list[InputRecord] = []
    for line_no, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != 2:
            raise ValueError(f"{path}: line {line_no}: expected 2 fields, got {len(row)}")
        subgroup_id, raw_count = row[0].strip(), row[1].strip()
        try:
            count = int(raw_count)
        except ValueError:
            raise ValueError(
                f"{path}: line {line_no}: count {raw_count!r} is not an integer"
            ) from None
        if count < shift:
            raise ValueError(
                f"{path}: line {line_no}: count {count} below shift {shift}"
            )
        records.append(InputRecord(subgroup_id=subgroup_id, count=count))
    if not records:
        raise ValueError(f"{path}: no records")

    order: list[str] = []
    groups: dict[str, list[int]] = {}
    for rec in records:
        if rec.subgroup_id not in groups:
            order.append(rec.subgroup_id)
            groups[rec.subgroup_id] = []
        groups[rec.subgroup_id].append(rec.count)
    return StudyData.from_counts([groups[g] for g in order], shift=shift)


def _parse_p_grid(spec: str) -> list[float]:
    """Grid spec: 'start:stop:step' (inclusive) or a comma list of values."""
    if ":" in spec:
        parts = spec.split(":")
        if len(parts) != 3:
            raise ValueError(f"grid spec must be start:stop:step, got {spec!r}")
        start, stop, step = (float(x) for x in parts)
        if step <= 0 or stop < start:
            raise ValueError(f"bad grid spec {spec!r}")
        values = []
        k = 0
        while True:
            v = round(start + k * step, 10)
            if v > stop + step * 1e-9:
                break
            values.append(v)
            k += 1
        return values
    return [float(x) for x in spec.split(",") if x.strip()]


def _parse_sizes(tokens: list[str]) -> list[tuple[int, ...]]:
    out = []
    for token in tokens:
        try:
            sizes = tuple(int(x) for x in token.split(","))
        except ValueError:
            raise ValueError(f"bad size config {token!r}; expected e.g. 2,3") from None
        out.append(sizes)
    return out


def _format_float(x) -> str:
    return repr(float(x))


def _write_text(path, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _json_dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _csv_text(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; here 2 means numerical failure,
    # so remap flag problems onto the validation exit code.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_VALIDATION, f"{self.prog}: error: {message}\n")


def _add_shift(parser) -> None:
    parser.add_argument("--shift", type=int, default=0,
                        help="known minimum possible count (default 0)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="geomchart", description=__doc__, epilog=_EPILOG)
    sub = parser.add_subparsers(dest="command", required=True)

    p_est = sub.add_parser("estimate", epilog=_EPILOG,
                           help="point estimates from a CSV of subgroup counts")
    p_est.add_argument("csv_path")
    _add_shift(p_est)

    p_lim = sub.add_parser("limits", epilog=_EPILOG,
                           help="per-subgroup control limits and point statuses")
    p_lim.add_argument("csv_path")
    p_lim.add_argument("--kind", required=True, choices=charts.KINDS)
    p_lim.add_argument("--basis", default="ml", choices=("ml", "mvu", "plug_mvu"))
    p_lim.add_argument("--g", dest="multiplier", type=float,
                       default=charts.AMERICAN_STANDARD,
                       help="sigma multiplier (3 American, 3.09 British)")
    _add_shift(p_lim)
    p_lim.add_argument("--no-clamp", action="store_true",
                       help="keep raw negative lower limits")
    p_lim.add_argument("--out", default=None,
                       help="write the report to FILE (.json or .csv)")
    p_lim.add_argument("--render", default=None, help="write the chart to FILE.svg")
    p_lim.add_argument("--title", default=None)
    p_lim.add_argument("--xlabel", default=None)
    p_lim.add_argument("--ylabel", default=None)

    p_thy = sub.add_parser("theory", epilog=_EPILOG,
                           help="exact bias/MSE curves of the estimators")
    p_thy.add_argument("--N", dest="n_list", default="2,5,10",
                       help="comma list of pooled sample sizes (default 2,5,10)")
    p_thy.add_argument("--p-grid", dest="p_grid", default="0.01:0.99:0.01",
                       help="grid as start:stop:step or comma list")
    p_thy.add_argument("--out", default=None,
                       help="write curves to FILE (.csv or .json)")
    p_thy.add_argument("--render", default=None, help="write the figure to FILE.svg")
    p_thy.add_argument("--title", default=None)

    p_sim = sub.add_parser("simulate", epilog=_EPILOG,
                           help="seeded Monte Carlo bias/MSE table")
    p_sim.add_argument("--sizes", nargs="+",
                       default=[",".join(map(str, s)) for s in simulate.DEFAULT_SIZES],
                       help="size configs, one per token, e.g. --sizes 1,1 2,3")
    p_sim.add_argument("--p-grid", dest="p_grid",
                       default=",".join(map(str, simulate.DEFAULT_P_GRID)))
    p_sim.add_argument("--iterations", type=int, default=simulate.DEFAULT_ITERATIONS)
    p_sim.add_argument("--seed", type=int, default=simulate.DEFAULT_SEED)
    _add_shift(p_sim)
    p_sim.add_argument("--workers", type=int, default=1,
                       help="worker threads; never changes the results")
    p_sim.add_argument("--compare-theory", action="store_true",
                       help="append exact values and z-scores per cell")
    p_sim.add_argument("--out", default=None, help="write the table to FILE")
    p_sim.add_argument("--format", dest="fmt", default="csv",
                       choices=("csv", "json", "table"))
    return parser


def cmd_estimate(args) -> int:
    data = read_study_csv(args.csv_path, shift=args.shift)
    report = estimate_report(data)
    sys.stdout.write(_json_dumps(report.to_dict()))
    return EXIT_OK


def cmd_limits(args) -> int:
    data = read_study_csv(args.csv_path, shift=args.shift)
    config = charts.ChartConfig(
        kind=args.kind,
        basis=args.basis,
        multiplier=args.multiplier,
        clamp_lcl=not args.no_clamp,
    )
    limits = charts.h_limits(data, config) if args.kind == "h" else charts.g_limits(data, config)
    report = charts.classify(data, limits)

    for warning in report.warnings:
        print(f"warning: {warning}", file=sys.stderr)

    out = _table_spec(args.out)
    if out is not None and out.fmt == "csv":
        rows = [
            [pt.index, pt.n, _format_float(pt.value), _format_float(pt.ucl),
             _format_float(pt.cl), _format_float(pt.lcl), pt.status]
            for pt in report.points
        ]
        _write_text(out.path, _csv_text(
            ["index", "n", "value", "ucl", "cl", "lcl", "status"], rows))
    else:
        _write_text(out.path if out else None, _json_dumps(report.to_dict()))

    figure = _figure_spec(args)
    if figure is not None:
        from .plotting import save_chart_figure

        save_chart_figure(report, figure.path, title=figure.title,
                          xlabel=figure.xlabel, ylabel=figure.ylabel)
    return EXIT_OK


def cmd_theory(args) -> int:
    n_list = [int(x) for x in args.n_list.split(",") if x.strip()]
    p_grid = _parse_p_grid(args.p_grid)
    rows = moments.theory_curves(n_list, p_grid)

    out = _table_spec(args.out)
    if out is not None and out.fmt == "json":
        _write_text(out.path, _json_dumps(rows))
    else:
        table = [
            [r["N"], _format_float(r["p"]), r["estimator"],
             _format_float(r["bias"]), _format_float(r["mse"])]
            for r in rows
        ]
        _write_text(out.path if out else None,
                    _csv_text(["N", "p", "estimator", "bias", "mse"], table))

    figure = _figure_spec(args)
    if figure is not None:
        from .plotting import save_theory_figure

        save_theory_figure(rows, figure.path, title=figure.title)
    return EXIT_OK


def _simulate_rows(results, compare: bool) -> tuple[list[str], list[list]]:
    header = ["p", "sizes", "estimator", "bias", "mse", "se", "iterations", "seed"]
    if compare:
        header += ["theory_bias", "theory_mse", "z_bias", "z_mse"]
    rows = []
    for result in results:
        cfg = result.config
        comparison = simulate.compare_theory(result) if compare else None
        for name in ESTIMATOR_NAMES:
            stats = result[name]
            row = [
                _format_float(cfg.p),
                ",".join(map(str, cfg.group_sizes)),
                name,
                _format_float(stats.bias),
                _format_float(stats.mse),
                _format_float(stats.se_bias),
                cfg.iterations,
                cfg.master_seed,
            ]
            if compare:
                cmp_row = comparison[name]
                row += [
                    _format_float(cmp_row.theory_bias),
                    _format_float(cmp_row.theory_mse),
                    _format_float(cmp_row.z_bias),
                    _format_float(cmp_row.z_mse),
                ]
            rows.append(row)
    return header, rows


def _simulate_table_text(results) -> str:
    """Human-readable layout: one block per metric, one line per (p,
    estimator), one column per size config, 5 decimals."""
    size_labels = []
    for result in results:
        label = ",".join(map(str, result.config.group_sizes))
        if label not in size_labels:
            size_labels.append(label)
    p_values = []
    for result in results:
        if result.config.p not in p_values:
            p_values.append(result.config.p)

    cells = {}
    for result in results:
        label = ",".join(map(str, result.config.group_sizes))
        cells[(result.config.p, label)] = result

    lines = []
    for metric in ("bias", "mse"):
        lines.append(f"empirical {metric}")
        lines.append("  ".join(["p     estimator"] + [f"({s})".rjust(10) for s in size_labels]))
        for p in p_values:
            for name in ESTIMATOR_NAMES:
                row = [f"{p:<5g} {name:<9}"]
                for label in size_labels:
                    value = getattr(cells[(p, label)][name], metric)
                    row.append(f"{value:10.5f}")
                lines.append("  ".join(row))
        lines.append("")
    return "\n".join(lines)


def cmd_simulate(args) -> int:
    size_configs = _parse_sizes(args.sizes)
    p_grid = _parse_p_grid(args.p_grid)
    results = simulate.run_table(
        size_configs=size_configs,
        p_grid=p_grid,
        iterations=args.iterations,
        master_seed=args.seed,
        shift=args.shift,
        workers=args.workers,
    )
    if args.fmt == "table":
        _write_text(args.out, _simulate_table_text(results))
        return EXIT_OK

    header, rows = _simulate_rows(results, compare=args.compare_theory)
    if args.fmt == "json":
        payload = [dict(zip(header, row)) for row in rows]
        for entry in payload:
            for key, value in entry.items():
                if key not in ("sizes", "estimator", "iterations", "seed"):
                    entry[key] = float(value)
        _write_text(args.out, _json_dumps(payload))
    else:
        _write_text(args.out, _csv_text(header, rows))
    return EXIT_OK


_COMMANDS = {
    "estimate": cmd_estimate,
    "limits": cmd_limits,
    "theory": cmd_theory,
    "simulate": cmd_simulate,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ArithmeticError as exc:
        # covers NonConvergenceError and the moment cross-check failures
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
