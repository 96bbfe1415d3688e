"""Command-line surface: check, simulate, phase, sweep, verify.

All numeric output uses 17 significant digits, '.' as decimal separator and
'\\n' line endings, so repeated invocations are byte-identical.  Exit codes:
0 success (or viable verdict), 2 analytic negative verdict, 1 usage or
input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .econ import Regime
from .engine import simulate, summarize
from .scenario import ConfigError, ScenarioConfig
from .verification import DEFAULT_SEED, run_all
from .viability import check_viability_domain, critical_levels, phase_rows

__all__ = ["main"]

_MAX_SWEEP_CELLS = 10 ** 6


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); usage errors are exit 1
        raise _UsageError(message)


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.17g}"
    if isinstance(value, (Regime,)):
        return value.value
    if hasattr(value, "value"):
        return str(value.value)
    return str(value)


def _write_csv(path: str, header: list[str], rows) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(",".join(header) + "\n")
        for row in rows:
            handle.write(",".join(_fmt(v) for v in row) + "\n")


def _load(path: str) -> ScenarioConfig:
    if not os.path.exists(path):
        raise ConfigError(f"{path}: no such config file")
    return ScenarioConfig.from_file(path)


def _cmd_check(args) -> int:
    cfg = _load(args.config)
    verdict = check_viability_domain(cfg.econ, cfg.recruitment, cfg.bounds)
    ok = verdict.conditions
    print(f"condition (i)   harvest floor attainable unmanaged: margin={_fmt(verdict.margin_floor_attainable)} "
          f"{'OK' if ok[0] else 'FAIL'}")
    print(f"condition (ii)  recruitment covers harvest floor:   margin={_fmt(verdict.margin_recruitment)} "
          f"{'OK' if ok[1] else 'FAIL'}")
    print(f"condition (iii) admissible recommendation exists:   margin={_fmt(verdict.margin_admissible)} "
          f"{'OK' if ok[2] else 'FAIL'}")
    print(f"verdict: {'VIABLE' if verdict.viable else 'NOT VIABLE'}")
    levels = critical_levels(cfg.econ, cfg.recruitment, cfg.bounds)
    def show(v):
        return _fmt(v) if v is not None else "absent"
    print(f"a (floor recommendation binds above) = {show(levels.a)}")
    print(f"b, c (recruitment equals harvest floor) = {show(levels.b)}, {show(levels.c)}")
    print(f"case ordering: {levels.case_order.value}")
    if levels.crossings_below_b:
        joined = ", ".join(_fmt(v) for v in levels.crossings_below_b)
        print(f"ceiling/unmanaged crossings below b: {joined}")
    return 0 if verdict.viable else 2


def _out_dir(args) -> str:
    directory = args.out
    os.makedirs(directory, exist_ok=True)
    return directory


def _cmd_simulate(args) -> int:
    cfg = _load(args.config)
    out_dir = args.out if args.out is not None else cfg.output.directory
    os.makedirs(out_dir, exist_ok=True)
    record = simulate(*cfg.build())
    rows = ((s.t, s.x, s.r, s.h, s.q_1, s.q_2, s.regime, s.region,
             s.maturity, s.viable_ecological, s.viable_economic)
            for s in record.samples)
    _write_csv(os.path.join(out_dir, cfg.output.trajectory_file),
               ["t", "x", "r", "h", "q1", "q2", "regime", "region",
                "maturity", "viable_eco", "viable_econ"], rows)
    events = [{"t": e.t, "kind": e.kind, **e.detail} for e in record.events]
    with open(os.path.join(out_dir, cfg.output.events_file), "w",
              encoding="utf-8", newline="\n") as handle:
        json.dump(events, handle, indent=2)
        handle.write("\n")
    summary = summarize(record)
    print(f"samples: {len(record.samples)}  events: {len(record.events)}  "
          f"terminal stock: {_fmt(summary.terminal_stock)}  "
          f"mean harvest: {_fmt(summary.mean_harvest)}")
    return 0


def _parse_grid(spec: str):
    parts = spec.split(":")
    if len(parts) != 6:
        raise _UsageError("--grid expects XMIN:XMAX:RMIN:RMAX:NX:NR")
    try:
        x_min, x_max, r_min, r_max = map(float, parts[:4])
        nx, nr = int(parts[4]), int(parts[5])
    except ValueError as exc:
        raise _UsageError(f"--grid: {exc}") from None
    if nx < 1 or nr < 1:
        raise _UsageError("--grid: axis resolutions must be at least 1")
    if x_min <= 0.0:
        raise _UsageError("--grid: stock axis must be positive")
    if (nx > 1 and x_max <= x_min) or (nr > 1 and r_max < r_min) or r_min < 0.0:
        raise _UsageError("--grid: degenerate rectangle")
    xs = np.linspace(x_min, x_max, nx) if nx > 1 else np.array([x_min])
    rs = np.linspace(r_min, r_max, nr) if nr > 1 else np.array([r_min])
    return [float(v) for v in xs], [float(v) for v in rs]


def _cmd_phase(args) -> int:
    cfg = _load(args.config)
    xs, rs = _parse_grid(args.grid)
    out_dir = _out_dir(args)
    rows = phase_rows(cfg.econ, cfg.recruitment, cfg.bounds, xs, rs)
    _write_csv(os.path.join(out_dir, "phase_grid.csv"),
               ["x", "r", "h", "regime", "sign_growth_minus_harvest",
                "unmanaged_harvest", "recommendation_ceiling",
                "recommendation_floor", "region"],
               rows)
    levels = critical_levels(cfg.econ, cfg.recruitment, cfg.bounds)
    payload = {
        "a": levels.a,
        "b": levels.b,
        "c": levels.c,
        "case_order": levels.case_order.value,
        "stock_floor": cfg.bounds.stock_floor,
    }
    with open(os.path.join(out_dir, "phase_levels.json"), "w",
              encoding="utf-8", newline="\n") as handle:
        json.dump(payload, handle, indent=2)
        handle.write("\n")
    print(f"wrote {len(xs) * len(rs)} grid rows")
    return 0


def _parse_axes(spec: str) -> list[tuple[str, list]]:
    axes = []
    if not spec:
        return axes
    for chunk in spec.split(","):
        if "=" not in chunk:
            raise _UsageError(f"--axes: expected FIELD=LO:HI:N or FIELD=a|b, got {chunk!r}")
        field, definition = chunk.split("=", 1)
        field = field.strip()
        if "|" in definition:
            axes.append((field, [v.strip() for v in definition.split("|")]))
            continue
        parts = definition.split(":")
        if len(parts) != 3:
            raise _UsageError(f"--axes {field}: expected LO:HI:N")
        try:
            lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
        except ValueError as exc:
            raise _UsageError(f"--axes {field}: {exc}") from None
        if count < 1:
            raise _UsageError(f"--axes {field}: N must be at least 1")
        values = np.linspace(lo, hi, count) if count > 1 else np.array([lo])
        axes.append((field, [float(v) for v in values]))
    return axes


def _cmd_sweep(args) -> int:
    cfg = _load(args.config)
    axes = _parse_axes(args.axes)
    cells = 1
    for _, values in axes:
        cells *= len(values)
    if cells > _MAX_SWEEP_CELLS:
        raise _UsageError(f"--axes: {cells} cells exceeds the {_MAX_SWEEP_CELLS} limit")
    out_dir = _out_dir(args)

    # validate axis fields up front: an unknown field is a usage error
    cfg.with_overrides({field: values[0] for field, values in axes})

    import itertools
    fields = [field for field, _ in axes]
    rows = []
    for combo in itertools.product(*[values for _, values in axes]) if axes else [()]:
        cell_cfg = cfg.with_overrides(dict(zip(fields, combo)))
        try:
            record = simulate(*cell_cfg.build())
            cell = summarize(record, tuple(combo))
            rows.append([*combo,
                         "violated" if cell.violated else "viable",
                         cell.first_violation if cell.first_violation is not None else "",
                         cell.terminal_stock, cell.mean_harvest])
        except Exception as exc:  # recorded per cell, sweep continues
            rows.append([*combo, f"error: {type(exc).__name__}", "", "", ""])
    _write_csv(os.path.join(out_dir, "sweep.csv"),
               [*fields, "verdict", "first_violation_time", "terminal_x", "mean_h"],
               rows)
    print(f"wrote {len(rows)} sweep cells")
    return 0


def _cmd_verify(args) -> int:
    reports = run_all(seed=args.seed, instances=args.instances)
    for report in reports:
        print(report.line())
    failed = sum(not r.passed for r in reports)
    print(f"{len(reports) - failed}/{len(reports)} suites passed")
    return 0 if failed == 0 else 2


def _build_parser() -> _Parser:
    parser = _Parser(prog="quotavia",
                     description="Quota co-management viability simulator")
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="viability-domain verdict for a scenario")
    check.add_argument("--config", required=True)
    check.set_defaults(handler=_cmd_check)

    sim = sub.add_parser("simulate", help="run one closed-loop trajectory")
    sim.add_argument("--config", required=True)
    sim.add_argument("--out", default=None)
    sim.set_defaults(handler=_cmd_simulate)

    phase = sub.add_parser("phase", help="export a phase-portrait grid")
    phase.add_argument("--config", required=True)
    phase.add_argument("--out", default=".")
    phase.add_argument("--grid", required=True,
                       help="XMIN:XMAX:RMIN:RMAX:NX:NR")
    phase.set_defaults(handler=_cmd_phase)

    swp = sub.add_parser("sweep", help="simulate over a parameter grid")
    swp.add_argument("--config", required=True)
    swp.add_argument("--out", default=".")
    swp.add_argument("--axes", required=True,
                     help="FIELD=LO:HI:N[,FIELD=a|b|c...]")
    swp.set_defaults(handler=_cmd_sweep)

    ver = sub.add_parser("verify", help="run the randomized oracle suites")
    ver.add_argument("--seed", type=int, default=DEFAULT_SEED)
    ver.add_argument("--instances", type=int, default=None)
    ver.set_defaults(handler=_cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.handler(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
