"""Command-line front end.

Exit codes: 0 success, 1 error (including usage errors), 2 when the result
is gated, infeasible or empty.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .analysis import compare, fit_cubic, reading_range, sweep
from .config import load_config
from .em import DEFAULT_FREQUENCY
from .errors import CodesignError
from .fitness import evaluate
from .geometry import ParameterVector, in_bounds
from .optimizer import optimize
from .report import (TABLE_HEADER, breakdown_row, comparison_rows, dump_json,
                     json_number, parse_cell, read_csv, sweep_rows, table_row, write_breakdowns,
                     write_rows, COMPARISON_COLUMNS, SWEEP_COLUMNS)

EXIT_OK, EXIT_ERROR, EXIT_EMPTY = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _require_config(args):
    if args.config is None:
        raise UsageError("--config is required for this command")
    return load_config(args.config)


def _geometry(args):
    missing = [name for name in ("a1", "a2", "c2") if getattr(args, name) is None]
    if missing:
        raise UsageError("missing geometry flags: " + ", ".join("--" + m for m in missing))
    return ParameterVector(args.a1, args.a2, args.c2)


def _out_dir(args, config=None):
    out = args.out
    if out is None and config is not None:
        out = config.output_dir
    if out is None:
        return None
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _emit_rows(args, filename, columns, rows, config=None):
    out = _out_dir(args, config)
    if out is not None:
        write_rows(out / filename, columns, rows)
        print(out / filename)
    else:
        write_rows(sys.stdout, columns, rows)


def _breakdown_json(b):
    if b is None:
        return None
    return {k: json_number(v) for k, v in breakdown_row(b).items()}


# -- commands ---------------------------------------------------------------

def cmd_evaluate(args):
    config = _require_config(args)
    v = _geometry(args)
    breakdown = evaluate(config.provider, v, weights=config.weights, gates=config.gates,
                         norm=config.norm_policy.pinned, n_samples=config.monotonic_samples,
                         **config.context())
    if not in_bounds(v, config.space):
        print(f"warning: {v} lies outside the configured parameter space", file=sys.stderr)
    print(TABLE_HEADER)
    print(table_row(breakdown))
    out = _out_dir(args, config)
    if out is not None:
        write_breakdowns(out / "evaluate.csv", [breakdown])
    return EXIT_OK if breakdown.fitness > 0 else EXIT_EMPTY


def cmd_optimize(args):
    config = _require_config(args)
    out = _out_dir(args, config)
    if out is None:
        raise UsageError("optimize needs --out or output_dir in the config")
    result = optimize(config.provider, config.grid, weights=config.weights, gates=config.gates,
                      norm_policy=config.norm_policy, threads=args.threads,
                      n_samples=config.monotonic_samples, **config.context())

    rounds = []
    for i in (1, 2):
        path = out / f"grid_round{i}.csv"
        if i <= len(result.rounds):
            r = result.rounds[i - 1]
            write_breakdowns(path, r.breakdowns)
            rounds.append({
                "round": i,
                "points": len(r.breakdowns),
                "errors": len(r.errors),
                "normalization": {"g0_linear": json_number(r.norm.gain),
                                  "s0_per_mg": json_number(r.norm.sensitivity)},
                "incumbent": _breakdown_json(r.incumbent),
            })
        else:
            write_breakdowns(path, [])
            rounds.append({"round": i, "points": 0, "skipped": True, "incumbent": None})
    summary = {
        "rounds": rounds,
        "final": _breakdown_json(result.final),
        "config": config.echo(),
        "metadata": {"package": "rfid_codesign", "version": __version__},
    }
    dump_json(out / "summary.json", summary)
    if result.final is None:
        print("no feasible geometry found")
        return EXIT_EMPTY
    print(TABLE_HEADER)
    print(table_row(result.final))
    v = result.final.v
    print(f"a1={v.a1:g} mm, a2={v.a2:g} mm, c2={v.c2:g} mm")
    return EXIT_OK


def cmd_sweep(args):
    config = _require_config(args)
    v = _geometry(args)
    points = sweep(config.provider, v, n_points=args.points, **config.context())
    _emit_rows(args, "sweep.csv", SWEEP_COLUMNS, list(sweep_rows(points)), config)
    return EXIT_OK


def cmd_fit(args):
    rows = read_csv(args.input)
    if not rows:
        raise UsageError(f"{args.input} has no data rows")
    for col in (args.x, args.y):
        if col not in rows[0]:
            raise UsageError(f"column {col!r} not in {args.input}")
    xs = [parse_cell(r[args.x]) for r in rows]
    ys = [parse_cell(r[args.y]) for r in rows]
    fit = fit_cubic([float(x) for x in xs], [float(y) for y in ys])
    payload = {"x": args.x, "y": args.y, "points": len(xs),
               "coefficients": [json_number(c) for c in fit.coefficients],
               "r_squared": json_number(fit.r_squared)}
    out = _out_dir(args)
    if out is not None:
        dump_json(out / "fit.json", payload)
        print(out / "fit.json")
    else:
        print(json.dumps(payload, indent=2, sort_keys=True))
    return EXIT_OK


def cmd_range(args):
    frequency = args.freq_hz
    if frequency is None:
        frequency = load_config(args.config).frequency if args.config else DEFAULT_FREQUENCY
    r = reading_range(args.gain_dbi, args.eirp_w, frequency, args.sens_dbm, args.pol_loss)
    print(f"{r:.6g}")
    return EXIT_OK


def _comparison_from_sweeps(sim_rows, meas_rows):
    sim = {round(float(parse_cell(r["fill"])), 9): r for r in sim_rows}
    measured, simulated, names = {}, {}, []
    for r in meas_rows:
        fill = round(float(parse_cell(r["fill"])), 9)
        name = f"delta_code@fill={fill:g}"
        names.append(name)
        spread = parse_cell(r.get("spread"))
        measured[name] = (parse_cell(r["delta_code"]), spread)
        if fill in sim:
            simulated[name] = parse_cell(sim[fill]["delta_code"])
    return compare(simulated, measured, metrics=names)


def cmd_compare(args):
    sim_rows = read_csv(args.sim)
    meas_rows = read_csv(args.meas)
    if not sim_rows or not meas_rows:
        raise UsageError("both --sim and --meas need at least one data row")
    if "fill" in sim_rows[0] and "fill" in meas_rows[0]:
        rows = _comparison_from_sweeps(sim_rows, meas_rows)
    else:
        if "metric" not in meas_rows[0] or "measured" not in meas_rows[0]:
            raise UsageError("measured file needs 'metric,measured[,spread]' columns")
        simulated = {k: parse_cell(v) for k, v in sim_rows[0].items()}
        measured = {}
        for r in meas_rows:
            measured[r["metric"]] = (parse_cell(r["measured"]), parse_cell(r.get("spread")))
        rows = compare(simulated, measured)
    _emit_rows(args, "compare.csv", COMPARISON_COLUMNS, list(comparison_rows(rows)))
    return EXIT_OK


# -- parser -----------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="JSON run configuration")
    common.add_argument("--out", type=Path, help="output directory")
    common.add_argument("--threads", type=int, default=1,
                        help="worker threads for grid evaluation")

    geom = argparse.ArgumentParser(add_help=False)
    geom.add_argument("--a1", type=float, help="Gamma-match side parallel to the IC, mm")
    geom.add_argument("--a2", type=float, help="Gamma-match side perpendicular to the IC, mm")
    geom.add_argument("--c2", type=float, help="channel width, mm")

    parser = _Parser(prog="rfid-codesign",
                     description="Joint design of self-tuning RFID antennas and "
                                 "microfluidic channels.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("evaluate", parents=[common, geom], help="score one geometry")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("optimize", parents=[common], help="two-step grid search")
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("sweep", parents=[common, geom], help="code/gain versus fill")
    p.add_argument("--points", type=int, default=11)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("fit", parents=[common], help="cubic trend fit of a CSV column pair")
    p.add_argument("input", type=Path)
    p.add_argument("--x", default="fill")
    p.add_argument("--y", default="delta_code")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("range", parents=[common], help="free-space read range")
    p.add_argument("--gain-dbi", type=float, required=True, help="realized tag gain, dBi")
    p.add_argument("--eirp-w", type=float, default=1.0)
    p.add_argument("--sens-dbm", type=float, required=True, help="chip read sensitivity, dBm")
    p.add_argument("--pol-loss", type=float, default=0.5, help="polarization factor (linear)")
    p.add_argument("--freq-hz", type=float)
    p.set_defaults(func=cmd_range)

    p = sub.add_parser("compare", parents=[common], help="simulated vs measured table")
    p.add_argument("--sim", type=Path, required=True)
    p.add_argument("--meas", type=Path, required=True)
    p.set_defaults(func=cmd_compare)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (CodesignError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except Exception as exc:  # numpy rank errors and the like
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
