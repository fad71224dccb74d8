"""CSV/JSON serialization of breakdowns, sweeps, fits and comparison tables.

Numbers are written with 6 significant digits so files are stable across
runs and platforms.
"""

from __future__ import annotations

import csv
import json
import math

BREAKDOWN_COLUMNS = (
    "a1_mm", "a2_mm", "c2_mm", "F", "f1", "f2", "f3", "s_u", "s_u_minus_s_l", "S_per_mg",
    "gt_empty_dbi", "gt_full_dbi", "delta_gt_db", "capacity_mg", "feasible", "error",
)
SWEEP_COLUMNS = ("fill", "mass_mg", "code", "delta_code", "gt_dbi", "tau", "saturated")
COMPARISON_COLUMNS = ("metric", "measured", "spread", "simulated", "difference")


def fmt(value):
    """Format a cell: 6 significant digits, blank for missing values."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if math.isnan(value):
            return ""
        if math.isinf(value):
            return "-inf" if value < 0 else "inf"
        text = f"{value:.6g}"
        return "0" if text == "-0" else text
    return str(value)


def json_number(value):
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return None
    if isinstance(value, float):
        if math.isinf(value):
            return "-inf" if value < 0 else "inf"
        return float(f"{value:.6g}")
    return value


def breakdown_row(b):
    m = b.metrics
    ok = m.error is None
    return {
        "a1_mm": b.v.a1, "a2_mm": b.v.a2, "c2_mm": b.v.c2,
        "F": b.fitness, "f1": b.f1, "f2": b.f2, "f3": b.f3,
        "s_u": b.code_empty, "s_u_minus_s_l": b.code_swing,
        "S_per_mg": b.sensitivity if ok else None,
        "gt_empty_dbi": b.realized_empty if ok else None,
        "gt_full_dbi": b.realized_full if ok else None,
        "delta_gt_db": b.gain_change if ok else None,
        "capacity_mg": m.capacity_mass if ok else None,
        "feasible": m.feasible,
        "error": m.error,
    }


def write_rows(target, columns, rows):
    """Write dict rows to a path or an open text stream."""
    if hasattr(target, "write"):
        _write(target, columns, rows)
        return
    with open(target, "w", newline="") as fh:
        _write(fh, columns, rows)


def _write(fh, columns, rows):
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([fmt(row.get(c)) for c in columns])


def write_breakdowns(path, breakdowns):
    write_rows(path, BREAKDOWN_COLUMNS, (breakdown_row(b) for b in breakdowns))


def sweep_rows(points):
    for p in points:
        yield {"fill": p.fill_fraction, "mass_mg": p.mass, "code": p.code,
               "delta_code": p.delta_code, "gt_dbi": p.realized_gain, "tau": p.tau,
               "saturated": p.saturated}


def write_sweep(path, points):
    write_rows(path, SWEEP_COLUMNS, sweep_rows(points))


def comparison_rows(rows):
    for r in rows:
        yield {"metric": r.metric, "measured": r.measured, "spread": r.spread,
               "simulated": r.simulated, "difference": r.difference}


def write_comparison(path, rows):
    write_rows(path, COMPARISON_COLUMNS, comparison_rows(rows))


def read_csv(path):
    """Read a CSV into a list of dicts, skipping ``#`` comment lines."""
    with open(path, newline="") as fh:
        lines = [line for line in fh if line.strip() and not line.lstrip().startswith("#")]
    return list(csv.DictReader(lines))


def parse_cell(text):
    if text is None or text.strip() == "":
        return None
    text = text.strip()
    if text in ("true", "false"):
        return text == "true"
    try:
        return int(text)
    except ValueError:
        return float(text)


def table_row(b):
    """Console row at two-decimal table precision."""
    if b.error is not None:
        return f"error: {b.error}"
    parts = [f"{b.fitness:.2f}", f"{b.f1:.2f}", f"{b.f2:.2f}", f"{b.f3:.2f}",
             str(b.code_empty), str(b.code_swing), f"{b.sensitivity:.1f}",
             f"{b.realized_empty:.1f}", f"{b.realized_full:.1f}", f"{b.gain_change:.1f}"]
    return ", ".join(parts)


TABLE_HEADER = "F, f1, f2, f3, s_u, s_u-s_l, S [1/mg], Gt(empty) [dBi], Gt(full) [dBi], dGt [dB]"


def dump_json(path, payload):
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
