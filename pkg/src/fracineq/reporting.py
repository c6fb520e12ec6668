"""Report serialization: JSON and CSV writers with pinned layouts.

Reruns of the same config must serialize byte-identically except for the
wall_time_s field, so floats are written with repr (JSON) or .17g (CSV)
and JSON keys are sorted.
"""

from __future__ import annotations

import csv
import io
import json
import os

ARTIFACT_VERSION = "1"

CSV_COLUMNS = (
    "case_id",
    "suite",
    "variant",
    "alpha",
    "beta",
    "rho",
    "eta",
    "kappa",
    "a",
    "gamma",
    "x",
    "seed",
    "lhs",
    "rhs",
    "margin",
    "residual",
)


def _g17(value):
    if value is None:
        return ""
    return format(float(value), ".17g")


def case_dict(row):
    """Full JSON record for one campaign row."""
    res = row.result
    p = res.params
    return {
        "case_id": res.case_id,
        "suite": row.suite,
        "variant": res.variant,
        "alpha": p.alpha,
        "beta": p.beta,
        "rho": p.rho,
        "eta": p.eta,
        "kappa": p.kappa,
        "a": p.lower,
        "gamma": res.gamma,
        "x": res.x,
        "seed": res.seed,
        "lhs": res.lhs,
        "rhs": res.rhs,
        "margin": res.margin,
        "residual": res.residual,
        "lambda_alpha": res.lambda_alpha,
        "lambda_gamma": res.lambda_gamma,
        "gating": row.gating,
        "refinement_ok": row.refinement_ok,
    }


def report_document(report):
    return {
        "artifact_version": ARTIFACT_VERSION,
        "config": report.config,
        "summary": report.summary,
        "cases": [case_dict(row) for row in report.rows],
        "wall_time_s": report.wall_time_s,
    }


def render_json(report):
    return json.dumps(report_document(report), indent=2, sort_keys=True) + "\n"


def render_csv(report):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in report.rows:
        record = case_dict(row)
        out = []
        for col in CSV_COLUMNS:
            value = record[col]
            if col in ("case_id", "suite", "variant"):
                out.append(value)
            elif col == "seed":
                out.append(str(int(value)))
            else:
                out.append(_g17(value))
        writer.writerow(out)
    return buf.getvalue()


def write_report(report, path, fmt):
    if fmt == "json":
        text = render_json(report)
    elif fmt == "csv":
        text = render_csv(report)
    else:
        raise ValueError(f"unknown report format {fmt!r}")
    parent = os.path.dirname(os.path.abspath(path))
    os.makedirs(parent, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    return path
