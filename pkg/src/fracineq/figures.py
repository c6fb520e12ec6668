"""Optional figure rendering for campaign reports.

matplotlib is imported lazily so report-only runs never load it. All
figures are written as PNG files into the requested directory and the
list of created paths is returned.
"""

from __future__ import annotations

import os

from .campaign import RESIDUAL_GATED_VARIANTS


def _pyplot():
    import matplotlib

    matplotlib.use("Agg", force=True)
    import matplotlib.pyplot as plt

    return plt


def render_figures(report, outdir):
    plt = _pyplot()
    os.makedirs(outdir, exist_ok=True)
    paths = []
    by_suite = {}
    for row in report.rows:
        by_suite.setdefault(row.suite, []).append(row)

    for suite, rows in sorted(by_suite.items()):
        margins = [r.result.margin for r in rows if r.gating and r.refinement_ok]
        if margins:
            fig, ax = plt.subplots(figsize=(7.0, 4.0))
            ax.plot(range(len(margins)), margins, ".", markersize=4)
            ax.axhline(0.0, color="red", linewidth=0.8)
            ax.set_yscale("symlog", linthresh=1e-12)
            ax.set_xlabel("case index")
            ax.set_ylabel("margin")
            ax.set_title(f"{suite}: bound margins")
            path = os.path.join(outdir, f"margins_{suite}.png")
            fig.savefig(path, dpi=110)
            plt.close(fig)
            paths.append(path)
        residuals = [
            abs(r.result.residual)
            for r in rows
            if r.refinement_ok
            and r.result.residual is not None
            and r.result.variant in RESIDUAL_GATED_VARIANTS
        ]
        if residuals:
            fig, ax = plt.subplots(figsize=(7.0, 4.0))
            floor = 1e-18
            ax.semilogy(
                range(len(residuals)), [max(v, floor) for v in residuals],
                ".", markersize=4,
            )
            ax.set_xlabel("case index")
            ax.set_ylabel("|residual|")
            ax.set_title(f"{suite}: agreement residuals")
            path = os.path.join(outdir, f"residuals_{suite}.png")
            fig.savefig(path, dpi=110)
            plt.close(fig)
            paths.append(path)

    suites = sorted(by_suite)
    summary = report.summary["suites"]
    fig, ax = plt.subplots(figsize=(8.0, 4.0))
    counts = [summary[s]["cases"] for s in suites]
    bad = [
        summary[s]["violations"] + summary[s]["identity_failures"] for s in suites
    ]
    xs = range(len(suites))
    ax.bar(xs, counts, color="#4878b0", label="cases")
    ax.bar(xs, bad, color="#d65f5f", label="failures")
    ax.set_xticks(list(xs))
    ax.set_xticklabels(suites, rotation=30, ha="right")
    ax.set_ylabel("count")
    ax.set_title("campaign overview")
    ax.legend()
    fig.tight_layout()
    path = os.path.join(outdir, "overview.png")
    fig.savefig(path, dpi=110)
    plt.close(fig)
    paths.append(path)
    return paths
