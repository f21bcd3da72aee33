"""Diagnostic figures rendered from a finished run report.

Every figure reads only result payloads — nothing is recomputed — so
the pictures always agree with the report they came from.  Rows absent
from the report (filtered runs, indeterminate rows) simply skip their
figure.
"""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

_STATUS_COLORS = {"pass": "#2a9d3a", "fail": "#c23b22",
                  "indeterminate": "#c99700", "literature": "#4878b0"}


def _payloads(report, suffix):
    """Payloads of all Pass/Fail rows whose id ends with the suffix."""
    out = {}
    for result in report.results:
        if result.status in ("Pass", "Fail") and result.id.endswith(suffix):
            out[result.id] = result.payload
    return out


def _save(fig, outdir, name):
    path = Path(outdir) / name
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return path


def figure_status_summary(report, outdir):
    """One bar per status, counting rows of the report."""
    labels = ["pass", "fail", "indeterminate", "literature"]
    counts = [report.summary[k] for k in labels]
    fig, ax = plt.subplots(figsize=(6, 3))
    bars = ax.barh(labels[::-1], counts[::-1],
                   color=[_STATUS_COLORS[k] for k in labels[::-1]])
    for bar, count in zip(bars, counts[::-1]):
        ax.text(bar.get_width() + 0.3, bar.get_y() + bar.get_height() / 2,
                str(count), va="center")
    ax.set_xlabel("checks")
    ax.set_title("run outcome (%d checks)" % report.summary["total"])
    ax.set_xlim(0, max(counts) * 1.15 + 1)
    return _save(fig, outdir, "status_summary.png")


def figure_lift_orders(report, outdir):
    """Subgroup orders of every lift-classification row, log scale."""
    rows = {rid: payload for rid, payload in _payloads(report, "").items()
            if "orders" in payload and "class_count" in payload}
    if not rows:
        return None
    fig, ax = plt.subplots(figsize=(7, 4))
    for rid, payload in sorted(rows.items()):
        orders = payload["orders"]
        ax.plot(range(1, len(orders) + 1), orders, "o-", label=rid,
                alpha=0.85)
    ax.set_yscale("log")
    ax.set_xlabel("class (ascending order)")
    ax.set_ylabel("subgroup order")
    ax.set_title("lift class orders")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend(fontsize=8)
    return _save(fig, outdir, "lift_orders.png")


def figure_zeta_counts(report, outdir):
    """Frobenius traces of the quotient curve against the Weil band."""
    payloads = _payloads(report, ".zeta")
    if not payloads:
        return None
    payload = payloads[sorted(payloads)[0]]
    table = payload["table"]
    primes = sorted(int(p) for p in table)
    traces = [table[str(p)]["c1"] for p in primes]
    band = [4 * math.sqrt(p) for p in primes]
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.fill_between(primes, [-b for b in band], band, color="#4878b0",
                    alpha=0.15, label="|c1| <= 4 sqrt(p)")
    ax.plot(primes, traces, "o-", color="#c23b22", label="c1")
    ax.axhline(0, color="black", linewidth=0.6)
    ax.set_xlabel("prime p")
    ax.set_ylabel("linear zeta coefficient c1")
    ax.set_title("quotient-curve point counts stay inside the Weil band")
    ax.grid(True, alpha=0.3)
    ax.legend(fontsize=8)
    return _save(fig, outdir, "zeta_counts.png")


def render_figures(report, outdir):
    """Write every figure the report's rows support; return the paths."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    paths = [figure_status_summary(report, outdir),
             figure_lift_orders(report, outdir),
             figure_zeta_counts(report, outdir)]
    return [p for p in paths if p is not None]
