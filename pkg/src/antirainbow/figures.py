"""Matplotlib rendering for experiment reports.

Figures are written straight to files (Agg backend, no display); each
report function takes the already-aggregated sweep data, so rendering
never re-runs trials.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .experiments import SweepPoint, TrialRecord


def save_rate_curve(points: list[SweepPoint], path: str, n: int) -> None:
    """Empirical containment probability against edge probability."""
    ps = [float(pt.p) for pt in points]
    rates = [float(pt.rate) for pt in points]
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.plot(ps, rates, marker="o", color="tab:blue")
    ax.set_xlabel("edge probability p")
    ax.set_ylabel("empirical Pr(triangle present)")
    ax.set_title(f"Triangle containment in G({n}, p)")
    ax.set_ylim(-0.05, 1.05)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_pipeline_summary(records: list[TrialRecord], path: str) -> None:
    """Per-trial edge counts with pass/fail shading for the pipeline checks."""
    ran = [rec for rec in records if not rec.skipped]
    fig, (ax1, ax2) = plt.subplots(2, 1, figsize=(6.0, 5.5))

    xs = [rec.trial_index for rec in ran]
    ys = [rec.edge_count for rec in ran]
    ok = [
        bool(rec.coloring_proper) and bool(rec.decomposition_ok) and rec.error is None
        for rec in ran
    ]
    colors = ["tab:green" if flag else "tab:red" for flag in ok]
    ax1.scatter(xs, ys, c=colors, s=18)
    ax1.set_xlabel("trial index")
    ax1.set_ylabel("edges sampled")
    ax1.set_title("Colouring and decomposition checks per trial")
    ax1.grid(True, alpha=0.3)

    ms = [float(rec.m_value) for rec in ran if rec.m_value is not None]
    if ms:
        ax2.hist(ms, bins=min(20, max(3, len(set(ms)))), color="tab:blue", alpha=0.8)
    ax2.set_xlabel("maximal density m(G)")
    ax2.set_ylabel("trials")
    ax2.grid(True, alpha=0.3)

    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
