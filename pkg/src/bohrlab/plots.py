"""Figure rendering for CLI reports.

Each saver takes the already-computed report rows and writes one static
figure next to the delimited output.  Rendering is headless (Agg); the
file format follows the path extension.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from . import radii as rd


def _finish(fig, path: str) -> None:
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_radius_plot(problem: rd.RadiusProblem, root: float, path: str) -> None:
    """Q(r) over (0, 1 - delta) with the certified root marked."""
    rs = np.linspace(0.0, min(1.0 - rd.DELTA, max(2.5 * root, 0.5)), 300)
    qs = [rd.q_value(problem, float(r), 1e-6).mid for r in rs]
    fig, ax = plt.subplots(figsize=(5.5, 3.5))
    ax.plot(rs, qs, lw=1.5)
    ax.axhline(0.0, color="0.4", lw=0.8)
    ax.axvline(root, color="crimson", lw=0.8, ls="--", label=f"root r = {root:.6g}")
    ax.set_xlabel("r")
    ax.set_ylabel("Q(r)")
    ax.set_title(f"{type(problem).__name__} radius equation")
    ax.legend(frameon=False)
    _finish(fig, path)


def save_table_plot(theorem: str, rows: list[dict], path: str) -> None:
    """Solved radius against the swept parameter (grouped by k if present)."""
    fig, ax = plt.subplots(figsize=(5.5, 3.5))
    if theorem == "ta":
        xs = [row["n"] for row in rows]
        ax.plot(xs, [row["r"] for row in rows], marker="o", lw=1.2)
        ax.set_xlabel("N")
    elif theorem in ("t31", "t32"):
        xs = [row["beta"] for row in rows]
        ax.plot(xs, [row["r"] for row in rows], marker="o", lw=1.2)
        ax.set_xlabel("beta")
    else:
        ks = sorted({row["k"] for row in rows if row["k"] is not None}) or [None]
        for k in ks:
            sel = [row for row in rows if row["k"] == k]
            label = f"k = {k}" if k is not None else None
            ax.plot([row["alpha"] for row in sel], [row["r"] for row in sel],
                    marker="o", lw=1.2, label=label)
        if ks != [None]:
            ax.legend(frameon=False)
        ax.set_xlabel("alpha")
    ax.set_ylabel("radius")
    ax.set_title(f"{theorem} radius sweep")
    _finish(fig, path)


def save_sharpness_plot(theorem: str, rows: list[dict], path: str) -> None:
    fig, ax = plt.subplots(figsize=(5.5, 3.5))
    gaps = [row["gap"] for row in rows]
    ax.stem(range(len(rows)), gaps)
    ax.axhline(0.0, color="0.4", lw=0.8)
    ax.set_xticks(range(len(rows)))
    ax.set_xlabel("grid point")
    ax.set_ylabel("LHS(extremal) - RHS at the radius")
    ax.set_title(f"{theorem} sharpness gap")
    _finish(fig, path)


def save_verify_plot(theorem: str, summary, path: str) -> None:
    fig, ax = plt.subplots(figsize=(5.5, 3.5))
    ax.hist(summary.margins, bins=40, color="steelblue")
    ax.axvline(0.0, color="crimson", lw=0.8)
    ax.set_xlabel("margin (RHS - LHS)")
    ax.set_ylabel("samples")
    ax.set_title(f"{theorem} fuzz margins at r = {summary.r:.6g}")
    _finish(fig, path)
