"""Figure rendering for radius sweeps.

Renders the fixed-coefficient radius curve r(a) produced by the sweep
command: certified grid points solid, uncertified ones dashed, and for the
antiderivative quantity the diagonal r = a, whose intersection with the
curve marks the edge of the certified region near a = 0.8926.
"""

from __future__ import annotations

from pathlib import Path
from typing import Mapping, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)


def render_sweep(rows: Sequence[Mapping], quantity: str,
                 path: str | Path) -> str:
    """Render sweep rows {a, r, valid, condition[, diag]} to a PNG file.

    Returns the path written.  Rows with a null radius are skipped; rows
    outside the certified region are drawn dashed so the validity boundary
    is visible.
    """
    certified = [(row["a"], row["r"]) for row in rows
                 if row["r"] is not None and row["valid"]]
    uncertified = [(row["a"], row["r"]) for row in rows
                   if row["r"] is not None and not row["valid"]]
    diagonal = [(row["a"], row["diag"]) for row in rows if "diag" in row]

    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    if certified:
        ax.plot(*zip(*certified), "-", color="tab:blue", lw=1.8,
                label="certified r(a)")
    if uncertified:
        ax.plot(*zip(*uncertified), "--", color="tab:orange", lw=1.4,
                label="uncertified r(a)")
    if diagonal:
        ax.plot(*zip(*diagonal), ":", color="tab:gray", lw=1.2,
                label="r = a")
    ax.set_xlabel("fixed coefficient a")
    ax.set_ylabel("radius r")
    ax.set_title(f"radius sweep: {quantity}")
    ax.grid(alpha=0.3)
    if certified or uncertified or diagonal:
        ax.legend(loc="best", fontsize=9)
    fig.tight_layout()
    out = Path(path)
    fig.savefig(out, dpi=150)
    plt.close(fig)
    return str(out)
