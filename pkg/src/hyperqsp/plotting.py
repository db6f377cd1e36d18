"""Optional figures for the command-line reports.

Only the CLI calls these, and only when ``--figure`` is given. The
non-interactive Agg backend is selected so that no display is needed.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

FIG_SIZE = (5.0, 3.4)


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def plot_sweep(x: Sequence[float], modsq: Sequence[float], bounds: dict, path: str, title: str = "") -> None:
    """|P|^2 against x on a log scale, with any bound columns overlaid.

    ``bounds`` maps a label to values on the same grid; NaN entries are
    left out (a bound outside its range of validity).
    """
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=FIG_SIZE)
    x = np.asarray(x, dtype=float)
    ax.semilogy(x, np.asarray(modsq, dtype=float), color="k", lw=1.2, label="|P|$^2$")
    styles = ["--", ":", "-."]
    for k, (label, vals) in enumerate(sorted(bounds.items())):
        v = np.asarray(vals, dtype=float)
        keep = np.isfinite(v) & (v > 0)
        ax.semilogy(x[keep], v[keep], styles[k % len(styles)], lw=1.0, label=label)
    ax.set_xlabel("x")
    ax.set_ylabel("|P(x)|$^2$")
    if title:
        ax.set_title(title, fontsize=9)
    ax.legend(fontsize=8, frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_residuals(degrees: Sequence[int], l2: Sequence[float], sup: Sequence[float], path: str,
                   title: str = "") -> None:
    """Fit residuals against polynomial degree."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=FIG_SIZE)
    ax.semilogy(degrees, l2, "o-", ms=3, lw=1.0, label="L2 residual")
    ax.semilogy(degrees, sup, "s--", ms=3, lw=1.0, label="max residual")
    ax.set_xlabel("degree")
    ax.set_ylabel("residual")
    if title:
        ax.set_title(title, fontsize=9)
    ax.legend(fontsize=8, frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
