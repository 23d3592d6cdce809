"""Figure rendering for the CLI report paths. Headless backend only."""

from __future__ import annotations

from typing import List, Sequence, Tuple

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


def render_curve(rows: Sequence[Tuple[float, float]], xlabel: str, ylabel: str,
                 path: str, title: str = "") -> None:
    xs = [r[0] for r in rows]
    ys = [r[1] for r in rows]
    fig, ax = plt.subplots(figsize=(6.0, 4.0), dpi=130)
    ax.plot(xs, ys, lw=1.6)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    if title:
        ax.set_title(title)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def render_extension(rows: Sequence[Tuple[float, float]], path: str) -> None:
    xs = [r[0] for r in rows]
    ys = [r[1] for r in rows]
    fig, ax = plt.subplots(figsize=(6.0, 4.0), dpi=130)
    ax.plot(xs, ys, "o-", lw=1.4)
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("mean photon number")
    ax.set_ylabel("extension s / l")
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
