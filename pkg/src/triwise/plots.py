"""Figure rendering for CLI reports.

Every renderer writes a PNG next to the delimited output and returns the
path; all figures use the Agg backend so they work headless.
"""

from __future__ import annotations

import os
from fractions import Fraction
from typing import Optional, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .families import Subset
from .intervals import IntervalValue
from .walks import truncated_hitting_series


def _ensure_dir(plot_dir: str) -> None:
    os.makedirs(plot_dir, exist_ok=True)


def walk_figure(
    subsets: Sequence[Subset],
    t: int,
    plot_dir: str,
    name: str = "walk",
    labels: Optional[Sequence[str]] = None,
) -> str:
    """Draw lattice walks together with the lines y=2x+t, t+1, t+2."""
    _ensure_dir(plot_dir)
    fig, ax = plt.subplots(figsize=(6, 6))
    xmax = ymax = 1
    for idx, g in enumerate(subsets):
        xs, ys = [0], [0]
        x = y = 0
        for k in range(1, g.n + 1):
            if k in g:
                y += 1
            else:
                x += 1
            xs.append(x)
            ys.append(y)
        xmax = max(xmax, x)
        ymax = max(ymax, y)
        label = labels[idx] if labels else f"walk {idx + 1}"
        ax.plot(xs, ys, marker=".", linewidth=1.5, label=label)
    for c, style in ((t, "-"), (t + 1, "--"), (t + 2, ":")):
        xs = [0, max(1, (ymax - c) / 2 + 1)]
        ax.plot(xs, [2 * x + c for x in xs], style, color="gray", linewidth=0.8)
        ax.annotate(f"y=2x+{c}", (xs[1], 2 * xs[1] + c), fontsize=8, color="gray")
    ax.set_xlim(-0.5, xmax + 1.5)
    ax.set_ylim(-0.5, max(ymax, 2 * 1 + t) + 1.5)
    ax.set_xlabel("right steps")
    ax.set_ylabel("up steps")
    ax.legend(fontsize=8)
    ax.set_aspect("equal")
    path = os.path.join(plot_dir, f"{name}.png")
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return path


def claim_margins_figure(reports, plot_dir: str, name: str = "claim_margins") -> str:
    """Minimum decided margin per claim, log scale."""
    _ensure_dir(plot_dir)
    fig, ax = plt.subplots(figsize=(8, 4))
    ids, margins, colors = [], [], []
    for rep in reports:
        margin = rep.min_margin
        if margin is None or margin <= 0:
            continue
        ids.append(rep.claim_id)
        margins.append(float(margin) if margin > Fraction(1, 10**300) else 1e-300)
        colors.append({"holds": "tab:green", "fails": "tab:red"}.get(rep.verdict, "tab:orange"))
    ax.bar(ids, margins, color=colors)
    ax.set_yscale("log")
    ax.set_ylabel("minimum separation margin")
    ax.tick_params(axis="x", rotation=45)
    path = os.path.join(plot_dir, f"{name}.png")
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return path


def search_sweep_figure(reports, plot_dir: str, name: str = "search_sweep") -> str:
    """Max measure against p, with the p^t reference curve."""
    _ensure_dir(plot_dir)
    fig, ax = plt.subplots(figsize=(6, 4))
    ps = [float(r.p) for r in reports]
    maxes = [float(r.max_measure) for r in reports]
    refs = [float(r.reference_measure) for r in reports]
    ax.plot(ps, maxes, "o-", label="max measure found")
    ax.plot(ps, refs, "x--", label="reference p^t")
    ax.set_xlabel("p")
    ax.set_ylabel("measure")
    if reports:
        ax.set_title(f"n={reports[0].n}, t={reports[0].t}, r={reports[0].r}")
    ax.legend(fontsize=8)
    path = os.path.join(plot_dir, f"{name}.png")
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return path


def hitting_convergence_figure(
    c: int,
    n_max: int,
    p: Fraction,
    enclosure: IntervalValue,
    plot_dir: str,
    name: str = "hitting_convergence",
) -> str:
    """Truncated hitting measures rising toward the infinite-walk enclosure."""
    _ensure_dir(plot_dir)
    series = truncated_hitting_series(c, n_max, p)
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(range(1, n_max + 1), [float(v) for v in series[1:]], ".-", label=f"first-n hits, line offset {c}")
    limit = float((enclosure**c).mid())
    ax.axhline(limit, color="gray", linestyle="--", label="infinite-walk rate")
    ax.set_xlabel("walk length n")
    ax.set_ylabel("measure")
    ax.set_title(f"p = {p}")
    ax.legend(fontsize=8)
    path = os.path.join(plot_dir, f"{name}.png")
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return path


def constants_figure(constants, plot_dir: str, name: str = "stability_constants") -> str:
    """Bar panel of the stability constants at one (t, p)."""
    _ensure_dir(plot_dir)
    fig, ax = plt.subplots(figsize=(7, 4))
    items = [
        ("eps1", constants.eps1),
        ("eps2", constants.eps2),
        ("eps3", constants.eps3),
        ("eps0", constants.eps0),
        ("eps0'", constants.eps0_prime),
        ("delta1", constants.delta1),
        ("delta2", constants.delta2),
        ("C1", constants.c1),
        ("C2", constants.c2),
        ("C", constants.c),
    ]
    names = [k for k, _ in items]
    vals = [max(v.approx(), 1e-300) for _, v in items]
    ax.bar(names, vals, color="tab:blue")
    ax.set_yscale("log")
    ax.set_title(f"t={constants.t}, p={constants.p} (proof-derived)")
    ax.tick_params(axis="x", rotation=45)
    path = os.path.join(plot_dir, f"{name}.png")
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return path
