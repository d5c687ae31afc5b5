"""SVG figure output: fitted-curve overlays, transmitter trajectories, and
utility/PRR curves. SVG keeps the artifacts self-contained and diffable."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .reception import SigmoidParams, link_prr_from_sinr


def plot_fit_overlay(samples, params: SigmoidParams, path) -> None:
    """Scatter of the empirical samples with the fitted curve on top."""
    gammas = np.array([s.sinr_db for s in samples])
    prrs = np.array([s.prr for s in samples])
    grid = np.linspace(gammas.min() - 2, gammas.max() + 2, 400)
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.scatter(gammas, prrs, s=18, color="tab:blue", label="samples", zorder=3)
    ax.plot(grid, link_prr_from_sinr(grid, params), color="tab:red",
            label=f"fit: alpha={params.alpha:.4g}, beta={params.beta:.4g}")
    ax.set_xlabel("SINR (dB)")
    ax.set_ylabel("packet reception rate")
    ax.set_ylim(-0.02, 1.02)
    ax.grid(alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)


def plot_trajectories(traj, receivers, arena, path) -> None:
    """Transmitter paths across the arena, with receivers as fixed markers."""
    fig, ax = plt.subplots(figsize=(6, 6))
    xmin, ymin, xmax, ymax = arena
    ax.add_patch(plt.Rectangle((xmin, ymin), xmax - xmin, ymax - ymin,
                               fill=False, linestyle="--", color="gray", label="arena"))
    for m, tid in enumerate(traj.tx_ids):
        xs, ys = traj.positions[:, m, 0], traj.positions[:, m, 1]
        ax.plot(xs, ys, "-o", markersize=2.5, label=f"tx {tid}")
        ax.plot(xs[0], ys[0], "s", color="black", markersize=6)
        ax.plot(xs[-1], ys[-1], "*", color="green", markersize=10)
    for rx in receivers:
        ax.plot(rx.position[0], rx.position[1], "^", color="tab:red", markersize=9)
        ax.annotate(f"rx {rx.id}", rx.position, textcoords="offset points", xytext=(6, 6))
    ax.set_xlabel("x (m)")
    ax.set_ylabel("y (m)")
    ax.set_aspect("equal")
    ax.grid(alpha=0.3)
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)


def plot_utility_history(traj, path) -> None:
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot(np.arange(traj.utilities.size), traj.utilities, "-o", markersize=2.5)
    ax.set_xlabel("iteration")
    ax.set_ylabel("network utility")
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)


def plot_sweep(result, path, xlabel="power ratio p1/p2", log_x=True) -> None:
    fig, ax = plt.subplots(figsize=(7, 4))
    plot = ax.semilogx if log_x else ax.plot
    plot(result.params, result.utilities, "-")
    ax.axvline(result.best_param, color="tab:red", linestyle="--",
               label=f"argmax = {result.best_param:.4g}")
    ax.set_xlabel(xlabel)
    ax.set_ylabel("network utility")
    ax.grid(alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)
