"""Projected-gradient ascent over transmitter positions and powers.

Synchronous updates: every transmitter steps simultaneously using gradient
blocks from the same snapshot. Per-iteration displacement is capped (speed
limit), positions are boxed into the arena, powers into [min, max]. A
backtracking line search on the global utility guarantees monotone
improvement over accepted iterations.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

from .utility import (
    Scenario,
    UtilityGradient,
    network_utility,
    two_tx_balance_residual,
    utility_gradient,
)

MIN_BACKTRACK_STEP = 1e-12


@dataclass(frozen=True)
class ControlConstraints:
    """Feasible set for the controller: speed, power box, and arena."""

    max_step: float = 0.5          # meters per iteration
    min_power: float = 1e-6        # watts
    max_power: float = 1.0         # watts
    arena: tuple = (-100.0, -100.0, 100.0, 100.0)  # (xmin, ymin, xmax, ymax)
    optimize_positions: bool = True
    optimize_powers: bool = False

    def __post_init__(self):
        if self.max_step <= 0:
            raise ValueError("max_step must be > 0")
        if not (0 < self.min_power <= self.max_power):
            raise ValueError("need 0 < min_power <= max_power")
        xmin, ymin, xmax, ymax = self.arena
        if not (xmin < xmax and ymin < ymax):
            raise ValueError("arena box must be nonempty")

    def clip_to_arena(self, positions: np.ndarray) -> np.ndarray:
        xmin, ymin, xmax, ymax = self.arena
        return np.clip(positions, [xmin, ymin], [xmax, ymax])

    def contains(self, position) -> bool:
        xmin, ymin, xmax, ymax = self.arena
        x, y = position
        return xmin <= x <= xmax and ymin <= y <= ymax


@dataclass(frozen=True)
class ControllerOptions:
    step_size: float = 1.0
    backtracking_factor: float = 0.5
    max_iterations: int = 500
    tolerance: float = 1e-9  # minimum utility improvement per iteration

    def __post_init__(self):
        if self.step_size <= 0:
            raise ValueError("step_size must be > 0")
        if not (0 < self.backtracking_factor < 1):
            raise ValueError("backtracking_factor must be in (0, 1)")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if self.tolerance < 0:
            raise ValueError("tolerance must be >= 0")


@dataclass
class Trajectory:
    """Accepted controller states, one snapshot per accepted iteration plus
    the start state."""

    tx_ids: tuple
    positions: np.ndarray   # (n_snapshots, n_tx, 2)
    powers: np.ndarray      # (n_snapshots, n_tx)
    utilities: np.ndarray   # (n_snapshots,)
    residuals: np.ndarray   # (n_snapshots,); nan unless exactly 2 Tx
    converged: bool
    iterations_used: int


def projected_step(s: Scenario, g: UtilityGradient, step: float) -> Scenario:
    """One synchronous ascent step, projected onto the feasible set.

    Displacements are capped to max_step per transmitter *before* the arena
    box clip (the composition is not commutative)."""
    if step <= 0:
        raise ValueError("step must be > 0")
    if not (np.all(np.isfinite(g.d_positions)) and np.all(np.isfinite(g.d_powers))):
        raise ValueError("gradient must be finite")
    cons: ControlConstraints = s.constraints or ControlConstraints()
    txs = s.transmitters()
    positions = np.array([t.position for t in txs])
    powers = np.array([t.tx_power for t in txs])

    if cons.optimize_positions:
        disp = step * g.d_positions
        norms = np.linalg.norm(disp, axis=1)
        over = norms > cons.max_step
        if np.any(over):
            disp[over] *= (cons.max_step / norms[over])[:, None]
        positions = cons.clip_to_arena(positions + disp)
    if cons.optimize_powers:
        powers = np.clip(powers + step * g.d_powers, cons.min_power, cons.max_power)

    return s.with_transmitter_state(positions, powers)


def run(s: Scenario, opts: ControllerOptions = None) -> Trajectory:
    """Iterate gradient + projected step with backtracking until the utility
    improvement drops below tolerance or max_iterations is exhausted."""
    opts = opts or ControllerOptions()
    u = network_utility(s)
    if not np.isfinite(u):
        raise ValueError("start configuration has -inf utility; fix it before optimizing")

    n_tx = len(s.transmitters())
    tx_ids = tuple(t.id for t in s.transmitters())
    snapshots_pos = [np.array([t.position for t in s.transmitters()])]
    snapshots_pow = [np.array([t.tx_power for t in s.transmitters()])]
    utilities = [u]
    residuals = [two_tx_balance_residual(s) if n_tx == 2 else float("nan")]

    converged = False
    accepted = 0
    for _ in range(opts.max_iterations):
        g = utility_gradient(s)
        step = opts.step_size
        candidate, u_cand = None, None
        while step >= MIN_BACKTRACK_STEP:
            trial = projected_step(s, g, step)
            u_trial = network_utility(trial)
            if u_trial > u:
                candidate, u_cand = trial, u_trial
                break
            step *= opts.backtracking_factor
        if candidate is None:
            # No improving step exists down to the underflow floor: treat as
            # zero improvement, which is below any tolerance.
            converged = True
            break
        gain = u_cand - u
        s, u = candidate, u_cand
        accepted += 1
        snapshots_pos.append(np.array([t.position for t in s.transmitters()]))
        snapshots_pow.append(np.array([t.tx_power for t in s.transmitters()]))
        utilities.append(u)
        residuals.append(two_tx_balance_residual(s) if n_tx == 2 else float("nan"))
        if gain < opts.tolerance:
            converged = True
            break

    return Trajectory(
        tx_ids=tx_ids,
        positions=np.array(snapshots_pos),
        powers=np.array(snapshots_pow),
        utilities=np.array(utilities),
        residuals=np.array(residuals),
        converged=converged,
        iterations_used=accepted,
    )


def trajectory_header(tx_ids) -> list:
    cols = ["iteration"]
    for tid in tx_ids:
        cols += [f"tx{tid}_x", f"tx{tid}_y", f"tx{tid}_power_w"]
    cols += ["utility", "balance_residual"]
    return cols


def trajectory_to_csv(traj: Trajectory, path) -> None:
    """Write the trajectory as a CSV time series, full float precision."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(trajectory_header(traj.tx_ids))
        for k in range(traj.positions.shape[0]):
            row = [k]
            for m in range(len(traj.tx_ids)):
                row += [repr(float(traj.positions[k, m, 0])), repr(float(traj.positions[k, m, 1])),
                        repr(float(traj.powers[k, m]))]
            row += [repr(float(traj.utilities[k])), repr(float(traj.residuals[k]))]
            writer.writerow(row)
