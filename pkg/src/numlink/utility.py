"""Network utility U = sum over links of log(reception probability), its
analytic gradient with respect to transmitter positions and powers, the
two-transmitter balance residual, and brute-force sweep oracles."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .geometry import ChannelParams, Node, Role
from .reception import SigmoidParams, prr_from_powers


@dataclass
class Scenario:
    """The unit of evaluation: nodes plus channel, curve, and control settings."""

    nodes: list
    channel: ChannelParams
    sigmoid: SigmoidParams
    constraints: Optional[object] = None  # ControlConstraints; None for pure evaluation

    def __post_init__(self):
        ids = [n.id for n in self.nodes]
        if len(set(ids)) != len(ids):
            dup = sorted({i for i in ids if ids.count(i) > 1})
            raise ValueError(f"duplicate node id(s): {dup}")
        if not self.transmitters():
            raise ValueError("scenario needs at least one transmitter")
        if not self.receivers():
            raise ValueError("scenario needs at least one receiver")

    def transmitters(self) -> list:
        return [n for n in self.nodes if n.role is Role.TRANSMITTER]

    def receivers(self) -> list:
        return [n for n in self.nodes if n.role is Role.RECEIVER]

    def with_transmitter_state(self, positions, powers=None) -> "Scenario":
        """Copy of the scenario with transmitter positions (and optionally
        powers) replaced, in transmitter order. Receivers are untouched."""
        positions = np.asarray(positions, dtype=float)
        txs = self.transmitters()
        if positions.shape != (len(txs), 2):
            raise ValueError("positions must have shape (n_tx, 2)")
        if powers is not None and len(powers) != len(txs):
            raise ValueError("powers must have one entry per transmitter")
        by_id = {}
        for k, tx in enumerate(txs):
            by_id[tx.id] = tx.moved_to(positions[k], None if powers is None else powers[k])
        new_nodes = [by_id.get(n.id, n) for n in self.nodes]
        return Scenario(nodes=new_nodes, channel=self.channel,
                        sigmoid=self.sigmoid, constraints=self.constraints)


@dataclass(frozen=True)
class UtilityGradient:
    """Gradient blocks per transmitter, in transmitter order."""

    d_positions: np.ndarray  # (n_tx, 2), utility per meter
    d_powers: np.ndarray     # (n_tx,), utility per watt
    tx_ids: tuple


@dataclass(frozen=True)
class SweepResult:
    """Outcome of a 1-D brute-force utility sweep."""

    params: np.ndarray      # swept parameter values (ratio or arc length)
    utilities: np.ndarray
    best_index: int
    best_param: float
    best_utility: float


def _link_arrays(s: Scenario):
    """Distances, gains, signals and interference+noise denominators.

    Returns (dist, gain, S, D) all shaped (n_rx, n_tx): D[i, j] is the
    interference-plus-noise seen by receiver i when decoding transmitter j.
    """
    txs, rxs = s.transmitters(), s.receivers()
    tx_pos = np.array([t.position for t in txs])
    rx_pos = np.array([r.position for r in rxs])
    tx_pow = np.array([t.tx_power for t in txs])
    dist = np.linalg.norm(rx_pos[:, None, :] - tx_pos[None, :, :], axis=2)
    d_eff = np.maximum(dist, s.channel.min_distance)
    gain = s.channel.reference_gain * d_eff ** (-s.channel.path_loss_exponent)
    sig = gain * tx_pow[None, :]
    total = sig.sum(axis=1, keepdims=True)
    denom = total - sig + s.channel.noise_power
    return dist, gain, sig, denom


def link_model_prrs(s: Scenario) -> np.ndarray:
    """Model reception probability of every link, shaped (n_rx, n_tx)."""
    _, _, sig, denom = _link_arrays(s)
    return prr_from_powers(sig, denom - s.channel.noise_power, s.channel.noise_power, s.sigmoid)


def network_utility(s: Scenario) -> float:
    """Sum of log reception probabilities over all Tx -> Rx ordered pairs.

    Returns -inf if any link probability is 0 (dead transmitter)."""
    p = link_model_prrs(s)
    if np.any(p == 0.0):
        return float("-inf")
    return float(np.sum(np.log(p)))


def utility_gradient(s: Scenario) -> UtilityGradient:
    """Analytic gradient of the network utility.

    For each link, d(log P)/d(log rho) = beta' * (1 - P) with rho = S/(I+N);
    the chain rule through the power-law gains yields, per transmitter m,

        dU/dtheta_m = sum_i w_im * dS_im/dtheta_m,
        w_im = c_im / S_im - sum_{j != m} c_ij / D_ij,   c_ij = beta' (1 - P_ij).

    At links where the distance clamp is active the position derivative of the
    gain is taken as 0 (subgradient of the clamp).
    """
    txs, rxs = s.transmitters(), s.receivers()
    dist, gain, sig, denom = _link_arrays(s)
    p = prr_from_powers(sig, denom - s.channel.noise_power, s.channel.noise_power, s.sigmoid)
    if np.any(p == 0.0):
        raise ValueError("utility is -inf (a link has zero probability); no gradient exists")

    bp = s.sigmoid.beta_prime
    c = bp * (1.0 - p)                       # (n_rx, n_tx)
    inv_d = c / denom
    w = c / sig - (inv_d.sum(axis=1, keepdims=True) - inv_d)

    # dS_im/d(power_m) = g_im; dS_im/d(pos_m) = p_m * dg/dd * unit(pos_m - rx_i)
    d_powers = np.sum(w * gain, axis=0)

    tx_pos = np.array([t.position for t in txs])
    rx_pos = np.array([r.position for r in rxs])
    tx_pow = np.array([t.tx_power for t in txs])
    eta = s.channel.path_loss_exponent
    diff = tx_pos[None, :, :] - rx_pos[:, None, :]          # (n_rx, n_tx, 2)
    with np.errstate(divide="ignore", invalid="ignore"):
        dgain_dd = np.where(dist > s.channel.min_distance, -eta * gain / dist, 0.0)
        unit = np.where(dist[:, :, None] > 0, diff / np.where(dist == 0, 1.0, dist)[:, :, None], 0.0)
    d_positions = np.sum((w * dgain_dd * tx_pow[None, :])[:, :, None] * unit, axis=0)

    return UtilityGradient(d_positions=d_positions, d_powers=d_powers,
                           tx_ids=tuple(t.id for t in txs))


def two_tx_balance_residual(s: Scenario) -> float:
    """Worst-receiver normalized signal imbalance for a 2-transmitter network.

    0 iff both transmitters deliver equal signal power at every receiver."""
    if len(s.transmitters()) != 2:
        raise ValueError("balance residual is defined only for exactly 2 transmitters")
    _, _, sig, _ = _link_arrays(s)
    s1, s2 = sig[:, 0], sig[:, 1]
    return float(np.max(np.abs(s1 - s2) / np.maximum(s1, s2)))


def sweep_power_ratio(s: Scenario, ratios) -> SweepResult:
    """Evaluate U along the 2-Tx power-ratio family with total power fixed.

    ratio r splits the total as p1 = T*r/(1+r), p2 = T/(1+r)."""
    txs = s.transmitters()
    if len(txs) != 2:
        raise ValueError("power-ratio sweep requires exactly 2 transmitters")
    ratios = np.asarray(ratios, dtype=float)
    if ratios.size < 1:
        raise ValueError("empty sweep grid")
    total = txs[0].tx_power + txs[1].tx_power
    positions = np.array([t.position for t in txs])
    utilities = np.empty(ratios.size)
    for k, r in enumerate(ratios):
        powers = (total * r / (1.0 + r), total / (1.0 + r))
        utilities[k] = network_utility(s.with_transmitter_state(positions, powers))
    best = int(np.argmax(utilities))  # ties: lowest index wins
    return SweepResult(params=ratios, utilities=utilities, best_index=best,
                       best_param=float(ratios[best]), best_utility=float(utilities[best]))


def sweep_position(s: Scenario, tx_id: int, start, end, num: int) -> SweepResult:
    """Evaluate U while one transmitter slides along a line segment.

    The sweep parameter is the arc length from ``start``."""
    if len(s.transmitters()) != 2:
        raise ValueError("position sweep requires exactly 2 transmitters")
    if num < 1:
        raise ValueError("empty sweep grid")
    start = np.asarray(start, dtype=float)
    end = np.asarray(end, dtype=float)
    fracs = np.linspace(0.0, 1.0, num) if num > 1 else np.array([0.0])
    arc = fracs * float(np.linalg.norm(end - start))
    txs = s.transmitters()
    idx = next(k for k, t in enumerate(txs) if t.id == tx_id)
    base = np.array([t.position for t in txs])
    utilities = np.empty(num)
    for k, f in enumerate(fracs):
        pos = base.copy()
        pos[idx] = start + f * (end - start)
        utilities[k] = network_utility(s.with_transmitter_state(pos))
    best = int(np.argmax(utilities))
    return SweepResult(params=arc, utilities=utilities, best_index=best,
                       best_param=float(arc[best]), best_utility=float(utilities[best]))


def brute_force_optimum(s: Scenario, axis: str, grid) -> SweepResult:
    """Exhaustive 1-D utility sweep; the optimization oracle for small cases.

    axis "power_ratio": grid is an array of p1/p2 ratios.
    axis "position_1d": grid is (tx_id, start, end, num).
    """
    if axis == "power_ratio":
        return sweep_power_ratio(s, grid)
    if axis == "position_1d":
        tx_id, start, end, num = grid
        return sweep_position(s, tx_id, start, end, num)
    raise ValueError(f"unknown sweep axis {axis!r}")


def is_unimodal(values, rel_tol: float = 0.0) -> bool:
    """True when the sequence rises to a single peak then falls (weakly)."""
    v = np.asarray(values, dtype=float)
    if v.size < 3:
        return True
    diffs = np.diff(v)
    scale = max(np.max(np.abs(v)), 1.0)
    sign = np.where(np.abs(diffs) <= rel_tol * scale, 0, np.sign(diffs))
    sign = sign[sign != 0]
    drops = np.flatnonzero(np.diff(sign) != 0)
    return drops.size <= 1 and (drops.size == 0 or sign[0] > 0)
