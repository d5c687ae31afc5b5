"""Planar node geometry, power-law path loss, and per-link power budgets.

All quantities are kept in linear units (watts, meters) here; dB and dBm
appear only at file/CLI boundaries.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable

import numpy as np


class Role(Enum):
    TRANSMITTER = "tx"
    RECEIVER = "rx"


@dataclass(frozen=True)
class Node:
    """A network node: a transmitter or a stationary receiver."""

    id: int
    role: Role
    position: np.ndarray  # shape (2,), meters
    tx_power: float = 0.0  # watts; must be 0 for receivers

    def __post_init__(self):
        pos = np.asarray(self.position, dtype=float)
        if pos.shape != (2,):
            raise ValueError(f"node {self.id}: position must be a 2-vector")
        if not np.all(np.isfinite(pos)):
            raise ValueError(f"node {self.id}: position components must be finite")
        object.__setattr__(self, "position", pos)
        if not np.isfinite(self.tx_power) or self.tx_power < 0:
            raise ValueError(f"node {self.id}: tx_power must be finite and >= 0")
        if self.role is Role.RECEIVER and self.tx_power != 0.0:
            raise ValueError(f"node {self.id}: receivers must have tx_power = 0")

    def moved_to(self, position, tx_power=None) -> "Node":
        return Node(
            id=self.id,
            role=self.role,
            position=np.asarray(position, dtype=float),
            tx_power=self.tx_power if tx_power is None else float(tx_power),
        )


@dataclass(frozen=True)
class ChannelParams:
    """Deterministic power-law channel: gain = G0 * max(d, d_min)^(-eta)."""

    path_loss_exponent: float = 2.0  # eta >= 2
    reference_gain: float = 1.0      # linear gain at 1 m
    noise_power: float = 1e-12       # watts
    min_distance: float = 1.0        # meters; removes the d -> 0 singularity

    def __post_init__(self):
        if self.path_loss_exponent < 2.0:
            raise ValueError("path_loss_exponent must be >= 2")
        if self.reference_gain <= 0:
            raise ValueError("reference_gain must be > 0")
        if self.noise_power < 0:
            raise ValueError("noise_power must be >= 0")
        if self.min_distance <= 0:
            raise ValueError("min_distance must be > 0")


@dataclass(frozen=True)
class LinkPowers:
    """Received powers seen by one Tx->Rx link, in watts."""

    signal: float
    interference: float
    noise: float

    def __post_init__(self):
        for name in ("signal", "interference", "noise"):
            v = getattr(self, name)
            if not np.isfinite(v) or v < 0:
                raise ValueError(f"{name} must be finite and >= 0")


def pairwise_distance(a, b) -> float:
    """Euclidean distance between two planar points."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return float(np.hypot(a[0] - b[0], a[1] - b[1]))


def channel_gain(d, params: ChannelParams):
    """Path-loss gain at distance d (scalar or array), clamped below d_min."""
    d_eff = np.maximum(np.asarray(d, dtype=float), params.min_distance)
    g = params.reference_gain * d_eff ** (-params.path_loss_exponent)
    return float(g) if np.isscalar(d) or np.ndim(d) == 0 else g


def link_powers(rx: Node, tx: Node, all_tx: Iterable[Node], params: ChannelParams) -> LinkPowers:
    """Signal, interference, and noise powers for the rx <- tx link.

    Interference sums the received power from every other transmitter in
    ``all_tx``.
    """
    all_tx = list(all_tx)
    if rx.role is not Role.RECEIVER:
        raise ValueError(f"node {rx.id} is not a receiver")
    if not any(t is tx or t.id == tx.id for t in all_tx):
        raise ValueError(f"transmitter {tx.id} is not in the transmitter set")
    for t in all_tx:
        if t.role is not Role.TRANSMITTER:
            raise ValueError(f"node {t.id} in the transmitter set is not a transmitter")

    signal = channel_gain(pairwise_distance(rx.position, tx.position), params) * tx.tx_power
    interference = 0.0
    for other in all_tx:
        if other.id == tx.id:
            continue
        interference += channel_gain(pairwise_distance(rx.position, other.position), params) * other.tx_power
    return LinkPowers(signal=signal, interference=interference, noise=params.noise_power)


def sinr_db(p: LinkPowers) -> float:
    """SINR of a link in dB; -inf when the signal is zero."""
    denom = p.interference + p.noise
    if denom <= 0:
        raise ValueError("interference + noise must be > 0 (set a nonzero noise floor)")
    if p.signal == 0:
        return float("-inf")
    return 10.0 * np.log10(p.signal / denom)
