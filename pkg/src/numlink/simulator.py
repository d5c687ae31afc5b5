"""Monte Carlo packet-level simulation and PRR aggregation.

Each link draws independent Bernoulli receptions from its model probability.
Every link gets its own RNG substream derived from (seed, tx_id, rx_id), so
reports are reproducible and independent of link evaluation order.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .utility import Scenario, link_model_prrs


@dataclass(frozen=True)
class PrrReport:
    """Empirical and model PRR per link plus the network-level aggregate."""

    per_link: dict            # (tx_id, rx_id) -> empirical PRR
    per_link_model: dict      # (tx_id, rx_id) -> model PRR
    network_prr: float
    packets_per_link: int
    seed: int


@dataclass(frozen=True)
class PrrSeries:
    """A PRR time series with strictly increasing timestamps (seconds)."""

    timestamps: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.timestamps, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if t.shape != v.shape or t.ndim != 1:
            raise ValueError("timestamps and values must be 1-D and the same length")
        if t.size > 1 and np.any(np.diff(t) <= 0):
            raise ValueError("timestamps must be strictly increasing")
        if np.any((v < 0) | (v > 1)):
            raise ValueError("PRR values must lie in [0, 1]")
        object.__setattr__(self, "timestamps", t)
        object.__setattr__(self, "values", v)


def _link_rng(seed: int, tx_id: int, rx_id: int) -> np.random.Generator:
    # Substream keyed by link identity, never by iteration order.
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(tx_id, rx_id)))


def network_prr(link_prrs) -> float:
    """Unweighted arithmetic mean of per-link PRRs."""
    values = np.asarray(list(link_prrs), dtype=float)
    if values.size == 0:
        raise ValueError("need at least one link PRR")
    if np.any((values < 0) | (values > 1)):
        raise ValueError("PRR values must lie in [0, 1]")
    return float(np.mean(values))


def simulate(s: Scenario, packets: int, seed: int) -> PrrReport:
    """Draw `packets` Bernoulli receptions per link and aggregate PRRs."""
    if packets < 1:
        raise ValueError("packets must be >= 1")
    model = link_model_prrs(s)  # (n_rx, n_tx)
    txs, rxs = s.transmitters(), s.receivers()
    per_link, per_link_model = {}, {}
    for j, tx in enumerate(txs):
        for i, rx in enumerate(rxs):
            p = float(model[i, j])
            rng = _link_rng(seed, tx.id, rx.id)
            successes = int(np.count_nonzero(rng.random(packets) < p))
            per_link[(tx.id, rx.id)] = successes / packets
            per_link_model[(tx.id, rx.id)] = p
    keys = sorted(per_link)
    return PrrReport(
        per_link=per_link,
        per_link_model=per_link_model,
        network_prr=network_prr(per_link[k] for k in keys),
        packets_per_link=packets,
        seed=seed,
    )


def smooth_prr(series: PrrSeries, window: float) -> PrrSeries:
    """Trailing moving average: output at t averages inputs in (t - window, t]."""
    if window <= 0:
        raise ValueError("window must be > 0")
    t, v = series.timestamps, series.values
    out = np.empty_like(v)
    for k in range(t.size):
        mask = (t > t[k] - window) & (t <= t[k])
        out[k] = np.mean(v[mask])
    return PrrSeries(timestamps=t.copy(), values=out)


def report_to_csv(report: PrrReport, path) -> None:
    """Per-link CSV: tx_id, rx_id, model_prr, empirical_prr (sorted by key)."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["tx_id", "rx_id", "model_prr", "empirical_prr"])
        for tx_id, rx_id in sorted(report.per_link):
            writer.writerow([tx_id, rx_id,
                             repr(report.per_link_model[(tx_id, rx_id)]),
                             repr(report.per_link[(tx_id, rx_id)])])


def series_to_csv(series: PrrSeries, path, smoothed: PrrSeries = None) -> None:
    """Time-series CSV: t_seconds, prr [, prr_smoothed]."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        header = ["t_seconds", "prr"]
        if smoothed is not None:
            header.append("prr_smoothed")
        writer.writerow(header)
        for k in range(series.timestamps.size):
            row = [repr(float(series.timestamps[k])), repr(float(series.values[k]))]
            if smoothed is not None:
                row.append(repr(float(smoothed.values[k])))
            writer.writerow(row)
