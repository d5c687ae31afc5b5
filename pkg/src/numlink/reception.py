"""Sigmoid SINR -> packet-reception-probability model and its least-squares fit.

The curve is P(gamma) = 1 / (1 + alpha * exp(-beta * gamma)) with gamma in dB.
Rewriting over linear power ratios turns the dB slope beta into the exponent
beta' = (10 / ln 10) * beta, so the same probability can be computed either
from the dB SINR or directly from received powers.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from .geometry import LinkPowers

#: dB per neper; the exact value of the ~4.34 conversion factor.
DB_PER_NEPER = 10.0 / np.log(10.0)

ALPHA_BOUNDS = (1e-4, 10.0)
BETA_BOUNDS = (1e-3, 5.0)


@dataclass(frozen=True)
class SigmoidParams:
    """Shape parameters of the reception curve."""

    alpha: float
    beta: float  # per dB

    def __post_init__(self):
        if not (np.isfinite(self.alpha) and self.alpha > 0):
            raise ValueError("alpha must be finite and > 0")
        if not (np.isfinite(self.beta) and self.beta > 0):
            raise ValueError("beta must be finite and > 0")

    @property
    def beta_prime(self) -> float:
        return beta_prime(self.beta)

    @property
    def midpoint_db(self) -> float:
        """SINR (dB) at which the reception probability is exactly 0.5."""
        return float(np.log(self.alpha) / self.beta)


@dataclass(frozen=True)
class FitSample:
    sinr_db: float
    prr: float

    def __post_init__(self):
        if not np.isfinite(self.sinr_db):
            raise ValueError("sinr_db must be finite")
        if not (0.0 <= self.prr <= 1.0):
            raise ValueError("prr must lie in [0, 1]")


@dataclass(frozen=True)
class FitResult:
    params: SigmoidParams
    sse: float
    degenerate: bool = False  # beta pinned at its lower bound (flat data)


def beta_prime(beta: float) -> float:
    """Exponent of the power-ratio form of the curve: (10 / ln 10) * beta."""
    return DB_PER_NEPER * beta


def link_prr_from_sinr(gamma_db, params: SigmoidParams):
    """Reception probability at SINR gamma_db (dB). Accepts scalars or arrays.

    A -inf sentinel (dead link) maps to probability 0.
    """
    gamma = np.asarray(gamma_db, dtype=float)
    with np.errstate(over="ignore"):
        p = 1.0 / (1.0 + params.alpha * np.exp(-params.beta * gamma))
    p = np.where(np.isneginf(gamma), 0.0, p)
    return float(p) if np.ndim(gamma_db) == 0 else p


def prr_from_powers(signal, interference, noise, params: SigmoidParams):
    """Reception probability straight from received powers (watts).

    Computes 1 / (1 + alpha * rho^(-beta')) with rho = S / (I + N), the
    power-domain equivalent of the dB-domain sigmoid. Vectorized.
    """
    s = np.asarray(signal, dtype=float)
    denom = np.asarray(interference, dtype=float) + np.asarray(noise, dtype=float)
    if np.any(denom <= 0):
        raise ValueError("interference + noise must be > 0 for every link")
    bp = params.beta_prime
    with np.errstate(divide="ignore", over="ignore"):
        ratio = s / denom
        p = 1.0 / (1.0 + params.alpha * ratio ** (-bp))
    p = np.where(s == 0.0, 0.0, p)
    if np.ndim(signal) == 0 and np.ndim(interference) == 0:
        return float(p)
    return p


def link_prr_from_powers(p: LinkPowers, params: SigmoidParams) -> float:
    """Reception probability of one link from its power budget."""
    return prr_from_powers(p.signal, p.interference, p.noise, params)


def _sse(alpha, beta, gammas, prrs):
    model = 1.0 / (1.0 + alpha * np.exp(-beta * gammas))
    return float(np.sum((model - prrs) ** 2))


def fit_sigmoid(samples) -> FitResult:
    """Least-squares fit of (alpha, beta) to empirical (SINR, PRR) samples.

    Coarse log-space grid search over alpha in [1e-4, 10] and beta in
    [1e-3, 5] locates the basin; a Nelder-Mead refinement in log-parameter
    space then polishes until the SSE improvement is negligible (< 1e-12).
    """
    samples = list(samples)
    if len(samples) < 3:
        raise ValueError("need at least 3 samples to fit the curve")
    gammas = np.array([s.sinr_db for s in samples], dtype=float)
    prrs = np.array([s.prr for s in samples], dtype=float)
    if np.any(prrs < 0) or np.any(prrs > 1):
        raise ValueError("prr samples must lie in [0, 1]")
    if np.unique(gammas).size < 2:
        raise ValueError("samples must cover at least two distinct SINR values")

    log_a = np.log(np.logspace(np.log10(ALPHA_BOUNDS[0]), np.log10(ALPHA_BOUNDS[1]), 41))
    log_b = np.log(np.logspace(np.log10(BETA_BOUNDS[0]), np.log10(BETA_BOUNDS[1]), 41))
    # Vectorized SSE over the whole grid: axes (alpha, beta, sample).
    model = 1.0 / (
        1.0
        + np.exp(log_a)[:, None, None]
        * np.exp(-np.exp(log_b)[None, :, None] * gammas[None, None, :])
    )
    sse_grid = np.sum((model - prrs[None, None, :]) ** 2, axis=2)
    ia, ib = np.unravel_index(np.argmin(sse_grid), sse_grid.shape)

    lo = np.log([ALPHA_BOUNDS[0], BETA_BOUNDS[0]])
    hi = np.log([ALPHA_BOUNDS[1], BETA_BOUNDS[1]])

    def objective(theta):
        if np.any(theta < lo) or np.any(theta > hi):
            return np.inf
        return _sse(np.exp(theta[0]), np.exp(theta[1]), gammas, prrs)

    res = optimize.minimize(
        objective,
        x0=np.array([log_a[ia], log_b[ib]]),
        method="Nelder-Mead",
        options={"xatol": 1e-13, "fatol": 1e-16, "maxiter": 20000, "maxfev": 20000},
    )
    alpha, beta = (float(v) for v in np.exp(res.x))
    sse = _sse(alpha, beta, gammas, prrs)
    degenerate = beta <= BETA_BOUNDS[0] * (1.0 + 1e-9)
    return FitResult(params=SigmoidParams(alpha=alpha, beta=beta), sse=sse, degenerate=degenerate)


def load_fit_samples(path) -> list:
    """Read (sinr_db, prr) samples from a two-column CSV; header row optional."""
    samples = []
    with open(path, "r", newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            row = [c.strip() for c in row if c.strip() != ""]
            if not row:
                continue
            if len(row) != 2:
                raise ValueError(f"{path}:{lineno}: expected two columns, got {len(row)}")
            try:
                gamma, prr = float(row[0]), float(row[1])
            except ValueError:
                if lineno == 1:
                    continue  # header row
                raise ValueError(f"{path}:{lineno}: non-numeric sample") from None
            samples.append(FitSample(sinr_db=gamma, prr=prr))
    if not samples:
        raise ValueError(f"{path}: no samples found")
    return samples


def generate_fit_samples(params: SigmoidParams, gammas, noise_sigma=0.0, seed=None) -> list:
    """Synthesize fit samples from a known curve, optionally with Gaussian noise.

    Noisy values are clipped back into [0, 1] to keep them valid probabilities.
    """
    gammas = np.asarray(gammas, dtype=float)
    prrs = link_prr_from_sinr(gammas, params)
    if noise_sigma > 0:
        rng = np.random.default_rng(seed)
        prrs = np.clip(prrs + rng.normal(0.0, noise_sigma, size=gammas.shape), 0.0, 1.0)
    return [FitSample(sinr_db=float(g), prr=float(p)) for g, p in zip(gammas, prrs)]
