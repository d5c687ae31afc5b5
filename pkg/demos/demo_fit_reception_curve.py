"""Fit the sigmoid reception curve to synthetic (SINR, PRR) samples.

Generates noisy samples from a known curve, recovers (alpha, beta) by
least squares, and writes an overlay plot next to this script.
"""

from pathlib import Path

import numpy as np

import numlink as nl
from numlink.plots import plot_fit_overlay

out_dir = Path(__file__).parent / "output"
out_dir.mkdir(exist_ok=True)

true_params = nl.SigmoidParams(alpha=0.05, beta=0.525)
gammas = np.linspace(-10, 10, 41)

clean = nl.generate_fit_samples(true_params, gammas)
noisy = nl.generate_fit_samples(true_params, gammas, noise_sigma=0.02, seed=1)

for label, samples in [("clean", clean), ("noisy", noisy)]:
    result = nl.fit_sigmoid(samples)
    print(f"{label:>6}: alpha={result.params.alpha:.5f} beta={result.params.beta:.5f} "
          f"sse={result.sse:.3e}")

plot_fit_overlay(noisy, nl.fit_sigmoid(noisy).params, out_dir / "fit_overlay.svg")
print(f"overlay written to {out_dir / 'fit_overlay.svg'}")
