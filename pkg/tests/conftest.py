from pathlib import Path

import numpy as np
import pytest

import numlink as nl

SCENARIO_DIR = Path(__file__).resolve().parent.parent / "scenarios"
SYMMETRIC_CFG = SCENARIO_DIR / "two_tx_two_rx_symmetric.yaml"
ASYMMETRIC_CFG = SCENARIO_DIR / "two_tx_two_rx_asymmetric.yaml"


def make_scenario(tx_specs, rx_specs, eta=2.0, g0=1.0, noise=1e-12, d_min=1.0,
                  alpha=0.05, beta=0.525, constraints=None):
    """Build a Scenario from [(x, y, power_w), ...] and [(x, y), ...]."""
    nodes = []
    for k, (x, y) in enumerate(rx_specs):
        nodes.append(nl.Node(id=k, role=nl.Role.RECEIVER, position=np.array([x, y])))
    for k, (x, y, p) in enumerate(tx_specs):
        nodes.append(nl.Node(id=100 + k, role=nl.Role.TRANSMITTER,
                             position=np.array([x, y]), tx_power=p))
    return nl.Scenario(
        nodes=nodes,
        channel=nl.ChannelParams(path_loss_exponent=eta, reference_gain=g0,
                                 noise_power=noise, min_distance=d_min),
        sigmoid=nl.SigmoidParams(alpha=alpha, beta=beta),
        constraints=constraints,
    )


def fd_gradient(s, h=1e-5):
    """Central finite differences of the network utility, step 1e-5 relative."""
    txs = s.transmitters()
    pos = np.array([t.position for t in txs])
    pw = np.array([t.tx_power for t in txs])
    g_pos = np.zeros_like(pos)
    g_pow = np.zeros_like(pw)
    for m in range(len(txs)):
        for c in range(2):
            hh = h * max(1.0, abs(pos[m, c]))
            hi, lo = pos.copy(), pos.copy()
            hi[m, c] += hh
            lo[m, c] -= hh
            g_pos[m, c] = (nl.network_utility(s.with_transmitter_state(hi, pw))
                           - nl.network_utility(s.with_transmitter_state(lo, pw))) / (2 * hh)
        hh = h * abs(pw[m])  # powers are small; a relative step keeps FD truncation down
        hi, lo = pw.copy(), pw.copy()
        hi[m] += hh
        lo[m] -= hh
        g_pow[m] = (nl.network_utility(s.with_transmitter_state(pos, hi))
                    - nl.network_utility(s.with_transmitter_state(pos, lo))) / (2 * hh)
    return g_pos, g_pow


def random_scenario(rng, n_tx, n_rx, noise=1e-9):
    """Random planar scenario with all pairwise distances safely above d_min."""
    while True:
        pts = rng.uniform(0.0, 40.0, size=(n_tx + n_rx, 2))
        d = np.linalg.norm(pts[:, None, :] - pts[None, :, :], axis=2)
        if np.min(d[np.triu_indices_from(d, k=1)]) > 2.0:
            break
    powers = 10 ** rng.uniform(-3, -1, size=n_tx)
    eta = rng.choice([2.0, 2.5, 3.0])
    return make_scenario(
        [(pts[k, 0], pts[k, 1], powers[k]) for k in range(n_tx)],
        [(x, y) for x, y in pts[n_tx:]],
        eta=eta, noise=noise,
    )


@pytest.fixture
def symmetric_config():
    return nl.parse_scenario(SYMMETRIC_CFG)


@pytest.fixture
def asymmetric_config():
    return nl.parse_scenario(ASYMMETRIC_CFG)
