import numpy as np
import pytest

import numlink as nl
from conftest import fd_gradient, make_scenario, random_scenario


class TestNetworkUtility:
    def test_single_link_zero_db(self):
        # 1 Tx at 10 m with gain 0.01 and power such that S = N: 0 dB.
        s = make_scenario([(10.0, 0.0, 1e-4)], [(0.0, 0.0)], noise=1e-6)
        assert nl.network_utility(s) == pytest.approx(np.log(1 / 1.05), rel=1e-9)

    def test_two_equidistant_transmitters(self):
        s = make_scenario([(10.0, 0.0, 0.2), (0.0, 10.0, 0.2)], [(0.0, 0.0)], noise=1e-15)
        assert nl.network_utility(s) == pytest.approx(2 * np.log(1 / 1.05), rel=1e-6)

    def test_symmetric_square_equal_probabilities(self):
        s = make_scenario([(0.0, 0.0, 0.01), (10.0, 10.0, 0.01)],
                          [(10.0, 0.0), (0.0, 10.0)], noise=1e-15)
        p = nl.link_model_prrs(s)
        assert np.allclose(p, p[0, 0], rtol=1e-12)
        assert nl.network_utility(s) == pytest.approx(4 * np.log(p[0, 0]), rel=1e-12)

    def test_zero_power_transmitter_gives_minus_inf(self):
        s = make_scenario([(10.0, 0.0, 0.0), (0.0, 10.0, 0.2)], [(0.0, 0.0)])
        assert nl.network_utility(s) == float("-inf")

    def test_permutation_invariance(self):
        s = make_scenario([(3.0, 2.0, 0.01), (9.0, 8.0, 0.02)],
                          [(10.0, 0.0), (0.0, 10.0)])
        shuffled = nl.Scenario(nodes=list(reversed(s.nodes)), channel=s.channel,
                               sigmoid=s.sigmoid)
        assert nl.network_utility(shuffled) == pytest.approx(nl.network_utility(s), rel=1e-14)

    def test_power_scale_invariance_when_interference_limited(self):
        s = make_scenario([(3.0, 2.0, 0.01), (9.0, 8.0, 0.02)],
                          [(10.0, 0.0), (0.0, 10.0)], noise=1e-15)
        base = nl.network_utility(s)
        pos = np.array([t.position for t in s.transmitters()])
        pw = np.array([t.tx_power for t in s.transmitters()])
        for c in (0.1, 3.0, 50.0):
            scaled = nl.network_utility(s.with_transmitter_state(pos, c * pw))
            assert abs(scaled - base) < 1e-9


class TestUtilityGradient:
    def test_matches_finite_differences_random(self):
        rng = np.random.default_rng(7)
        for _ in range(20):
            s = random_scenario(rng, n_tx=int(rng.integers(2, 5)),
                                n_rx=int(rng.integers(1, 6)))
            g = nl.utility_gradient(s)
            fd_pos, fd_pow = fd_gradient(s)
            np.testing.assert_allclose(g.d_positions, fd_pos, rtol=1e-4, atol=1e-10)
            np.testing.assert_allclose(g.d_powers, fd_pow, rtol=1e-4, atol=1e-10)

    def test_symmetric_square_stationary(self):
        s = make_scenario([(0.0, 0.0, 0.01), (10.0, 10.0, 0.01)],
                          [(10.0, 0.0), (0.0, 10.0)], noise=1e-15)
        g = nl.utility_gradient(s)
        assert np.max(np.abs(g.d_positions)) <= 1e-10

    def test_single_link_power_gradient_positive(self):
        s = make_scenario([(10.0, 0.0, 1e-4)], [(0.0, 0.0)], noise=1e-6)
        g = nl.utility_gradient(s)
        assert g.d_powers[0] > 0

    def test_minus_inf_start_rejected(self):
        s = make_scenario([(10.0, 0.0, 0.0)], [(0.0, 0.0)])
        with pytest.raises(ValueError):
            nl.utility_gradient(s)

    def test_clamped_link_has_zero_position_gradient(self):
        # tx sits inside the clamp radius of its only receiver
        s = make_scenario([(0.5, 0.0, 1e-4)], [(0.0, 0.0)], noise=1e-6, d_min=1.0)
        g = nl.utility_gradient(s)
        assert np.all(g.d_positions == 0.0)


class TestBalanceResidual:
    def test_balanced_is_zero(self):
        s = make_scenario([(0.0, 0.0, 0.01), (10.0, 10.0, 0.01)],
                          [(10.0, 0.0), (0.0, 10.0)])
        assert nl.two_tx_balance_residual(s) == 0.0

    def test_factor_two_imbalance(self):
        # equidistant transmitters, one with double the power
        s = make_scenario([(10.0, 0.0, 0.02), (0.0, 10.0, 0.01)], [(0.0, 0.0)])
        assert nl.two_tx_balance_residual(s) == pytest.approx(0.5, rel=1e-12)

    def test_wrong_tx_count_rejected(self):
        s = make_scenario([(10.0, 0.0, 0.01)], [(0.0, 0.0)])
        with pytest.raises(ValueError):
            nl.two_tx_balance_residual(s)


class TestBruteForce:
    def _symmetric(self):
        return make_scenario([(0.0, 0.0, 0.01), (10.0, 10.0, 0.01)],
                             [(10.0, 0.0), (0.0, 10.0)], noise=1e-15)

    def test_ratio_sweep_peaks_at_one(self):
        ratios = np.logspace(-2, 2, 401)
        res = nl.sweep_power_ratio(self._symmetric(), ratios)
        mid = int(np.argmin(np.abs(ratios - 1.0)))
        assert abs(res.best_index - mid) <= 1
        assert nl.is_unimodal(res.utilities)

    def test_perturbing_balanced_point_decreases_utility(self):
        s = self._symmetric()
        u_bal = nl.sweep_power_ratio(s, [1.0]).best_utility
        for r in (0.9, 1.1):
            assert nl.sweep_power_ratio(s, [r]).best_utility < u_bal

    def test_single_grid_point(self):
        res = nl.sweep_power_ratio(self._symmetric(), [2.0])
        assert res.best_param == 2.0
        assert res.best_index == 0

    def test_empty_grid_rejected(self):
        with pytest.raises(ValueError):
            nl.sweep_power_ratio(self._symmetric(), [])

    def test_position_sweep(self):
        s = self._symmetric()
        tx_id = s.transmitters()[0].id
        # slide tx across its balanced spot; peak should be near the middle
        res = nl.brute_force_optimum(s, "position_1d", (tx_id, (-4.0, -4.0), (4.0, 4.0), 81))
        best_frac = res.best_param / res.params[-1]
        assert abs(best_frac - 0.5) <= 0.05

    def test_unknown_axis_rejected(self):
        with pytest.raises(ValueError):
            nl.brute_force_optimum(self._symmetric(), "diagonal", None)

    def test_dispatch_power_ratio(self):
        res = nl.brute_force_optimum(self._symmetric(), "power_ratio", np.logspace(-1, 1, 21))
        assert res.best_param == pytest.approx(1.0, rel=1e-9)


class TestIsUnimodal:
    def test_rise_then_fall(self):
        assert nl.is_unimodal([0, 1, 3, 2, 1])

    def test_monotone(self):
        assert nl.is_unimodal([0, 1, 2, 3])
        assert nl.is_unimodal([3, 2, 1, 0])

    def test_two_peaks(self):
        assert not nl.is_unimodal([0, 2, 1, 3, 0])

    def test_valley(self):
        assert not nl.is_unimodal([3, 1, 4])
