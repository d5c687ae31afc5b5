import numpy as np
import pytest

import numlink as nl


def node(nid, role, x, y, p=0.0):
    return nl.Node(id=nid, role=role, position=np.array([x, y]), tx_power=p)


class TestPairwiseDistance:
    def test_identity(self):
        assert nl.pairwise_distance((0, 0), (0, 0)) == 0.0

    def test_3_4_5(self):
        assert nl.pairwise_distance((0, 0), (3, 4)) == 5.0

    def test_translation_invariance(self):
        assert nl.pairwise_distance((1, 1), (4, 5)) == 5.0

    def test_symmetry(self):
        rng = np.random.default_rng(1)
        for _ in range(20):
            a, b = rng.uniform(-50, 50, 2), rng.uniform(-50, 50, 2)
            assert nl.pairwise_distance(a, b) == nl.pairwise_distance(b, a)


class TestChannelGain:
    params = nl.ChannelParams(path_loss_exponent=2.0, reference_gain=1.0,
                              noise_power=1e-12, min_distance=1.0)

    def test_reference_distance(self):
        assert nl.channel_gain(1.0, self.params) == 1.0

    def test_inverse_square(self):
        assert nl.channel_gain(10.0, self.params) == pytest.approx(0.01, rel=1e-15)

    def test_clamped_below_min_distance(self):
        assert nl.channel_gain(0.5, self.params) == 1.0

    def test_monotone_decreasing(self):
        d = np.linspace(1.0, 100.0, 500)
        g = nl.channel_gain(d, self.params)
        assert np.all(np.diff(g) < 0)

    def test_doubling_distance_quarters_gain(self):
        for d in (1.5, 4.0, 25.0):
            assert nl.channel_gain(2 * d, self.params) == pytest.approx(
                nl.channel_gain(d, self.params) / 4.0, rel=1e-14)

    def test_exponent_below_two_rejected(self):
        with pytest.raises(ValueError):
            nl.ChannelParams(path_loss_exponent=1.5)


class TestLinkPowers:
    params = nl.ChannelParams(noise_power=1e-9)

    def test_single_transmitter(self):
        rx = node(0, nl.Role.RECEIVER, 0, 0)
        tx = node(1, nl.Role.TRANSMITTER, 10, 0, p=0.2)
        p = nl.link_powers(rx, tx, [tx], self.params)
        assert p.signal == pytest.approx(0.002, rel=1e-14)
        assert p.interference == 0.0
        assert p.noise == 1e-9

    def test_equidistant_equal_power_symmetry(self):
        rx = node(0, nl.Role.RECEIVER, 0, 0)
        tx1 = node(1, nl.Role.TRANSMITTER, 10, 0, p=0.2)
        tx2 = node(2, nl.Role.TRANSMITTER, 0, 10, p=0.2)
        p = nl.link_powers(rx, tx1, [tx1, tx2], self.params)
        assert p.signal == pytest.approx(p.interference, rel=1e-14)

    def test_interference_ratio_from_distances(self):
        rx = node(0, nl.Role.RECEIVER, 0, 0)
        tx1 = node(1, nl.Role.TRANSMITTER, 10, 0, p=0.2)
        tx2 = node(2, nl.Role.TRANSMITTER, 100, 0, p=0.2)
        p = nl.link_powers(rx, tx1, [tx1, tx2], self.params)
        # oracle: gain ratio (10/100)^2
        assert p.interference / p.signal == pytest.approx(0.01, rel=1e-12)

    def test_interference_additivity(self):
        rx = node(0, nl.Role.RECEIVER, 0, 0)
        tx1 = node(1, nl.Role.TRANSMITTER, 10, 0, p=0.2)
        tx2 = node(2, nl.Role.TRANSMITTER, 30, 5, p=0.1)
        tx3 = node(3, nl.Role.TRANSMITTER, -20, 8, p=0.3)
        before = nl.link_powers(rx, tx1, [tx1, tx2], self.params)
        after = nl.link_powers(rx, tx1, [tx1, tx2, tx3], self.params)
        assert after.interference > before.interference
        assert after.signal == before.signal

    def test_swapping_identical_transmitters(self):
        rx = node(0, nl.Role.RECEIVER, 0, 0)
        tx1 = node(1, nl.Role.TRANSMITTER, 10, 0, p=0.2)
        tx2 = node(2, nl.Role.TRANSMITTER, 0, 10, p=0.2)
        a = nl.link_powers(rx, tx1, [tx1, tx2], self.params)
        b = nl.link_powers(rx, tx1, [tx2, tx1], self.params)
        assert a == b

    def test_rejects_tx_not_in_set(self):
        rx = node(0, nl.Role.RECEIVER, 0, 0)
        tx1 = node(1, nl.Role.TRANSMITTER, 10, 0, p=0.2)
        tx2 = node(2, nl.Role.TRANSMITTER, 0, 10, p=0.2)
        with pytest.raises(ValueError):
            nl.link_powers(rx, tx1, [tx2], self.params)

    def test_rejects_wrong_roles(self):
        rx = node(0, nl.Role.RECEIVER, 0, 0)
        tx = node(1, nl.Role.TRANSMITTER, 10, 0, p=0.2)
        with pytest.raises(ValueError):
            nl.link_powers(tx, tx, [tx], self.params)
        with pytest.raises(ValueError):
            nl.link_powers(rx, tx, [tx, rx], self.params)


class TestSinrDb:
    def test_equal_signal_and_interference(self):
        assert nl.sinr_db(nl.LinkPowers(0.002, 0.002, 0.0)) == 0.0

    def test_ratio_ten(self):
        assert nl.sinr_db(nl.LinkPowers(0.002, 0.0002, 0.0)) == pytest.approx(10.0, abs=1e-12)

    def test_noise_limited_equality(self):
        assert nl.sinr_db(nl.LinkPowers(1e-6, 0.0, 1e-6)) == 0.0

    def test_zero_signal_is_minus_inf(self):
        assert nl.sinr_db(nl.LinkPowers(0.0, 0.0, 1e-9)) == float("-inf")

    def test_zero_denominator_rejected(self):
        with pytest.raises(ValueError):
            nl.sinr_db(nl.LinkPowers(1e-6, 0.0, 0.0))


class TestNodeInvariants:
    def test_receiver_with_power_rejected(self):
        with pytest.raises(ValueError):
            node(0, nl.Role.RECEIVER, 0, 0, p=0.1)

    def test_negative_power_rejected(self):
        with pytest.raises(ValueError):
            node(0, nl.Role.TRANSMITTER, 0, 0, p=-0.1)

    def test_nonfinite_position_rejected(self):
        with pytest.raises(ValueError):
            node(0, nl.Role.TRANSMITTER, np.inf, 0, p=0.1)
