import itertools
import math

import numpy as np
import pytest

import oracles
from helpers import cycle_graph, random_connected_graph
from majority_pts import (
    estimate_avg_convergence,
    guaranteed_epsilon,
    hoeffding_sample_size,
)
from majority_pts.convergence import all_states


class TestHoeffding:
    def test_values(self):
        # 6400 ln(100) / 0.01 = 2,947,308.92 before rounding up
        assert hoeffding_sample_size(10, 100, 0.1) == 2947309
        assert hoeffding_sample_size(1, 3, 1) == 71
        assert hoeffding_sample_size(2, 10, 0.5) == 2358

    def test_monotone(self):
        es, ns, epss = [1, 2, 5, 20], [2, 10, 100, 10**5], [0.05, 0.1, 0.5, 1.0, 2.0]
        for e, n in itertools.product(es, ns):
            vals = [hoeffding_sample_size(e, n, x) for x in epss]
            assert vals == sorted(vals, reverse=True)
        for n, x in itertools.product(ns, epss):
            vals = [hoeffding_sample_size(e, n, x) for e in es]
            assert vals == sorted(vals)
        for e, x in itertools.product(es, epss):
            vals = [hoeffding_sample_size(e, n, x) for n in ns]
            assert vals == sorted(vals)

    def test_inverse(self):
        for e, n, eps in [(3, 50, 0.2), (10, 1000, 1.0)]:
            m = hoeffding_sample_size(e, n, eps)
            assert guaranteed_epsilon(e, n, m) <= eps
            assert guaranteed_epsilon(e, n, m - 1) > eps * (1 - 1e-6)

    def test_domain(self):
        with pytest.raises(ValueError):
            hoeffding_sample_size(1, 1, 0.1)
        with pytest.raises(ValueError):
            hoeffding_sample_size(1, 10, 0)


class TestEstimate:
    def test_c4_exhaustive(self, C4):
        est = estimate_avg_convergence(C4, m=16)
        total, count = oracles.c4_mean_convergence()
        assert est.exhaustive and est.samples == 16 and est.epsilon == 0.0
        assert est.mean_ct == 0.75 == total / count

    def test_exhaustive_matches_enumeration(self):
        rng = np.random.default_rng(13)
        for _ in range(12):
            n = int(rng.integers(2, 11))
            g = random_connected_graph(rng, n, float(rng.uniform(0.1, 0.5)))
            adj = oracles.adjacency(n, g.edges().tolist())
            t = oracles.majority(adj)
            total = sum(oracles.naive_trajectory(adj, t, dict(enumerate(bits)))[0]
                        for bits in itertools.product((0, 1), repeat=n))
            est = estimate_avg_convergence(g, m=2 ** n)
            assert est.exhaustive and est.mean_ct == total / 2 ** n

    def test_all_states(self):
        X = all_states(3)
        assert X.shape == (8, 3) and X[5].tolist() == [1, 0, 1]

    def test_deterministic(self):
        g = cycle_graph(12)
        a = estimate_avg_convergence(g, m=3000, seed=4)
        b = estimate_avg_convergence(g, m=3000, seed=4)
        assert a == b and not a.exhaustive
        assert a.epsilon == pytest.approx(8 * 12 * math.sqrt(math.log(12) / 3000))

    def test_all_ones_contributes_zero(self, C5):
        est = estimate_avg_convergence(C5, m=50, seed=0, p_infect=1.0)
        assert est.mean_ct == 0.0 and not est.exhaustive

    def test_forced_modes(self, C4, C5):
        assert not estimate_avg_convergence(C4, m=100, seed=1, exhaustive=False).exhaustive
        est = estimate_avg_convergence(C5, m=1, exhaustive=True)
        assert est.exhaustive and est.samples == 32
        with pytest.raises(ValueError):
            estimate_avg_convergence(C5, p_infect=0.3, exhaustive=True)

    def test_custom_thresholds(self, C4):
        est = estimate_avg_convergence(C4, t=[1, 1, 1, 1], m=16)
        assert est.exhaustive and est.mean_ct >= 0

    @pytest.mark.slow
    def test_concentration_c4(self, C4):
        hits = sum(abs(estimate_avg_convergence(C4, m=10**4, seed=s, exhaustive=False).mean_ct - 0.75) <= 0.05
                   for s in range(100))
        assert hits >= 95
