"""Acceptance criteria, one test (or parametrized family) per criterion.

Every test records its outcome with :func:`helpers.check_criterion`; the
terminal summary then prints one PASS/FAIL line per criterion.
"""
import math
import time
from fractions import Fraction

import numpy as np
import pytest

import oracles
from helpers import check_criterion, complete_graph, cycle_graph, path_graph, random_connected_graph, star_graph
from majority_pts import (
    ConvergenceError,
    Graph,
    brute_force_min_dominating_set,
    brute_force_min_pts,
    build_hardness_instance,
    default_cap,
    disagreement_potential,
    double_cover,
    estimate_avg_convergence,
    general_bounds,
    generate,
    giant_component,
    greedy_npts,
    hoeffding_sample_size,
    is_perfect_target_set,
    lower_bound_fraction,
    powerlaw_weights,
    prefix_pts,
    rank_centrality,
    rank_high_degree,
    rank_random,
    sequential_round,
    simulate,
    simulate_batch,
    step,
    strict_majority_thresholds,
    tight_family,
    upper_bound_fraction,
)


def powerlaw_giant(n, gamma, seed, min_n=2):
    """Giant component of a generated graph, or None when it is too small."""
    g, _ = giant_component(generate(powerlaw_weights(n, gamma), seed))
    return g if g.n >= min_n else None


# -- 1 ----------------------------------------------------------------------

def test_criterion_1_greedy_validity():
    start = time.perf_counter()
    rng = np.random.default_rng(1)
    graphs = []
    while len(graphs) < 250:
        n = int(rng.integers(2, 61))
        graphs.append(random_connected_graph(rng, n, float(rng.uniform(0.0, 0.25))))
    seed = 0
    while len(graphs) < 500:
        g = powerlaw_giant(int(rng.integers(20, 61)), float(rng.uniform(1.6, 3.0)), seed)
        seed += 1
        if g is not None:
            graphs.append(g)
    valid = sum(is_perfect_target_set(g, strict_majority_thresholds(g), greedy_npts(g).indicator(g.n))
                for g in graphs)
    elapsed = time.perf_counter() - start
    check_criterion(1, valid == 500 and elapsed < 60,
                    f"greedy PTS valid on {valid}/500 graphs in {elapsed:.1f}s")


# -- 2 ----------------------------------------------------------------------

def sandwich_violations(g):
    """Return (sandwich, ratio) violation flags for one graph."""
    lower, upper = general_bounds(g, exact=True)
    opt = brute_force_min_pts(g).cost
    greedy = greedy_npts(g).cost
    D, d = g.max_degree, g.min_degree
    ratio = Fraction(D * (D + 1) * (d + 2), 8 * D + 2 * (D + 1) * (d - 2))
    sandwich = not (math.ceil(lower) <= opt <= greedy <= math.floor(upper))
    return sandwich, Fraction(greedy, opt) > ratio


def run_sandwich(edge_lists):
    bad_sandwich = bad_ratio = 0
    for n, edges in edge_lists:
        s, r = sandwich_violations(Graph.from_edges(n, edges))
        bad_sandwich += s
        bad_ratio += r
    return bad_sandwich, bad_ratio


def test_criterion_2_bound_sandwich_reduced():
    start = time.perf_counter()
    cases = [(n, e) for n in range(2, 8) for e in oracles.connected_graphs(n)]
    rng = np.random.default_rng(2)
    for i in range(1000):
        n = 8 + i % 2
        g = random_connected_graph(rng, n, float(rng.uniform(0.05, 0.7)))
        cases.append((n, g.edges().tolist()))
    bad_s, bad_r = run_sandwich(cases)
    elapsed = time.perf_counter() - start
    check_criterion(2, bad_s == 0 and bad_r == 0 and elapsed < 120,
                    f"{len(cases)} graphs, {bad_s} sandwich / {bad_r} ratio violations in {elapsed:.1f}s",
                    part="reduced")


@pytest.mark.slow
def test_criterion_2_bound_sandwich_exhaustive():
    start = time.perf_counter()
    cases = [(n, e) for n in range(2, 9) for e in oracles.connected_graphs(n)]
    counts = [sum(1 for n, _ in cases if n == k) for k in range(2, 9)]
    # connected graphs on 2..8 vertices, up to isomorphism
    assert counts == [1, 2, 6, 21, 112, 853, 11117]
    bad_s, bad_r = run_sandwich(cases)
    elapsed = time.perf_counter() - start
    check_criterion(2, bad_s == 0 and bad_r == 0 and elapsed < 1800,
                    f"all {len(cases)} connected graphs n<=8, {bad_s} sandwich / {bad_r} ratio "
                    f"violations in {elapsed:.1f}s", part="exhaustive")


# -- 3 ----------------------------------------------------------------------

GOLDEN = [
    ("C5", cycle_graph(5), 5),
    ("K4", complete_graph(4), 3),
    ("P3", path_graph(3), 3),
    ("K1,5", star_graph(5), 4),
    ("tight(1,4,3)", tight_family(1, 4, 3), 4),
]


def test_criterion_3_golden_exact_values():
    got = {name: brute_force_min_pts(g).cost for name, g, _ in GOLDEN}
    want = {name: cost for name, _, cost in GOLDEN}
    tight = tight_family(1, 4, 3)
    meets_floor = got["tight(1,4,3)"] == math.ceil(general_bounds(tight, exact=True)[0])
    check_criterion(3, got == want and meets_floor,
                    ", ".join(f"{k}={v}" for k, v in got.items()))


# -- 4 ----------------------------------------------------------------------

def test_criterion_4_convergence_shape():
    start = time.perf_counter()
    rng = np.random.default_rng(4)
    trials = bad_cycle = cap_violations = 0
    seed = 0
    while trials < 10_000:
        if trials // 100 % 2:
            g = powerlaw_giant(int(rng.integers(10, 201)), float(rng.uniform(1.6, 3.0)), seed)
            seed += 1
            if g is None:
                continue
        else:
            n = int(rng.integers(2, 201))
            g = random_connected_graph(rng, n, float(rng.uniform(0.0, 8.0 / n)))
        t = strict_majority_thresholds(g)
        X = (rng.random((100, g.n)) < rng.uniform(0.1, 0.9)).astype(np.uint8)
        try:
            res = simulate_batch(g, t, X, cap=default_cap(g))
            bad_cycle += int(np.count_nonzero(~np.isin(res.cycle_len, (1, 2))))
        except ConvergenceError:
            for row in X:
                try:
                    simulate(g, t, row)
                except ConvergenceError:
                    cap_violations += 1
        trials += X.shape[0]
    elapsed = time.perf_counter() - start
    check_criterion(4, bad_cycle == 0 and cap_violations == 0 and elapsed < 60,
                    f"{trials} trials, {bad_cycle} bad cycle lengths, {cap_violations} cap violations "
                    f"in {elapsed:.1f}s")


# -- 5 ----------------------------------------------------------------------

def test_criterion_5_sequential_potential():
    rng = np.random.default_rng(5)
    violations = 0
    rounds = 0
    while rounds < 10_000:
        n = int(rng.integers(2, 41))
        g = random_connected_graph(rng, n, float(rng.uniform(0.0, 0.4)))
        t = strict_majority_thresholds(g)
        for _ in range(20):
            s = rng.integers(0, 2, n).astype(np.uint8)
            out = sequential_round(g, t, s, rng.permutation(n))
            before, after = disagreement_potential(g, s), disagreement_potential(g, out)
            flipped_up = bool(np.any((s == 0) & (out == 1)))
            violations += after > before or (flipped_up and after >= before)
            rounds += 1
    check_criterion(5, violations == 0, f"{rounds} sequential rounds, {violations} violations")


# -- 6 ----------------------------------------------------------------------

def test_criterion_6_double_cover_mirror():
    rng = np.random.default_rng(6)
    violations = 0
    for _ in range(100):
        n = int(rng.integers(2, 40))
        g = random_connected_graph(rng, n, float(rng.uniform(0.0, 0.3)))
        h, _ = double_cover(g)
        tg, th = strict_majority_thresholds(g), strict_majority_thresholds(h)
        f = rng.integers(0, 2, n).astype(np.uint8)
        gh = np.concatenate([f, f])
        for _ in range(20):
            f, gh = step(g, tg, f), step(h, th, gh)
            violations += not (np.array_equal(gh[:n], f) and np.array_equal(gh[n:], f))
    check_criterion(6, violations == 0, f"100 pairs x 20 steps, {violations} violations")


# -- 7 ----------------------------------------------------------------------

def test_criterion_7_upper_values():
    u2, u3 = upper_bound_fraction(2), upper_bound_fraction(3)
    check_criterion(7, abs(u2 - 0.8210) <= 1e-3 and abs(u3 - 0.6465) <= 1e-3,
                    f"upper(2)={u2:.6f}, upper(3)={u3:.6f}", part="upper values")


@pytest.mark.parametrize("gamma", [2.0, 2.2, 2.4, 2.6, 2.8])
def test_criterion_7_lower_not_above_upper(gamma):
    b = lower_bound_fraction(gamma)
    check_criterion(7, b.lower_fraction <= b.upper_fraction,
                    f"lower={b.lower_fraction:.6f} upper={b.upper_fraction:.6f}",
                    part=f"lower<=upper at gamma={gamma}")


def test_criterion_7_curves_converge():
    gap = {g: abs(upper_bound_fraction(g) - lower_bound_fraction(g).lower_fraction) for g in (2.2, 2.8)}
    check_criterion(7, gap[2.8] < gap[2.2], f"gap(2.2)={gap[2.2]:.4f}, gap(2.8)={gap[2.8]:.4f}",
                    part="gap trend")


# -- 8 ----------------------------------------------------------------------

@pytest.mark.parametrize("gamma", [1.6, 2.0, 2.4])
def test_criterion_8_heuristic_comparison(gamma):
    start = time.perf_counter()
    greedy_wins = 0
    min_share = 1.0
    for trial in range(10):
        seed = int(gamma * 1000) + trial
        g = powerlaw_giant(2000, gamma, seed)
        t = strict_majority_thresholds(g)
        greedy = greedy_npts(g, t).cost
        baselines = [
            prefix_pts(g, t, rank_high_degree(g)).cost,
            prefix_pts(g, t, rank_centrality(g)).cost,
            prefix_pts(g, t, rank_random(g, seed)).cost,
        ]
        greedy_wins += all(greedy < b for b in baselines)
        min_share = min(min_share, min(baselines) / g.n)
    elapsed = time.perf_counter() - start
    share_ok = gamma > 2.0 or min_share >= 0.95
    check_criterion(8, greedy_wins == 10 and share_ok,
                    f"greedy beat every baseline on {greedy_wins}/10, min baseline share "
                    f"{min_share:.3f} of n ({elapsed:.0f}s)", part=f"gamma={gamma}")


# -- 9 ----------------------------------------------------------------------

def test_criterion_9_hardness_identity():
    start = time.perf_counter()
    k2 = complete_graph(2)
    inst = build_hardness_instance(k2)
    dom = brute_force_min_dominating_set(k2)
    opt = brute_force_min_pts(inst.h).cost
    identity = opt == 9 == inst.expected_min_pts(len(dom))
    witnesses = []
    for g in (k2, path_graph(3)):
        inst = build_hardness_instance(g)
        s = np.zeros(inst.h.n, dtype=np.uint8)
        s[inst.witness(brute_force_min_dominating_set(g))] = 1
        witnesses.append(is_perfect_target_set(inst.h, strict_majority_thresholds(inst.h), s))
    elapsed = time.perf_counter() - start
    check_criterion(9, identity and all(witnesses) and elapsed < 300,
                    f"NPPTS(H(K2))={opt}, witness PTS for K2/P3: {witnesses} ({elapsed:.1f}s)")


# -- 10 ---------------------------------------------------------------------

def test_criterion_10_hoeffding_value():
    # The stated target is checked literally.  ceil(6400 ln(100) / 0.01) is
    # 2,947,309 (the exact product is 2,947,308.92), so this part cannot pass.
    m = hoeffding_sample_size(10, 100, 0.1)
    check_criterion(10, m == 2_947_310, f"hoeffding_sample_size(10,100,0.1)={m}, stated 2947310",
                    part="hoeffding")


def test_criterion_10_c4_exhaustive():
    est = estimate_avg_convergence(cycle_graph(4), m=16)
    check_criterion(10, est.exhaustive and est.mean_ct == 0.75,
                    f"exhaustive mean convergence on C4 = {est.mean_ct}", part="C4 mean")
