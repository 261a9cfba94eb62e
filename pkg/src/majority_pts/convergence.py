"""Average convergence time of the non-progressive dynamics."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dynamics import NONPROGRESSIVE, simulate_batch, strict_majority_thresholds
from .graph import Graph
from .validation import check_thresholds

__all__ = [
    "ConvergenceEstimate",
    "hoeffding_sample_size",
    "guaranteed_epsilon",
    "estimate_avg_convergence",
    "all_states",
]

_SAMPLE_CHUNK = 1024


def hoeffding_sample_size(e, n, epsilon) -> int:
    """Samples needed for additive error ``epsilon``: ``ceil(64 e^2 ln(n) / epsilon^2)``.

    Uses the range ``[0, 8e]`` for the convergence time, which gives failure
    probability at most ``2/n``.
    """
    if n < 2 or e < 1 or not epsilon > 0:
        raise ValueError("need n >= 2, e >= 1 and epsilon > 0")
    return math.ceil(64 * e * e * math.log(n) / (epsilon * epsilon))


def guaranteed_epsilon(e, n, m) -> float:
    """Inverse of :func:`hoeffding_sample_size`: the error guaranteed by ``m`` samples."""
    if n < 2 or e < 1 or m < 1:
        raise ValueError("need n >= 2, e >= 1 and m >= 1")
    return 8.0 * e * math.sqrt(math.log(n) / m)


@dataclass(frozen=True)
class ConvergenceEstimate:
    mean_ct: float
    samples: int
    epsilon: float
    exhaustive: bool


def all_states(n) -> np.ndarray:
    """Every 0/1 state on ``n`` vertices, row ``i`` being the binary digits of ``i``."""
    codes = np.arange(2 ** n, dtype=np.int64)[:, None]
    return ((codes >> np.arange(n)) & 1).astype(np.uint8)


def estimate_avg_convergence(g: Graph, t=None, m=1000, seed=None, p_infect=0.5,
                             cap=None, exhaustive=None) -> ConvergenceEstimate:
    """Mean convergence time over uniformly random initial sets.

    Each vertex starts infected with probability ``p_infect`` (0.5 gives the
    uniform distribution over subsets).  When ``2**n <= m`` and the
    distribution is uniform, every subset is enumerated instead and the mean
    is exact; ``exhaustive=True`` or ``False`` forces either mode.  Samples come in chunks of 1024, chunk ``i`` drawn from the
    substream ``(seed, i)``, and are summed in index order.

    ``epsilon`` is :func:`guaranteed_epsilon` for the number of samples used
    (0 for an exhaustive run; ``nan`` when the graph has fewer than 2 vertices).
    """
    t = strict_majority_thresholds(g) if t is None else check_thresholds(g, t)
    m = int(m)
    if m < 1:
        raise ValueError("m must be positive")
    if exhaustive is None:
        exhaustive = p_infect == 0.5 and g.n < 63 and 2 ** g.n <= m
    elif exhaustive and (p_infect != 0.5 or g.n >= 63):
        raise ValueError("exhaustive mode needs p_infect=0.5 and n < 63")
    if exhaustive:
        total = 0
        count = 2 ** g.n
        block = 1 << 14
        for lo in range(0, count, block):
            codes = np.arange(lo, min(lo + block, count), dtype=np.int64)[:, None]
            X = ((codes >> np.arange(g.n)) & 1).astype(np.uint8)
            total += int(simulate_batch(g, t, X, NONPROGRESSIVE, cap).T.sum())
        return ConvergenceEstimate(total / count, count, 0.0, True)

    root = np.random.SeedSequence(seed)
    total = 0
    for i, lo in enumerate(range(0, m, _SAMPLE_CHUNK)):
        k = min(_SAMPLE_CHUNK, m - lo)
        rng = np.random.default_rng(np.random.SeedSequence(root.entropy, spawn_key=(i,)))
        X = (rng.random((k, g.n)) < p_infect).astype(np.uint8)
        total += int(simulate_batch(g, t, X, NONPROGRESSIVE, cap).T.sum())
    eps = guaranteed_epsilon(max(g.m, 1), g.n, m) if g.n >= 2 else float("nan")
    return ConvergenceEstimate(total / m, m, eps, False)
