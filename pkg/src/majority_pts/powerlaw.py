"""Power-law graphs: zeta sums, bound fractions and the random weighted model.

A degree sequence is modelled as ``P(x) = alpha * x**-gamma`` vertices of
degree ``x``.  :func:`upper_bound_fraction` and :func:`lower_bound_fraction`
give the fraction of ``n`` that the greedy seed set can need at most and that
any perfect target set needs at least.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graph import Graph

__all__ = [
    "hurwitz_zeta",
    "upper_bound_fraction",
    "lower_bound_fraction",
    "PowerLawBounds",
    "PowerLawSpec",
    "powerlaw_weights",
    "generate",
    "LOWER_GAMMA_RANGE",
    "K_SCAN_CAP",
]

_DIRECT_TERMS = 10**6
K_SCAN_CAP = 10**6
LOWER_GAMMA_RANGE = (1.5, 5.0)


def hurwitz_zeta(s, a=1) -> float:
    """``sum_{x >= a} x**-s`` for real ``s > 1`` and integer ``a >= 1``.

    The first ``10**6 + 1`` terms are summed directly; the remainder from
    ``N = a + 10**6 + 1`` on is the integral ``N**(1-s) / (s-1)`` plus the
    Euler-Maclaurin corrections ``N**-s / 2 + s N**(-s-1) / 12``, whose error
    is far below ``1e-9``.
    """
    s = float(s)
    if not s > 1:
        raise ValueError(f"zeta sum diverges for s={s} <= 1")
    a = int(a)
    if a < 1:
        raise ValueError("a must be a positive integer")
    x = np.arange(a, a + _DIRECT_TERMS + 1, dtype=np.float64)
    # sum smallest terms first
    head = float(np.sum((x ** -s)[::-1]))
    N = float(a + _DIRECT_TERMS + 1)
    tail = N ** (1 - s) / (s - 1) + 0.5 * N ** -s + s * N ** (-s - 1) / 12
    return head + tail


def upper_bound_fraction(gamma) -> float:
    """``1 + 2**-(gamma+1) - 1 / (2 zeta(gamma))``."""
    gamma = float(gamma)
    if not gamma > 1:
        raise ValueError(f"power-law coefficient must exceed 1, got {gamma}")
    return 1.0 + 2.0 ** -(gamma + 1) - 1.0 / (2.0 * hurwitz_zeta(gamma))


@dataclass(frozen=True)
class PowerLawBounds:
    """Lower-bound search outcome at one coefficient.

    ``k`` is the largest feasible minimum degree of the seed set and
    ``p_frac`` the smallest feasible share of degree-``k`` vertices seeded.
    ``truncated`` marks a ``k`` that reached the scan cap; ``diverged`` marks
    ``gamma <= 2``, where the right-hand series diverges and every ``k`` is
    feasible.
    """

    gamma: float
    lower_fraction: float
    upper_fraction: float
    k: int
    p_frac: float
    truncated: bool = False
    diverged: bool = False

    def to_dict(self) -> dict:
        return {"gamma": self.gamma, "lower_fraction": self.lower_fraction,
                "upper_fraction": self.upper_fraction, "k": self.k,
                "p": self.p_frac, "truncated": self.truncated, "diverged": self.diverged}


def lower_bound_fraction(gamma, k_cap=K_SCAN_CAP, p_tol=1e-6) -> PowerLawBounds:
    """Lower bound on ``|B| / n`` for a perfect target set ``B``.

    Seeds are assumed to be the highest-degree vertices: all of degree above
    ``k`` plus a share ``p`` of degree ``k``.  Feasibility at ``(k, p)``::

        sum_{x<k} x^-g + (1-p) k^-g
            <= ( sum_{x>k} (x^(1-g) - x^-g) + p k^-g (k-1) ) / 2

    The largest feasible ``k`` is found by scanning upward (the left side
    grows and the right side shrinks in ``k``); ``p`` is then minimised by
    bisection.  The bound is ``(sum_{x>k} x^-g + p k^-g) / zeta(g)``.  All
    partial sums are taken directly with the convention that ``zeta(g, a)``
    starts at ``x = a``.
    """
    gamma = float(gamma)
    lo_g, hi_g = LOWER_GAMMA_RANGE
    if not lo_g <= gamma <= hi_g:
        raise ValueError(f"gamma={gamma} outside the supported range [{lo_g}, {hi_g}]")
    upper = upper_bound_fraction(gamma)
    zeta_g = hurwitz_zeta(gamma)
    x = np.arange(1, k_cap + 1, dtype=np.float64)
    a = x ** -gamma
    cum_a = np.concatenate([[0.0], np.cumsum(a)])  # cum_a[j] = sum_{x<=j}
    if gamma <= 2.0:
        # sum x^(1-g) diverges: right side is infinite for every k and p
        k, p = k_cap, 0.0
        tail = zeta_g - cum_a[k]
        return PowerLawBounds(gamma, float(tail / zeta_g), upper, k, p, truncated=True, diverged=True)

    zeta_g1 = hurwitz_zeta(gamma - 1.0)
    cum_b = np.concatenate([[0.0], np.cumsum(x ** (1.0 - gamma))])

    def sides(k, p):
        kg = float(k) ** -gamma
        left = cum_a[k - 1] + (1.0 - p) * kg
        tail = (zeta_g1 - cum_b[k]) - (zeta_g - cum_a[k])  # sum_{x>k} (x^(1-g) - x^-g)
        right = 0.5 * (tail + p * kg * (k - 1))
        return left, right

    ks = np.arange(1, k_cap + 1)
    left = cum_a[ks - 1]
    right = 0.5 * ((zeta_g1 - cum_b[ks - 1]) - (zeta_g - cum_a[ks - 1]))
    infeasible = np.flatnonzero(left > right)
    truncated = infeasible.size == 0
    k = k_cap if truncated else int(infeasible[0])  # last feasible k (k=1 always is)

    lft, rgt = sides(k, 0.0)
    if lft <= rgt:
        p = 0.0
    else:
        lo, hi = 0.0, 1.0
        while hi - lo > p_tol:
            mid = 0.5 * (lo + hi)
            lft, rgt = sides(k, mid)
            if lft <= rgt:
                hi = mid
            else:
                lo = mid
        p = hi
    kg = float(k) ** -gamma
    frac = ((zeta_g - cum_a[k]) + p * kg) / zeta_g
    return PowerLawBounds(gamma, float(frac), upper, k, p, truncated=truncated)


@dataclass(frozen=True)
class PowerLawSpec:
    """Weights of the random power-law model.

    ``weights`` are expected degrees, non-increasing in vertex id; ``r`` is the
    residual folded into the weight-1 class and ``p = 1 / sum(weights)``.
    """

    n: int
    gamma: float
    alpha: float
    weights: np.ndarray
    p: float
    r: int

    def class_counts(self) -> dict:
        vals, counts = np.unique(self.weights, return_counts=True)
        return {int(v): int(c) for v, c in zip(vals, counts)}

    def to_dict(self) -> dict:
        return {"n": self.n, "gamma": self.gamma, "alpha": self.alpha, "r": self.r,
                "p": self.p, "class_counts": self.class_counts()}


_ALPHA_STEP = 1e-4


def _class_sizes(alpha, gamma):
    ea = math.exp(alpha)
    kmax = int(math.floor(math.exp(alpha / gamma)))
    if kmax < 1:
        return np.zeros(0, dtype=np.int64)
    k = np.arange(1, kmax + 1, dtype=np.float64)
    return np.floor(ea / k ** gamma).astype(np.int64)


def _class_total(j, gamma):
    return int(_class_sizes(j * _ALPHA_STEP, gamma).sum())


def _first_index_reaching(target, gamma, hi):
    """Smallest grid index ``j <= hi`` with total >= target (totals are monotone)."""
    lo = 0
    while lo < hi:
        mid = (lo + hi) // 2
        if _class_total(mid, gamma) >= target:
            hi = mid
        else:
            lo = mid + 1
    return lo


def powerlaw_weights(n, gamma) -> PowerLawSpec:
    """Choose ``alpha`` and the weight classes for ``n`` vertices.

    Class ``k`` holds ``floor(e**alpha / k**gamma)`` vertices for
    ``k = 1 .. floor(e**(alpha/gamma))``.  ``alpha`` runs over a grid of step
    ``1e-4`` and minimises ``|n - total|`` (smallest ``alpha`` on ties); the
    residual ``r = n - total`` is added to the weight-1 class so the counts sum
    to exactly ``n``.
    """
    n = int(n)
    gamma = float(gamma)
    if n < 2:
        raise ValueError("need n >= 2")
    if not gamma > 1:
        raise ValueError(f"power-law coefficient must exceed 1, got {gamma}")
    # totals are non-decreasing in alpha and total >= floor(e**alpha)
    j_max = int(math.ceil(math.log(n + 1) / _ALPHA_STEP))
    j_hi = _first_index_reaching(n, gamma, j_max)
    candidates = [j_hi]
    if j_hi > 0:
        below = _class_total(j_hi - 1, gamma)
        candidates.insert(0, _first_index_reaching(below, gamma, j_hi - 1))
    j = min(candidates, key=lambda c: (abs(n - _class_total(c, gamma)), c))
    alpha = j * _ALPHA_STEP
    sizes = _class_sizes(alpha, gamma)
    r = n - int(sizes.sum())
    sizes = sizes.copy()
    sizes[0] += r
    if sizes[0] < 0:
        raise ValueError(f"cannot fit {n} vertices at gamma={gamma}")
    weights = np.repeat(np.arange(sizes.size, 0, -1), sizes[::-1])
    weights.setflags(write=False)
    return PowerLawSpec(n, gamma, alpha, weights, 1.0 / float(weights.sum()), r)


def generate(spec: PowerLawSpec, seed=None) -> Graph:
    """Sample the random power-law graph of ``spec``.

    Each pair ``i < j`` is an edge independently with probability
    ``min(1, w_i w_j p)``.  Rows are drawn in blocks, each from its own
    substream keyed by ``(seed, block index)``, so the result depends only on
    ``seed`` (block size is a function of ``n`` alone).
    """
    w = np.asarray(spec.weights, dtype=np.float64)
    n = w.size
    block = max(1, min(256, 2**22 // n))
    root = np.random.SeedSequence(seed)
    cols = np.arange(n)
    edges = []
    for b, lo in enumerate(range(0, n, block)):
        rows = np.arange(lo, min(lo + block, n))
        rng = np.random.default_rng(np.random.SeedSequence(root.entropy, spawn_key=(b,)))
        prob = np.minimum(1.0, np.outer(w[rows], w) * spec.p)
        hit = (rng.random(prob.shape) < prob) & (cols[None, :] > rows[:, None])
        r, c = np.nonzero(hit)
        edges.append(np.column_stack([rows[r], c]))
    return Graph.from_edges(n, np.concatenate(edges) if edges else np.zeros((0, 2), int))
