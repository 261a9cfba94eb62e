"""Perfect target set selection: greedy, ranking heuristics, bounds, exact search."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.sparse.csgraph import shortest_path

from .dynamics import perfect_target_mask, strict_majority_thresholds
from .exceptions import DisconnectedGraphError, SizeLimitError
from .graph import Graph, VertexMapping, is_connected
from .validation import check_order, check_thresholds

__all__ = [
    "TargetSetReport",
    "greedy_npts",
    "general_bounds",
    "approximation_ratio",
    "rank_high_degree",
    "rank_centrality",
    "rank_random",
    "prefix_pts",
    "brute_force_min_pts",
    "brute_force_min_dominating_set",
    "DEFAULT_LIMIT_N",
]

DEFAULT_LIMIT_N = 16


@dataclass(frozen=True)
class TargetSetReport:
    method: str
    selected: tuple
    cost: int
    is_pts: bool
    bounds: tuple | None = None

    def indicator(self, n) -> np.ndarray:
        s = np.zeros(n, dtype=np.uint8)
        s[list(self.selected)] = 1
        return s

    def to_dict(self, mapping: VertexMapping | None = None) -> dict:
        """Stable document form; ids are translated through ``mapping`` if given."""
        selected = list(self.selected) if mapping is None else mapping.to_original(self.selected)
        doc = {"method": self.method, "cost": self.cost, "selected": selected,
               "is_pts": self.is_pts}
        if self.bounds is not None:
            doc["bounds"] = {"lower": float(self.bounds[0]), "upper": float(self.bounds[1])}
        return doc


def _thresholds(g, t):
    return strict_majority_thresholds(g) if t is None else check_thresholds(g, t)


def _report(method, g, t, selected, bounds=None):
    selected = tuple(sorted(int(v) for v in selected))
    s = np.zeros((1, g.n), dtype=np.uint8)
    s[0, list(selected)] = 1
    is_pts = bool(perfect_target_mask(g, t, s)[0])
    return TargetSetReport(method, selected, len(selected), is_pts, bounds)


def greedy_npts(g: Graph, t=None) -> TargetSetReport:
    """Greedy perfect target set for the non-progressive model.

    Vertices are visited by ascending degree (ties by id).  A vertex is
    *blocked* when some neighbour ``u`` already has ``d(u) - t(u)`` white
    (initially uninfected) neighbours; blocked vertices are seeded, the rest
    stay white and are charged to each neighbour's white count.

    With strict-majority thresholds (``t=None``) the report carries
    :func:`general_bounds`.
    """
    majority = t is None
    t = _thresholds(g, t)
    deg = g.degrees
    slack = (deg - t).tolist()
    whiteadj = [0] * g.n
    indptr, indices = g.indptr.tolist(), g.indices.tolist()
    order = np.lexsort((np.arange(g.n), deg)).tolist()
    selected = []
    for v in order:
        nbrs = indices[indptr[v]:indptr[v + 1]]
        if any(whiteadj[u] == slack[u] for u in nbrs):
            selected.append(v)
        else:
            for u in nbrs:
                whiteadj[u] += 1
    bounds = general_bounds(g) if majority else None
    return _report("greedy", g, t, selected, bounds)


def general_bounds(g: Graph, exact=False):
    """Lower and upper bounds on the minimum PTS size under strict majority.

    ``lower = 2n / (Delta + 1)`` and
    ``upper = n Delta (delta + 2) / (4 Delta + (Delta + 1)(delta - 2))``.
    Computed as fractions; returned as floats unless ``exact`` is set.
    """
    n, D, d = g.n, g.max_degree, g.min_degree
    if d < 1:
        raise ValueError("bounds need minimum degree >= 1")
    lower = Fraction(2 * n, D + 1)
    upper = Fraction(n * D * (d + 2), 4 * D + (D + 1) * (d - 2))
    return (lower, upper) if exact else (float(lower), float(upper))


def approximation_ratio(g: Graph, exact=False):
    """Worst-case greedy ratio ``Delta(Delta+1)(delta+2) / (8 Delta + 2(Delta+1)(delta-2))``."""
    D, d = g.max_degree, g.min_degree
    r = Fraction(D * (D + 1) * (d + 2), 8 * D + 2 * (D + 1) * (d - 2))
    return r if exact else float(r)


# -- rankings --------------------------------------------------------------

def rank_high_degree(g: Graph) -> np.ndarray:
    """Descending degree, ties by ascending id."""
    return np.lexsort((np.arange(g.n), -g.degrees))


def rank_centrality(g: Graph, central_first=True, chunk=256) -> np.ndarray:
    """Order by average BFS distance to all other vertices.

    ``central_first`` puts the smallest average distance first; pass
    ``False`` for the opposite direction.  Ties by ascending id.
    """
    if not is_connected(g):
        raise DisconnectedGraphError(
            "distance centrality needs a connected graph; use giant_component() first")
    n = g.n
    if n == 1:
        return np.zeros(1, dtype=np.int64)
    total = np.empty(n, dtype=np.float64)
    A = g.adjacency
    for lo in range(0, n, chunk):
        idx = np.arange(lo, min(lo + chunk, n))
        dist = shortest_path(A, directed=False, unweighted=True, indices=idx)
        total[idx] = dist.sum(axis=1)
    # average = total / (n - 1); ranking by the integer totals is exact
    key = total if central_first else -total
    return np.lexsort((np.arange(n), key))


def rank_random(g: Graph, seed=None) -> np.ndarray:
    """Uniformly random permutation from a seeded generator."""
    return np.random.default_rng(seed).permutation(g.n)


def prefix_pts(g: Graph, t=None, order=None, method="prefix", cap=None, chunk=128) -> TargetSetReport:
    """Shortest prefix of ``order`` whose indicator state is a PTS.

    Every prefix is simulated from scratch (the non-progressive dynamics are
    not monotone in the seed set); prefixes are evaluated ``chunk`` at a time.
    """
    t = _thresholds(g, t)
    order = check_order(order, g.n)
    rank = np.empty(g.n, dtype=np.int64)
    rank[order] = np.arange(g.n)
    for lo in range(0, g.n, chunk):
        lengths = np.arange(lo + 1, min(lo + chunk, g.n) + 1)
        X = (rank[None, :] < lengths[:, None]).astype(np.uint8)
        ok = perfect_target_mask(g, t, X, cap=cap, chunk=chunk)
        hits = np.flatnonzero(ok)
        if hits.size:
            L = int(lengths[hits[0]])
            return TargetSetReport(method, tuple(sorted(order[:L].tolist())), L, True)
    # unreachable for valid thresholds: the full vertex set is a PTS
    raise AssertionError("full vertex set failed to be a perfect target set")


# -- exact oracles ---------------------------------------------------------

def _check_size(n, limit_n):
    if n > limit_n:
        raise SizeLimitError(
            f"exhaustive search over 2^{n} subsets refused (limit_n={limit_n}); "
            f"raise limit_n explicitly if you accept the cost")


def _combination_states(n, r, batch):
    """Yield ``(combos, X)`` blocks of r-subsets in lexicographic order."""
    it = itertools.combinations(range(n), r)
    while True:
        combos = list(itertools.islice(it, batch))
        if not combos:
            return
        idx = np.array(combos, dtype=np.int64).reshape(len(combos), r)
        X = np.zeros((len(combos), n), dtype=np.uint8)
        np.put_along_axis(X, idx, 1, axis=1)
        yield combos, X


def brute_force_min_pts(g: Graph, t=None, limit_n=DEFAULT_LIMIT_N, cap=None,
                        batch=4096) -> TargetSetReport:
    """Minimum perfect target set by exhaustive search.

    Cardinalities are tried upward from ``ceil(2n / (Delta + 1))``, which no
    PTS can undercut; the lexicographically smallest witness of the first
    feasible size is returned.
    """
    _check_size(g.n, limit_n)
    t = _thresholds(g, t)
    # the cardinality floor only holds for thresholds at least strict majority
    majority = bool(np.all(t >= strict_majority_thresholds(g)))
    start = math.ceil(Fraction(2 * g.n, g.max_degree + 1)) if majority else 1
    bounds = general_bounds(g) if majority else None
    for r in range(start, g.n + 1):
        for combos, X in _combination_states(g.n, r, batch):
            ok = perfect_target_mask(g, t, X, cap=cap, chunk=batch)
            hits = np.flatnonzero(ok)
            if hits.size:
                sel = combos[int(hits[0])]
                return TargetSetReport("brute-force", tuple(sel), r, True, bounds)
    raise AssertionError("full vertex set failed to be a perfect target set")


def brute_force_min_dominating_set(g: Graph, limit_n=DEFAULT_LIMIT_N) -> tuple:
    """Lexicographically smallest minimum dominating set."""
    _check_size(g.n, limit_n)
    closed = [(1 << v) | sum(1 << int(u) for u in g.neighbors(v)) for v in range(g.n)]
    full = (1 << g.n) - 1
    for r in range(1, g.n + 1):
        for combo in itertools.combinations(range(g.n), r):
            covered = 0
            for v in combo:
                covered |= closed[v]
            if covered == full:
                return combo
    raise AssertionError("unreachable: the full vertex set dominates")
