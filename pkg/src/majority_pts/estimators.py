"""Scikit-learn style wrappers.

Selectors are fitted on a graph and expose the chosen seed set; ``transform``
returns its 0/1 indicator.  :class:`MajorityDynamics` is fitted on a graph and
then treats each row of ``X`` as an initial state (samples x vertices).
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .dynamics import NONPROGRESSIVE, simulate_batch, strict_majority_thresholds, _advance, _check_mode
from .selection import (
    brute_force_min_pts,
    greedy_npts,
    prefix_pts,
    rank_centrality,
    rank_high_degree,
    rank_random,
    DEFAULT_LIMIT_N,
)
from .validation import check_graph, check_states, check_thresholds

__all__ = ["GreedyTargetSelector", "PrefixTargetSelector", "ExactTargetSelector", "MajorityDynamics"]


def _resolve_thresholds(g, thresholds):
    if isinstance(thresholds, str):
        if thresholds != "majority":
            raise ValueError(f"unknown threshold rule {thresholds!r}")
        return strict_majority_thresholds(g)
    return check_thresholds(g, thresholds)


class _SelectorMixin(TransformerMixin):
    def _store(self, g, report):
        self.graph_ = g
        self.report_ = report
        self.selected_ = np.array(report.selected, dtype=np.int64)
        self.cost_ = report.cost
        self.is_pts_ = report.is_pts
        self.n_vertices_ = g.n
        return self

    def transform(self, X):
        """Indicator state of the fitted seed set; ``X`` is the fitted graph."""
        check_is_fitted(self, "report_")
        if check_graph(X).n != self.n_vertices_:
            raise ValueError("graph differs from the one seen in fit")
        return self.report_.indicator(self.n_vertices_)


class GreedyTargetSelector(_SelectorMixin, BaseEstimator):
    """Greedy perfect target set.

    Parameters
    ----------
    thresholds : "majority" or array-like
        Per-vertex thresholds; the default is strict majority.

    Attributes
    ----------
    selected_ : ndarray of vertex ids
    cost_ : int
    is_pts_ : bool
    bounds_ : (lower, upper) or None
    """

    def __init__(self, thresholds="majority"):
        self.thresholds = thresholds

    def fit(self, X, y=None):
        g = check_graph(X)
        t = _resolve_thresholds(g, self.thresholds)
        # strict majority goes through as None so the report carries bounds
        report = greedy_npts(g, None if isinstance(self.thresholds, str) else t)
        self.bounds_ = report.bounds
        return self._store(g, report)


class PrefixTargetSelector(_SelectorMixin, BaseEstimator):
    """Shortest PTS prefix of a vertex ranking.

    ``ranking`` is ``"degree"``, ``"centrality"`` or ``"random"``.
    """

    def __init__(self, ranking="degree", thresholds="majority", central_first=True,
                 random_state=None, cap=None):
        self.ranking = ranking
        self.thresholds = thresholds
        self.central_first = central_first
        self.random_state = random_state
        self.cap = cap

    def _order(self, g):
        if self.ranking == "degree":
            return rank_high_degree(g)
        if self.ranking == "centrality":
            return rank_centrality(g, central_first=self.central_first)
        if self.ranking == "random":
            return rank_random(g, self.random_state)
        raise ValueError(f"unknown ranking {self.ranking!r}")

    def fit(self, X, y=None):
        g = check_graph(X)
        t = _resolve_thresholds(g, self.thresholds)
        self.order_ = self._order(g)
        report = prefix_pts(g, t, self.order_, method=self.ranking, cap=self.cap)
        return self._store(g, report)


class ExactTargetSelector(_SelectorMixin, BaseEstimator):
    """Minimum perfect target set by exhaustive search (small graphs only)."""

    def __init__(self, thresholds="majority", limit_n=DEFAULT_LIMIT_N):
        self.thresholds = thresholds
        self.limit_n = limit_n

    def fit(self, X, y=None):
        g = check_graph(X)
        t = _resolve_thresholds(g, self.thresholds)
        return self._store(g, brute_force_min_pts(g, t, limit_n=self.limit_n))


class MajorityDynamics(BaseEstimator):
    """Threshold dynamics on a fixed graph.

    ``fit(G)`` binds the graph; afterwards ``X`` is a batch of initial states.
    ``transform`` gives the state at which each row enters its limit cycle,
    ``predict`` whether each row reaches all-ones (is a perfect target set),
    and :meth:`convergence_time` the entry time ``T``.
    """

    def __init__(self, mode=NONPROGRESSIVE, thresholds="majority", cap=None):
        self.mode = mode
        self.thresholds = thresholds
        self.cap = cap

    def fit(self, X, y=None):
        _check_mode(self.mode)
        g = check_graph(X)
        self.graph_ = g
        self.thresholds_ = _resolve_thresholds(g, self.thresholds)
        self.n_features_in_ = g.n
        return self

    def _run(self, X):
        check_is_fitted(self, "graph_")
        X = check_states(X, self.graph_.n)
        return simulate_batch(self.graph_, self.thresholds_, X, self.mode, self.cap)

    def step(self, X):
        check_is_fitted(self, "graph_")
        X = check_states(X, self.graph_.n)
        return _advance(self.graph_, self.thresholds_, X, self.mode)

    def transform(self, X):
        res = self._run(X)
        # the simulation stops at f_{T+cycle_len}, which equals f_T
        return res.final

    def predict(self, X):
        res = self._run(X)
        return res.reached_all_ones

    def convergence_time(self, X):
        res = self._run(X)
        return res.T

    def cycle_length(self, X):
        res = self._run(X)
        return res.cycle_len
