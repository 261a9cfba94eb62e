"""Threshold dynamics: update rules, simulation to the limit cycle, PTS checks.

States are 0/1 ``uint8`` vectors indexed by vertex id.  Batches of states are
2-D arrays with one state per row, which lets many initial assignments be
advanced together by a single sparse matrix product.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import ConvergenceError, NoPerfectTargetSetError
from .graph import Graph
from .validation import check_order, check_state, check_states, check_thresholds

__all__ = [
    "NONPROGRESSIVE",
    "PROGRESSIVE",
    "strict_majority_thresholds",
    "default_cap",
    "step",
    "Trajectory",
    "BatchResult",
    "simulate",
    "simulate_batch",
    "is_perfect_target_set",
    "perfect_target_mask",
    "sequential_round",
    "disagreement_potential",
]

NONPROGRESSIVE = "nonprogressive"
PROGRESSIVE = "progressive"
_MODES = (NONPROGRESSIVE, PROGRESSIVE)


def strict_majority_thresholds(g: Graph) -> np.ndarray:
    """``t(v) = ceil((d(v) + 1) / 2)``: strictly more than half the neighbours."""
    if g.min_degree == 0:
        v = int(np.argmin(g.degrees))
        raise NoPerfectTargetSetError(f"no PTS exists: isolated vertex {v}")
    return g.degrees // 2 + 1


def default_cap(g: Graph) -> int:
    """Step cap ``4m + 2n + 8`` derived from the O(|E|) convergence bound."""
    return 4 * g.m + 2 * g.n + 8


def _check_mode(mode):
    if mode not in _MODES:
        raise ValueError(f"mode must be one of {_MODES}, got {mode!r}")


def _advance(g, t, X, mode):
    # X: (k, n) uint8; adjacency is symmetric so X @ A == (A @ X.T).T
    counts = (g.adjacency @ X.T.astype(np.int32)).T
    nxt = (counts >= t).astype(np.uint8)
    if mode == PROGRESSIVE:
        nxt |= X
    return nxt


def step(g: Graph, t, s, mode=NONPROGRESSIVE) -> np.ndarray:
    """One synchronous update of every vertex from state ``s``."""
    _check_mode(mode)
    t = check_thresholds(g, t)
    s = check_state(s, g.n)
    return _advance(g, t, s[None, :], mode)[0]


@dataclass(frozen=True)
class Trajectory:
    """Result of :func:`simulate`.

    ``states`` holds the full history ``f_0 .. f_{T+cycle_len}`` when the
    simulation was run with ``record=True``, otherwise only the last (up to)
    three states.  ``T`` is the first time with ``f_T == f_{T+2}``, tightened to
    the fixed-point index when ``f_T == f_{T+1}``.
    """

    states: tuple
    T: int
    cycle_len: int
    reached_all_ones: bool

    @property
    def final(self) -> np.ndarray:
        return self.states[-1]

    @property
    def limit_cycle(self) -> tuple:
        return tuple(self.states[-self.cycle_len:])


def simulate(g: Graph, t, s0, mode=NONPROGRESSIVE, cap=None, record=False) -> Trajectory:
    """Iterate :func:`step` until the trajectory enters its limit cycle.

    Raises
    ------
    ConvergenceError
        If no fixed point or 2-cycle is detected within ``cap`` steps
        (default :func:`default_cap`).
    """
    _check_mode(mode)
    t = check_thresholds(g, t)
    s0 = check_state(s0, g.n)
    cap = default_cap(g) if cap is None else int(cap)
    history = [s0]
    reached = bool(s0.all())
    prev2, prev1 = None, s0
    for tau in range(1, cap + 1):
        cur = _advance(g, t, prev1[None, :], mode)[0]
        reached = reached or bool(cur.all())
        history.append(cur)
        if not record and len(history) > 3:
            history.pop(0)
        if np.array_equal(cur, prev1):
            return Trajectory(tuple(history), tau - 1, 1, reached)
        if prev2 is not None and np.array_equal(cur, prev2):
            return Trajectory(tuple(history), tau - 2, 2, reached)
        prev2, prev1 = prev1, cur
    raise ConvergenceError(f"convergence bound violated: no limit cycle within {cap} steps")


@dataclass(frozen=True)
class BatchResult:
    """Per-row outcome of :func:`simulate_batch`."""

    T: np.ndarray
    cycle_len: np.ndarray
    reached_all_ones: np.ndarray
    final: np.ndarray


def simulate_batch(g: Graph, t, X0, mode=NONPROGRESSIVE, cap=None) -> BatchResult:
    """Simulate every row of ``X0`` independently, in lock step.

    Rows leave the active set as soon as their limit cycle is detected, so
    the cost tracks the slowest remaining row only.
    """
    _check_mode(mode)
    t = check_thresholds(g, t)
    X0 = check_states(X0, g.n)
    cap = default_cap(g) if cap is None else int(cap)
    k = X0.shape[0]
    T = np.zeros(k, dtype=np.int64)
    cyc = np.zeros(k, dtype=np.int64)
    reached = X0.all(axis=1)
    final = X0.copy()
    active = np.arange(k)
    prev2 = None
    prev1 = X0
    for tau in range(1, cap + 1):
        if active.size == 0:
            break
        cur = _advance(g, t, prev1, mode)
        reached[active] |= cur.all(axis=1)
        fixed = (cur == prev1).all(axis=1)
        two = np.zeros_like(fixed) if prev2 is None else (cur == prev2).all(axis=1) & ~fixed
        done = fixed | two
        if done.any():
            idx = active[done]
            T[idx] = np.where(fixed[done], tau - 1, tau - 2)
            cyc[idx] = np.where(fixed[done], 1, 2)
            final[idx] = cur[done]
            keep = ~done
            active, cur, prev1 = active[keep], cur[keep], prev1[keep]
        prev2, prev1 = prev1, cur
    if active.size:
        raise ConvergenceError(
            f"convergence bound violated: {active.size} trajectories without a "
            f"limit cycle within {cap} steps")
    return BatchResult(T, cyc, reached, final)


def is_perfect_target_set(g: Graph, t, s0, cap=None) -> bool:
    """True iff the non-progressive dynamics from ``s0`` reach all-ones."""
    return simulate(g, t, s0, NONPROGRESSIVE, cap).reached_all_ones


def perfect_target_mask(g: Graph, t, X0, cap=None, chunk=512) -> np.ndarray:
    """Vectorised :func:`is_perfect_target_set` over the rows of ``X0``."""
    X0 = check_states(X0, g.n)
    out = np.zeros(X0.shape[0], dtype=bool)
    for lo in range(0, X0.shape[0], chunk):
        out[lo:lo + chunk] = simulate_batch(g, t, X0[lo:lo + chunk], NONPROGRESSIVE, cap).reached_all_ones
    return out


def sequential_round(g: Graph, t, s, order) -> np.ndarray:
    """Apply the non-progressive rule to one vertex at a time, in ``order``.

    Each update is visible to the vertices updated after it.
    """
    t = check_thresholds(g, t)
    s = check_state(s, g.n).copy()
    order = check_order(order, g.n)
    indptr, indices = g.indptr, g.indices
    for v in order.tolist():
        nb = indices[indptr[v]:indptr[v + 1]]
        s[v] = 1 if int(s[nb].sum()) >= t[v] else 0
    return s


def disagreement_potential(g: Graph, s) -> int:
    """Number of edges whose endpoints are in different states."""
    s = check_state(s, g.n)
    e = g.edges()
    return int(np.count_nonzero(s[e[:, 0]] != s[e[:, 1]]))
