"""Input coercion and checking shared by the functional API and the estimators."""
from __future__ import annotations

import numpy as np
import scipy.sparse as sp

from .exceptions import NoPerfectTargetSetError
from .graph import Graph

__all__ = ["check_graph", "check_state", "check_states", "check_thresholds", "check_order"]


def check_graph(G) -> Graph:
    """Coerce ``G`` to a :class:`Graph`.

    Accepted inputs: a ``Graph``; a networkx-style graph (nodes are numbered
    in iteration order); a square adjacency matrix (dense or scipy sparse);
    or an ``(k, 2)`` integer edge array.  A ``2 x 2`` array is read as an
    adjacency matrix.
    """
    if isinstance(G, Graph):
        return G
    if hasattr(G, "nodes") and hasattr(G, "edges") and hasattr(G, "is_directed"):
        if G.is_directed():
            raise ValueError("directed graphs are not supported")
        index = {v: i for i, v in enumerate(G.nodes())}
        return Graph.from_edges(len(index), [(index[u], index[v]) for u, v in G.edges()])
    if sp.issparse(G):
        A = sp.coo_matrix(G)
        if A.shape[0] != A.shape[1]:
            raise ValueError(f"adjacency matrix must be square, got {A.shape}")
        mask = A.data != 0
        return _from_adjacency(A.shape[0], A.row[mask], A.col[mask])
    arr = np.asarray(G)
    if arr.ndim == 2 and arr.shape[0] == arr.shape[1]:
        r, c = np.nonzero(arr)
        return _from_adjacency(arr.shape[0], r, c)
    if arr.ndim == 2 and arr.shape[1] == 2:
        if not np.issubdtype(arr.dtype, np.integer):
            raise ValueError("edge arrays must be integer-valued")
        n = int(arr.max()) + 1 if arr.size else 0
        return Graph.from_edges(n, arr)
    raise TypeError(f"cannot interpret {type(G).__name__} as a graph")


def _from_adjacency(n, rows, cols):
    rows = np.asarray(rows)
    cols = np.asarray(cols)
    if np.any(rows == cols):
        raise ValueError("adjacency matrix has a non-zero diagonal (self-loop)")
    fwd = set(zip(rows.tolist(), cols.tolist()))
    if any((c, r) not in fwd for r, c in fwd):
        raise ValueError("adjacency matrix is not symmetric")
    return Graph.from_edges(n, np.column_stack([rows, cols]))


def check_state(s, n=None) -> np.ndarray:
    """Coerce a single 0/1 state to a ``uint8`` vector.

    Strings such as ``"1010"`` are read character by character.
    """
    if isinstance(s, str):
        if not s or set(s) - {"0", "1"}:
            raise ValueError(f"state literal must be a non-empty string of 0/1, got {s!r}")
        arr = np.frombuffer(s.encode("ascii"), dtype=np.uint8) - ord("0")
    else:
        arr = np.asarray(s)
        if arr.dtype == bool:
            arr = arr.astype(np.uint8)
        if arr.ndim != 1:
            raise ValueError(f"state must be one-dimensional, got shape {arr.shape}")
        if arr.size and not np.all((arr == 0) | (arr == 1)):
            raise ValueError("state values must be 0 or 1")
        arr = arr.astype(np.uint8)
    if n is not None and arr.size != n:
        raise ValueError(f"state has length {arr.size}, graph has {n} vertices")
    return arr


def check_states(X, n=None) -> np.ndarray:
    """Coerce a batch of states (one per row) to a 2-D ``uint8`` array."""
    if isinstance(X, str):
        X = [X]
    if isinstance(X, (list, tuple)) and X and isinstance(X[0], str):
        X = [check_state(s, n) for s in X]
    arr = np.asarray(X)
    if arr.ndim == 1:
        arr = arr[None, :]
    if arr.ndim != 2:
        raise ValueError(f"states must be 2-D (samples x vertices), got shape {arr.shape}")
    if arr.size and not np.all((arr == 0) | (arr == 1)):
        raise ValueError("state values must be 0 or 1")
    if n is not None and arr.shape[1] != n:
        raise ValueError(f"states have {arr.shape[1]} columns, graph has {n} vertices")
    return arr.astype(np.uint8)


def check_thresholds(g: Graph, t) -> np.ndarray:
    """Validate per-vertex thresholds; requires ``1 <= t(v) <= d(v)``.

    An isolated vertex has no admissible threshold, so it is reported as
    :class:`NoPerfectTargetSetError`.
    """
    t = np.asarray(t)
    if t.shape != (g.n,):
        raise ValueError(f"thresholds must have shape ({g.n},), got {t.shape}")
    if not np.issubdtype(t.dtype, np.integer):
        if not np.all(np.equal(np.mod(t, 1), 0)):
            raise ValueError("thresholds must be integers")
    t = t.astype(np.int64)
    if g.min_degree == 0:
        v = int(np.argmin(g.degrees))
        raise NoPerfectTargetSetError(f"no PTS exists: isolated vertex {v}")
    bad = np.flatnonzero((t < 1) | (t > g.degrees))
    if bad.size:
        v = int(bad[0])
        raise ValueError(f"threshold {t[v]} of vertex {v} outside 1..{g.degree(v)}")
    return t


def check_order(order, n) -> np.ndarray:
    """Validate that ``order`` is a permutation of ``0..n-1``."""
    arr = np.asarray(order, dtype=np.int64).ravel()
    if arr.size != n or not np.array_equal(np.sort(arr), np.arange(n)):
        raise ValueError(f"order must be a permutation of 0..{n - 1}")
    return arr
