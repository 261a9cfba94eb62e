"""Undirected simple graphs, edge-list I/O and the structural constructions.

Vertices are dense integer ids ``0..n-1``.  Adjacency is stored in CSR form
(``indptr``/``indices``) with every neighbour list sorted ascending; the arrays
are flagged read-only so a :class:`Graph` can be shared freely.
"""
from __future__ import annotations

import io
import os
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components

from .exceptions import GraphFormatError

__all__ = [
    "Graph",
    "VertexMapping",
    "load_edge_list",
    "read_edge_list",
    "format_edge_list",
    "write_edge_list",
    "induced_subgraph",
    "giant_component",
    "is_connected",
    "double_cover",
    "tight_family",
    "tight_family_layers",
]


class Graph:
    """Immutable undirected simple graph.

    Build instances with :meth:`from_edges`; the constructor trusts its CSR
    arguments and only freezes them.
    """

    __slots__ = ("_indptr", "_indices", "_degrees", "_adj")

    def __init__(self, indptr, indices):
        indptr = np.array(indptr, dtype=np.int64)
        indices = np.array(indices, dtype=np.int64)
        if indptr.ndim != 1 or indptr.size < 2:
            raise ValueError("a graph needs at least one vertex")
        indptr.setflags(write=False)
        indices.setflags(write=False)
        degrees = np.diff(indptr)
        degrees.setflags(write=False)
        self._indptr = indptr
        self._indices = indices
        self._degrees = degrees
        self._adj = None

    @classmethod
    def from_edges(cls, n, edges):
        """Build a graph on ``n`` vertices from an iterable of ``(u, v)`` pairs.

        Duplicate edges in either orientation collapse to one; self-loops and
        out-of-range ids raise ``ValueError``.
        """
        n = int(n)
        if n < 1:
            raise ValueError("a graph needs at least one vertex")
        arr = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges,
                         dtype=np.int64)
        if arr.size == 0:
            arr = arr.reshape(0, 2)
        if arr.ndim != 2 or arr.shape[1] != 2:
            raise ValueError("edges must be pairs")
        if arr.size and (arr.min() < 0 or arr.max() >= n):
            raise ValueError(f"edge endpoint outside 0..{n - 1}")
        if np.any(arr[:, 0] == arr[:, 1]):
            raise ValueError("self-loops are not allowed")
        lo = np.minimum(arr[:, 0], arr[:, 1])
        hi = np.maximum(arr[:, 0], arr[:, 1])
        keys = np.unique(lo * n + hi)
        lo, hi = keys // n, keys % n
        rows = np.concatenate([lo, hi])
        cols = np.concatenate([hi, lo])
        order = np.lexsort((cols, rows))
        rows, cols = rows[order], cols[order]
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.add.at(indptr, rows + 1, 1)
        np.cumsum(indptr, out=indptr)
        return cls(indptr, cols)

    # -- basic accessors -------------------------------------------------
    @property
    def n(self) -> int:
        return self._indptr.size - 1

    @property
    def m(self) -> int:
        return self._indices.size // 2

    @property
    def indptr(self) -> np.ndarray:
        return self._indptr

    @property
    def indices(self) -> np.ndarray:
        return self._indices

    @property
    def degrees(self) -> np.ndarray:
        return self._degrees

    def degree(self, v) -> int:
        return int(self._degrees[v])

    @property
    def max_degree(self) -> int:
        return int(self._degrees.max())

    @property
    def min_degree(self) -> int:
        return int(self._degrees.min())

    def neighbors(self, v) -> np.ndarray:
        return self._indices[self._indptr[v]:self._indptr[v + 1]]

    def subset_degree(self, v, members) -> int:
        """Number of neighbours of ``v`` inside the vertex subset ``members``.

        ``members`` is a boolean mask or 0/1 vector of length ``n``.
        """
        members = np.asarray(members)
        return int(np.count_nonzero(members[self.neighbors(v)]))

    @property
    def adjacency(self) -> sp.csr_matrix:
        """Symmetric 0/1 adjacency matrix (int32), cached."""
        if self._adj is None:
            data = np.ones(self._indices.size, dtype=np.int32)
            self._adj = sp.csr_matrix((data, self._indices, self._indptr),
                                      shape=(self.n, self.n))
        return self._adj

    def edges(self) -> np.ndarray:
        """Edges as an ``(m, 2)`` array with ``u < v``, ascending."""
        rows = np.repeat(np.arange(self.n), self._degrees)
        mask = rows < self._indices
        return np.column_stack([rows[mask], self._indices[mask]])

    def to_networkx(self):
        import networkx as nx

        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(map(tuple, self.edges().tolist()))
        return g

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (np.array_equal(self._indptr, other._indptr)
                and np.array_equal(self._indices, other._indices))

    def __hash__(self):
        return hash((self._indptr.tobytes(), self._indices.tobytes()))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class VertexMapping:
    """Maps dense ids of a derived graph back to labels of its source.

    ``labels[i]`` is the source label of dense vertex ``i``.  For ingestion the
    labels are the ids found in the file; for :func:`giant_component` they are
    dense ids of the parent graph; for :func:`double_cover` both ``x_i`` (id
    ``i``) and ``y_i`` (id ``n + i``) carry label ``i``.
    """

    labels: np.ndarray
    _index: dict = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        labels = np.asarray(self.labels, dtype=np.int64)
        labels.setflags(write=False)
        object.__setattr__(self, "labels", labels)
        index = {}
        for i, lab in enumerate(labels.tolist()):
            index.setdefault(lab, []).append(i)
        object.__setattr__(self, "_index", index)

    def __len__(self):
        return self.labels.size

    def original(self, i) -> int:
        return int(self.labels[i])

    def dense(self, label) -> int:
        """Dense id of ``label``; for a double cover this is the X copy."""
        try:
            return self._index[int(label)][0]
        except KeyError:
            raise KeyError(f"unknown vertex label {label}") from None

    def preimage(self, label) -> tuple:
        """All dense ids carrying ``label``."""
        return tuple(self._index.get(int(label), ()))

    def to_original(self, ids) -> list:
        return [int(x) for x in self.labels[np.asarray(list(ids), dtype=np.int64)]]

    def compose(self, outer: "VertexMapping") -> "VertexMapping":
        """Chain with the mapping of the parent graph: ``outer.labels[self.labels]``."""
        return VertexMapping(outer.labels[self.labels])

    @classmethod
    def identity(cls, n):
        return cls(np.arange(n))


# -- edge-list I/O --------------------------------------------------------

def _iter_lines(source):
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    if isinstance(source, str):
        yield from io.StringIO(source)
        return
    for line in source:
        if isinstance(line, bytes):
            line = line.decode("utf-8")
        yield line


def load_edge_list(source):
    """Parse whitespace-separated ``u v`` lines into a graph.

    ``source`` is edge-list text (``str`` or ``bytes``) or an open file.
    Lines starting with ``#`` and blank lines are skipped.  Ids are arbitrary
    non-negative integers and are renumbered densely in order of first
    appearance; repeated edges (in either direction) are dropped.

    Returns
    -------
    graph : Graph
    mapping : VertexMapping
        Dense id -> id used in the input.
    """
    ids = {}
    edges = []
    for lineno, line in enumerate(_iter_lines(source), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        parts = stripped.split()
        if len(parts) != 2:
            raise GraphFormatError(f"expected 'u v', got {stripped!r}", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"non-integer vertex id in {stripped!r}", lineno) from None
        if u < 0 or v < 0:
            raise GraphFormatError(f"negative vertex id in {stripped!r}", lineno)
        if u == v:
            raise GraphFormatError(f"self-loop on vertex {u}", lineno)
        du = ids.setdefault(u, len(ids))
        dv = ids.setdefault(v, len(ids))
        edges.append((du, dv))
    if not edges:
        raise GraphFormatError("edge list contains no edges")
    graph = Graph.from_edges(len(ids), edges)
    return graph, VertexMapping(np.fromiter(ids.keys(), dtype=np.int64, count=len(ids)))


def read_edge_list(path):
    with open(path, "rb") as fh:
        return load_edge_list(fh)


def format_edge_list(g: Graph) -> str:
    """One ``u v`` line per edge, ``u < v``, ascending."""
    return "".join(f"{u} {v}\n" for u, v in g.edges().tolist())


def write_edge_list(g: Graph, path) -> None:
    with open(os.fspath(path), "w", encoding="utf-8") as fh:
        fh.write(format_edge_list(g))


# -- subgraphs and components --------------------------------------------

def induced_subgraph(g: Graph, vertices):
    """Subgraph induced by ``vertices``, renumbered in ascending id order."""
    keep = np.unique(np.asarray(list(vertices), dtype=np.int64))
    if keep.size == 0:
        raise ValueError("induced subgraph needs at least one vertex")
    remap = np.full(g.n, -1, dtype=np.int64)
    remap[keep] = np.arange(keep.size)
    e = g.edges()
    e = remap[e]
    e = e[(e >= 0).all(axis=1)]
    return Graph.from_edges(keep.size, e), VertexMapping(keep)


def is_connected(g: Graph) -> bool:
    ncomp, _ = connected_components(g.adjacency, directed=False)
    return ncomp == 1


def giant_component(g: Graph):
    """Largest connected component, renumbered densely.

    Ties go to the component holding the smallest vertex id.  The returned
    mapping sends new ids to ids of ``g``.
    """
    _, labels = connected_components(g.adjacency, directed=False)
    sizes = np.bincount(labels)
    # component labels are assigned in order of smallest member, so argmax
    # already prefers the component containing the smallest id
    best = int(np.argmax(sizes))
    return induced_subgraph(g, np.flatnonzero(labels == best))


# -- constructions ---------------------------------------------------------

def double_cover(g: Graph):
    """Bipartite double cover: ``x_i`` is id ``i``, ``y_i`` is id ``n + i``.

    Every edge ``v_i v_j`` yields ``x_i y_j`` and ``x_j y_i``, so degrees are
    preserved and ``|E(H)| = 2 |E(G)|``.
    """
    n = g.n
    e = g.edges()
    u, v = e[:, 0], e[:, 1]
    edges = np.concatenate([np.column_stack([u, v + n]), np.column_stack([v, u + n])])
    h = Graph.from_edges(2 * n, edges)
    return h, VertexMapping(np.concatenate([np.arange(n), np.arange(n)]))


def tight_family_layers(d, m1, layers):
    """Vertex-id ranges of each layer of :func:`tight_family`.

    Raises ``ValueError`` when a layer size ``m_{i+1} = d m_i / (d + 1)`` is not
    a positive integer.
    """
    d, m1, layers = int(d), int(m1), int(layers)
    if d < 1 or layers < 1 or m1 < 1:
        raise ValueError("need d >= 1, m1 >= 1 and layers >= 1")
    sizes = [m1]
    for _ in range(layers - 1):
        nxt, rem = divmod(d * sizes[-1], d + 1)
        if rem or nxt == 0:
            raise ValueError(
                f"layer size {d}*{sizes[-1]}/{d + 1} is not a positive integer; "
                f"choose m1 divisible by {d + 1}**{layers - 1}")
        sizes.append(nxt)
    out, start = [], 0
    for s in sizes:
        out.append(range(start, start + s))
        start += s
    return out


def _circulant_regular(m, r):
    """Edges of an ``r``-regular circulant graph on ``m`` vertices."""
    if r >= m:
        raise ValueError(f"no simple {r}-regular graph on {m} vertices")
    if (m * r) % 2:
        raise ValueError(f"no {r}-regular graph on an odd number ({m}) of vertices")
    offsets = list(range(1, r // 2 + 1))
    edges = [(i, (i + o) % m) for o in offsets for i in range(m)]
    if r % 2:
        half = m // 2
        edges += [(i, i + half) for i in range(half)]
    return edges


def tight_family(d, m1, layers) -> Graph:
    """Layered graph attaining the lower bound ``2n / (Delta + 1)``.

    Layer 1 (ids ``0..m1-1``) is a ``(d+1)``-regular circulant.  Each vertex of
    layer ``i+1`` gets ``d+1`` edges into layer ``i`` and each vertex of layer
    ``i`` receives exactly ``d`` of them, assigned round-robin: the ``j``-th new
    vertex takes slots ``j(d+1) .. j(d+1)+d`` of the cyclic slot sequence over
    layer ``i``.  Every vertex outside the deepest layer has degree ``2d+1``;
    the deepest layer has degree ``d+1``.  Layer 1 is a perfect target set
    (see :func:`tight_family_layers` for the id ranges).
    """
    ranges = tight_family_layers(d, m1, layers)
    try:
        edges = _circulant_regular(m1, d + 1)
    except ValueError as exc:
        raise ValueError(f"cannot build the seed layer: {exc}") from None
    for prev, cur in zip(ranges, ranges[1:]):
        mp = len(prev)
        if d + 1 > mp:
            raise ValueError(f"layer of {mp} vertices cannot take {d + 1} distinct edges")
        for j, v in enumerate(cur):
            for r in range(d + 1):
                edges.append((v, prev.start + (j * (d + 1) + r) % mp))
    return Graph.from_edges(ranges[-1].stop, edges)
