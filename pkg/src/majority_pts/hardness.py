"""Reduction gadget from minimum dominating set to minimum perfect target set.

For a source graph ``G`` with ``n`` vertices and ``e >= 1`` edges the gadget
``H`` has ``8e + 2n + 4`` vertices in seven groups, laid out in this order:

=====  ==========  =====================================
group  size        role
=====  ==========  =====================================
X0     2           hubs ``g1``, ``g2``
X1     2e+1        ``a_i``, pendant on ``g1``
X2     2e+1        ``b_i``, pendant on ``g2``
X3     2e          ``c_i``, adjacent to both hubs
X4     n           ``w_i``, one per source vertex
X5     n           ``v_i``, one per source vertex
X6     2e          ``d_i``, pendant on the ``v``'s
=====  ==========  =====================================

and the minimum PTS of ``H`` has size ``2e + n + 4 + |D|`` where ``D`` is a
minimum dominating set of ``G``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph

__all__ = ["HardnessInstance", "build_hardness_instance", "format_labels", "GROUPS"]

GROUPS = ("X0", "X1", "X2", "X3", "X4", "X5", "X6")


@dataclass(frozen=True)
class HardnessInstance:
    h: Graph
    labels: tuple  # per vertex, e.g. "g1", "a3", "w2" (1-based like the construction)
    partition: np.ndarray  # group index 0..6 per vertex
    source_n: int
    source_e: int

    def group(self, name) -> np.ndarray:
        return np.flatnonzero(self.partition == GROUPS.index(name))

    def expected_min_pts(self, dominating_number) -> int:
        return 2 * self.source_e + self.source_n + 4 + int(dominating_number)

    def witness(self, dominating_set) -> np.ndarray:
        """Seed set ``X0 + X3 + X4 + {v_i : u_i in D} + a_1 + b_1`` as vertex ids."""
        v = self.group("X5")
        ids = np.concatenate([
            self.group("X0"), self.group("X3"), self.group("X4"),
            v[np.asarray(sorted(dominating_set), dtype=np.int64)],
            self.group("X1")[:1], self.group("X2")[:1],
        ])
        return np.sort(ids)


def build_hardness_instance(g: Graph) -> HardnessInstance:
    """Build the gadget ``H`` for source graph ``g``.

    The ``c`` and ``d`` vertices are split into consecutive blocks, block ``i``
    having ``d(u_i)`` members, so ``w_i`` is joined to exactly the ``c``'s of its
    block and ``v_i`` to the ``d``'s of its block.  ``v_i`` is also joined to
    ``w_i`` and to ``w_j`` for every edge ``u_i u_j``.
    """
    n, e = g.n, g.m
    if e < 1:
        raise ValueError("the reduction needs a source graph with at least one edge")
    sizes = [2, 2 * e + 1, 2 * e + 1, 2 * e, n, n, 2 * e]
    starts = np.concatenate([[0], np.cumsum(sizes)])
    g1, g2 = 0, 1
    A = np.arange(starts[1], starts[2])
    B = np.arange(starts[2], starts[3])
    C = np.arange(starts[3], starts[4])
    W = np.arange(starts[4], starts[5])
    V = np.arange(starts[5], starts[6])
    Dv = np.arange(starts[6], starts[7])

    edges = [(g1, a) for a in A]
    edges += [(g2, b) for b in B]
    edges += [(g1, c) for c in C]
    edges += [(g2, c) for c in C]
    block_start = np.concatenate([[0], np.cumsum(g.degrees)])
    for i in range(n):
        block = range(block_start[i], block_start[i + 1])
        edges += [(W[i], C[j]) for j in block]
        edges += [(V[i], Dv[j]) for j in block]
        edges.append((V[i], W[i]))
        edges += [(V[i], W[j]) for j in g.neighbors(i)]
    h = Graph.from_edges(int(starts[-1]), edges)

    prefixes = ("g", "a", "b", "c", "w", "v", "d")
    labels = []
    partition = np.repeat(np.arange(7), sizes)
    for grp, size in enumerate(sizes):
        labels += [f"{prefixes[grp]}{i}" for i in range(1, size + 1)]
    return HardnessInstance(h, tuple(labels), partition, n, e)


def format_labels(inst: HardnessInstance) -> str:
    """Sidecar listing: ``id label group`` per line."""
    return "".join(f"{i} {lab} {GROUPS[p]}\n"
                   for i, (lab, p) in enumerate(zip(inst.labels, inst.partition.tolist())))
