import numpy as np

from majority_pts import Graph

ACCEPTANCE_RESULTS = {}


def record_criterion(number, passed, detail, part=None):
    """Store a criterion outcome (or one part of it) for the end-of-run summary."""
    ACCEPTANCE_RESULTS.setdefault(int(number), {})[part] = (bool(passed), detail)


def check_criterion(number, passed, detail, part=None):
    """Record, then fail the calling test if the criterion did not hold."""
    record_criterion(number, passed, detail, part)
    assert passed, f"criterion {number}{'' if part is None else f' ({part})'}: {detail}"


def path_graph(n):
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n):
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n):
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def star_graph(leaves):
    """Center is vertex 0, leaves are 1..leaves."""
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def random_connected_graph(rng, n, p):
    """Erdos-Renyi sample made connected by a random spanning tree."""
    perm = rng.permutation(n)
    edges = [(int(perm[i]), int(perm[rng.integers(0, i)])) for i in range(1, n)]
    iu, ju = np.triu_indices(n, 1)
    mask = rng.random(iu.size) < p
    edges += list(zip(iu[mask].tolist(), ju[mask].tolist()))
    return Graph.from_edges(n, edges)
