"""Plain-list reference implementations used to cross-check the compressed
structures in tests and selfchecks.  Everything here is deliberately naive:
O(n^2) memory is fine, cleverness is not."""

from __future__ import annotations

from itertools import permutations

import numpy as np

from .graph_model import Dag


def _grouped(src: np.ndarray, dst: np.ndarray, nv: int) -> list[list[int]]:
    """src values grouped per dst value, original order preserved inside."""
    counts = np.bincount(dst, minlength=nv)
    order = np.argsort(dst, kind="stable")
    return [g.tolist() for g in np.split(src[order], np.cumsum(counts)[:-1])]


def _mult_matrix(src: np.ndarray, dst: np.ndarray, nv: int) -> np.ndarray:
    mult = np.zeros((nv, nv), dtype=np.int64)
    np.add.at(mult, (src, dst), 1)
    np.add.at(mult, (dst, src), 1)
    return mult


class NaiveGraph:
    """Adjacency lists + matrix for a scaffold-tree + leftover-string graph."""

    def __init__(self, m: int, n: int, tree_parents, nontree):
        self.m = m
        self.n = n
        par = np.asarray(tree_parents, dtype=np.int64)
        rest = np.asarray(nontree, dtype=np.int64).reshape(n, max(m - 1, 0))
        nv = n + 1
        rows = np.column_stack([par[1:, None], rest]) if n else np.zeros((0, m), np.int64)
        self.out_lists: list[list[int]] = [[]] + [r.tolist() for r in rows]
        # in-lists: tree children (ascending) first, then string occurrences
        # in position order — same order the compressed form reports
        kid_groups = _grouped(np.arange(1, nv), par[1:], nv)
        s_groups = _grouped(np.repeat(np.arange(1, nv), rest.shape[1]),
                            rest.ravel(), nv)
        self.in_lists = [kg + sg for kg, sg in zip(kid_groups, s_groups)]
        self.mult = _mult_matrix(np.repeat(np.arange(1, nv), m), rows.ravel(), nv)
        self.matrix = self.mult > 0

    def degree_in(self, v: int) -> int:
        return len(self.in_lists[v])

    def degree_out(self, v: int) -> int:
        return len(self.out_lists[v])

    def adjacent(self, u: int, v: int) -> bool:
        return bool(self.matrix[u, v]) and u != v


def naive_from_dag(d: Dag) -> NaiveGraph:
    """Reference for ``LabelledGraph``: the identity scaffold is vertex 0...
    not a tree at all — every block stays whole."""
    g = NaiveGraph.__new__(NaiveGraph)
    g.m, g.n = d.m, d.n
    nv = d.n + 1
    g.out_lists = [[]] + [row.tolist() for row in d.targets]
    src = np.repeat(np.arange(1, nv), d.m)
    g.in_lists = _grouped(src, d.targets.ravel(), nv)
    g.mult = _mult_matrix(src, d.targets.ravel(), nv)
    g.matrix = g.mult > 0
    return g


def admissible_orders(d: Dag):
    """All vertex arrival orders consistent with the dag's edges.

    Yields permutations tau (tuple, tau[k] = vertex arriving k-th) with
    tau[0] = 0 and every target of a vertex arriving before it.
    """
    nv = d.n + 1
    for tail in permutations(range(1, nv)):
        tau = (0,) + tail
        place = {v: k for k, v in enumerate(tau)}
        ok = all(
            place[int(t)] < place[v]
            for v in range(1, nv)
            for t in d.targets[v - 1]
        )
        if ok:
            yield tau


def random_mout_dag(n: int, m: int, rng) -> Dag:
    """Uniform random m-out dag (NOT preferential attachment): each vertex
    picks m targets uniformly among its predecessors.  Useful as a negative
    control in statistics tests."""
    targets = np.zeros((n, m), dtype=np.int64)
    for t in range(2, n + 1):
        targets[t - 1] = rng.integers(0, t, size=m)
    return Dag(m, targets)
