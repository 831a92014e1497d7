"""Turning an attachment history into a scaffold tree plus a reduced string.

Every vertex after the seed keeps exactly one of its targets as a tree
parent — the target whose symbol is rarest overall — and sheds the rest
into a flat string.  Deleting the rarest symbol from each block can only
flatten the symbol distribution, so the leftover string compresses at
least as well per character as the full target string.

``peel`` inverts generation: it recovers the unique attachment history of
an undirected multigraph, when one exists.
"""

from __future__ import annotations

import heapq
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .graph_model import Dag, ModelError, UndirectedMultigraph, adjacency_string, in_degrees

_FAR = np.iinfo(np.int64).max


def freq_rank(d: Dag, tie: str | np.ndarray = "index") -> np.ndarray:
    """Rank all vertices by ascending in-degree; ``rank[v]`` is v's rank.

    Rarely-targeted vertices get small ranks.  Ties are broken by vertex
    index ("index", default), by first appearance among the targets
    ("first-target", vertices never targeted last), or by an explicit
    permutation of 0..n passed as an array.
    """
    nv = d.n_vertices
    if isinstance(tie, str):
        indeg = in_degrees(d)
        idx = np.arange(nv, dtype=np.int64)
        if tie == "index":
            order = np.lexsort((idx, indeg))
        elif tie == "first-target":
            a = adjacency_string(d)
            first = np.full(nv, _FAR, dtype=np.int64)
            if a.size:
                np.minimum.at(first, a, np.arange(a.size, dtype=np.int64))
            order = np.lexsort((idx, first, indeg))
        else:
            raise ValueError(f"unknown tie-break {tie!r}")
    else:
        order = np.asarray(tie, dtype=np.int64)
        if order.shape != (nv,) or not np.array_equal(np.sort(order), np.arange(nv)):
            raise ValueError("explicit rank order must be a permutation of the vertices")
    rank = np.empty(nv, dtype=np.int64)
    rank[order] = np.arange(nv, dtype=np.int64)
    return rank


@dataclass
class BuildResult:
    """Scaffold tree + leftover target string, in both labellings."""

    m: int
    n: int
    sigma: np.ndarray            # vertex -> frequency rank
    parents: np.ndarray          # original labels; parents[0] == -1
    relabel: np.ndarray          # original label -> preorder label
    inverse: np.ndarray          # preorder label -> original label
    tree_parents: np.ndarray     # preorder labels; parent[j] < j
    nontree: np.ndarray          # leftover targets, preorder labels, len n*(m-1)
    nontree_orig: np.ndarray     # same deletions, original labels and block order


def build(d: Dag, tie: str | np.ndarray = "index") -> BuildResult:
    """Split an attachment history into tree parents and leftover targets."""
    sigma = freq_rank(d, tie)
    n, m = d.n, d.m
    nv = d.n_vertices
    parents = np.full(nv, -1, dtype=np.int64)
    if n:
        keyed = sigma[d.targets]                 # (n, m) ranks
        drop = np.argmin(keyed, axis=1)          # first occurrence of the rarest
        parents[1:] = d.targets[np.arange(n), drop]
        keep = np.ones((n, m), dtype=bool)
        keep[np.arange(n), drop] = False
        nontree_orig = d.targets[keep].reshape(n, m - 1)
    else:
        nontree_orig = np.zeros((0, max(m - 1, 0)), dtype=np.int64)

    # preorder relabelling, children visited in ascending original order
    children: list[list[int]] = [[] for _ in range(nv)]
    for v in range(1, nv):
        children[parents[v]].append(v)
    relabel = np.empty(nv, dtype=np.int64)
    inverse = np.empty(nv, dtype=np.int64)
    stack = [0]
    nxt = 0
    while stack:
        v = stack.pop()
        relabel[v] = nxt
        inverse[nxt] = v
        nxt += 1
        stack.extend(reversed(children[v]))
    assert nxt == nv

    tree_parents = np.full(nv, -1, dtype=np.int64)
    if n:
        tree_parents[1:] = relabel[parents[inverse[1:]]]
        nontree = relabel[nontree_orig[inverse[1:] - 1]].reshape(-1)
    else:
        nontree = np.zeros(0, dtype=np.int64)
    return BuildResult(
        m=m,
        n=n,
        sigma=sigma,
        parents=parents,
        relabel=relabel,
        inverse=inverse,
        tree_parents=tree_parents,
        nontree=nontree,
        nontree_orig=nontree_orig.reshape(-1),
    )


def peel(g: UndirectedMultigraph, m: int) -> Dag:
    """Recover the attachment history that generated ``g``.

    Peels vertices whose residual degree is exactly ``m`` (lowest index
    first); each peeled vertex's residual edges are its target block.  A
    vertex is peelable only once all of its in-neighbours are gone, so
    the recovered blocks do not depend on the peel order.
    """
    if m < 1:
        raise ModelError("need m >= 1")
    nv = g.n_vertices
    if nv == 0:
        raise ModelError("graph has no vertices")
    deg = np.array(g.degrees(), dtype=np.int64)
    blocks = np.zeros((nv - 1, m), dtype=np.int64)
    alive = np.ones(nv, dtype=bool)
    ready = [v for v in range(1, nv) if deg[v] == m]
    heapq.heapify(ready)
    peeled = 0
    while ready:
        v = heapq.heappop(ready)
        if not alive[v] or deg[v] != m:
            continue
        tgt: list[int] = []
        for u, c in g.adj[v].items():
            if alive[u]:
                tgt.extend([u] * c)
                deg[u] -= c
                if u != 0 and deg[u] == m:
                    heapq.heappush(ready, u)
        if len(tgt) != m:
            raise ModelError(f"vertex {v} has {len(tgt)} residual edges, expected {m}")
        if max(tgt) >= v:
            raise ModelError(f"vertex {v} still points at a later vertex; not an attachment graph")
        blocks[v - 1] = sorted(tgt)
        alive[v] = False
        deg[v] = 0
        peeled += 1
    if peeled != nv - 1:
        raise ModelError("peeling stalled: graph was not grown by preferential attachment")
    if deg[0] != 0:
        raise ModelError("seed vertex kept edges after peeling")
    return Dag(m, blocks)


def peel_relabel(g: UndirectedMultigraph, m: int,
                 rng: np.random.Generator | None = None) -> tuple[Dag, np.ndarray]:
    """Recover *an* attachment history of an arbitrarily-labelled multigraph.

    Unlike :func:`peel`, the vertex labels need not equal arrival order.
    Vertices of residual degree ``m`` are removed until only the seed pair
    remains; removal order, reversed, is an arrival order consistent with
    the graph.  Ties go to the lowest label, or to a uniform pick when
    ``rng`` is given (used by :func:`peel_ambiguity`).

    Returns ``(dag, order)`` where ``order[k]`` is the original label of
    the vertex arriving k-th.  When several arrival orders exist, they all
    assign the instance the same probability as long as no block beyond
    the seed's repeats a target.
    """
    if m < 1:
        raise ModelError("need m >= 1")
    nv = g.n_vertices
    if nv == 0:
        raise ModelError("graph has no vertices")
    if nv == 1:
        return Dag(m, np.zeros((0, m), dtype=np.int64)), np.zeros(1, dtype=np.int64)
    deg = np.array(g.degrees(), dtype=np.int64)
    alive = np.ones(nv, dtype=bool)
    removed: list[int] = []
    raw_blocks: list[list[int]] = []
    ready = [v for v in range(nv) if deg[v] == m]
    heapq.heapify(ready)
    while len(removed) < nv - 2:
        v = -1
        if rng is None:
            while ready:
                w = heapq.heappop(ready)
                if alive[w] and deg[w] == m:
                    v = w
                    break
        else:
            pool = [w for w in range(nv) if alive[w] and deg[w] == m]
            if pool:
                v = int(pool[rng.integers(0, len(pool))])
        if v < 0:
            raise ModelError("peeling stalled: graph was not grown by preferential attachment")
        tgt: list[int] = []
        for u, c in g.adj[v].items():
            if alive[u]:
                tgt.extend([u] * c)
                deg[u] -= c
                if rng is None and deg[u] == m:
                    heapq.heappush(ready, u)
        if len(tgt) != m:
            raise ModelError(f"vertex {v} has {len(tgt)} residual edges, expected {m}")
        alive[v] = False
        deg[v] = 0
        removed.append(v)
        raw_blocks.append(tgt)
    pair = np.flatnonzero(alive)
    u0, u1 = int(pair[0]), int(pair[1])
    if deg[u0] != m or deg[u1] != m or g.adj[u0].get(u1, 0) < m:
        raise ModelError("peeling left no m-fold seed pair; not an attachment graph")
    order = np.array([u0, u1] + removed[::-1], dtype=np.int64)
    place = np.empty(nv, dtype=np.int64)
    place[order] = np.arange(nv)
    blocks = np.zeros((nv - 1, m), dtype=np.int64)
    for v, tgt in zip(removed, raw_blocks):
        blocks[place[v] - 1] = sorted(place[t] for t in tgt)
    return Dag(m, blocks), order


def peel_ambiguity(g: UndirectedMultigraph, m: int, trials: int = 8,
                   seed: int = 0) -> dict:
    """Diagnostic: do randomized re-peels all recover the same history?

    Re-runs :func:`peel_relabel` with random choices among the eligible
    vertices and counts distinct recovered block matrices.  More than one
    variant means the arrival order is not determined by the graph alone
    (every variant is still an equally likely history when no block beyond
    the seed's repeats a target).
    """
    base, _ = peel_relabel(g, m)
    seen = {base.targets.tobytes()}
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        d, _ = peel_relabel(g, m, rng=rng)
        seen.add(d.targets.tobytes())
    return {"ambiguous": len(seen) > 1, "variants": len(seen), "trials": trials}


@dataclass
class LfcResult:
    """Outcome of the step-by-step string reduction."""

    reduced: object                  # same type as the input string
    sigma: dict                      # symbol -> 0-based frequency rank
    flag_order: list[int]            # 1-based block indices, in step order
    selected_indices: list[int]      # 1-based position in S chosen each step
    deleted: list                    # symbol removed from each block (block order)
    trace: list | None = field(default=None, repr=False)


def reduce_string(s, block_size: int, want_trace: bool = False) -> LfcResult:
    """Delete from each block its leftmost letter in the sorted string S.

    S lists the symbols of ``s`` by ascending frequency.  Each step takes
    the leftmost surviving letter of S, flags the first unflagged block
    containing it, crosses out one S-occurrence of every letter of that
    block, and deletes the chosen letter's first occurrence inside the
    block.  The concatenated survivors form the reduced string.
    """
    if block_size < 1:
        raise ValueError("block size must be positive")
    seq = list(s)
    if len(seq) % block_size:
        raise ValueError(f"length {len(seq)} is not a multiple of block size {block_size}")
    n = len(seq) // block_size
    blocks = [seq[i * block_size : (i + 1) * block_size] for i in range(n)]

    counts = Counter(seq)
    order = sorted(counts, key=lambda x: (counts[x], x))
    sigma = {sym: r for r, sym in enumerate(order)}
    start = {}
    acc = 0
    for sym in order:
        start[sym] = acc
        acc += counts[sym]

    holding: dict = {sym: [] for sym in order}      # blocks that contain sym
    for j, blk in enumerate(blocks):
        for sym in dict.fromkeys(blk):
            holding[sym].append(j)
    hold_ptr = {sym: 0 for sym in order}

    consumed = {sym: 0 for sym in order}            # leading lambdas per S-region
    flagged = [False] * n
    deleted_pos = [-1] * n
    flag_order: list[int] = []
    selected: list[int] = []
    trace: list[dict] | None = [] if want_trace else None

    rank_ptr = 0
    for _step in range(n):
        while consumed[order[rank_ptr]] == counts[order[rank_ptr]]:
            rank_ptr += 1
        c = order[rank_ptr]
        k = start[c] + consumed[c] + 1              # 1-based position in S
        lst = holding[c]
        p = hold_ptr[c]
        while p < len(lst) and flagged[lst[p]]:
            p += 1
        hold_ptr[c] = p
        if p == len(lst):
            raise RuntimeError("no unflagged block holds the selected symbol")
        j = lst[p]
        flagged[j] = True
        for sym in blocks[j]:
            consumed[sym] += 1
            if consumed[sym] > counts[sym]:
                raise RuntimeError("crossed out more occurrences than exist")
        deleted_pos[j] = blocks[j].index(c)
        flag_order.append(j + 1)
        selected.append(k)
        if trace is not None:
            after = tuple(
                None if i == deleted_pos[j] else x for i, x in enumerate(blocks[j])
            )
            trace.append(
                {"step": _step + 1, "symbol": c, "s_index": k, "block": j + 1, "after": after}
            )

    out = [x for j, blk in enumerate(blocks) for i, x in enumerate(blk) if i != deleted_pos[j]]
    reduced = "".join(out) if isinstance(s, str) else out
    deleted = [blocks[j][deleted_pos[j]] for j in range(n)]
    return LfcResult(
        reduced=reduced,
        sigma=sigma,
        flag_order=flag_order,
        selected_indices=selected,
        deleted=deleted,
        trace=trace,
    )
