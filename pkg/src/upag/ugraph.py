"""Compressed attachment graphs with navigational queries.

Two representations share one query vocabulary:

``CompressedGraph``
    The label-free form.  Vertices are renamed to preorder positions of
    the scaffold tree, the tree costs two bits per vertex, and the
    remaining targets sit in an entropy-compressed wavelet tree.  Asking
    for neighbours never decompresses anything.

``LabelledGraph``
    Keeps original vertex names and stores the full target string in a
    wavelet tree.  Costs the label entropy on top of the structure.

Vertex 0 is the seed: out-degree 0, with every other vertex sending it
at least the edges of the first attachment step.
"""

from __future__ import annotations

import numpy as np

from .bptree import BPTree
from .construct import BuildResult, build
from .entropy import h0_bits, worstcase_budget_bits
from .errors import OutOfRangeError
from .graph_model import Dag
from .wavelet import WaveletTree


class CompressedGraph:
    """Preorder-relabelled attachment graph: scaffold tree + leftover targets."""

    def __init__(self, m: int, n: int, tree: BPTree, targets: WaveletTree):
        if tree.n_nodes != n + 1:
            raise ValueError("tree size disagrees with vertex count")
        if targets.length != n * max(m - 1, 0) or targets.sigma != n + 1:
            raise ValueError("target string shape disagrees with (m, n)")
        self.m = m
        self.n = n
        self.tree = tree
        self.targets = targets

    @classmethod
    def from_build(cls, built: BuildResult, mode: str = "rrr") -> "CompressedGraph":
        tree = BPTree(built.tree_parents)
        wt = WaveletTree(built.nontree, sigma=built.n + 1, mode=mode)
        return cls(built.m, built.n, tree, wt)

    @classmethod
    def from_dag(cls, d: Dag, tie="index", mode: str = "rrr") -> "CompressedGraph":
        return cls.from_build(build(d, tie), mode=mode)

    # ---- helpers -----------------------------------------------------------

    @property
    def n_vertices(self) -> int:
        return self.n + 1

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v <= self.n:
            raise OutOfRangeError(f"vertex must lie in 0..{self.n}")

    def _slice(self, v: int) -> tuple[int, int]:
        w = self.m - 1
        return (v - 1) * w, v * w

    # ---- out side ----------------------------------------------------------

    def degree_out(self, v: int) -> int:
        self._check_vertex(v)
        return 0 if v == 0 else self.m

    def out_neighbour(self, v: int, i: int) -> int:
        """i-th outgoing edge of v (1-based); edge 1 is the tree parent."""
        self._check_vertex(v)
        if v == 0 or not 1 <= i <= self.m:
            raise OutOfRangeError(f"vertex {v} has {self.degree_out(v)} outgoing edges")
        if i == 1:
            return self.tree.parent(v)
        lo, _ = self._slice(v)
        return self.targets.access(lo + i - 1)  # 1-based access

    def neighbours_out(self, v: int) -> list[int]:
        self._check_vertex(v)
        if v == 0:
            return []
        lo, hi = self._slice(v)
        rest = [self.targets.access(p) for p in range(lo + 1, hi + 1)]
        return [self.tree.parent(v)] + rest

    # ---- in side -----------------------------------------------------------

    def degree_in(self, v: int) -> int:
        self._check_vertex(v)
        return self.tree.tree_degree(v) + self.targets.occ(v)

    def in_neighbour(self, v: int, i: int) -> int:
        """i-th incoming edge: tree children first, then string occurrences."""
        self._check_vertex(v)
        kids = self.tree.children(v)
        if i >= 1 and i <= len(kids):
            return kids[i - 1]
        j = i - len(kids)
        if i < 1 or j > self.targets.occ(v):
            raise OutOfRangeError(f"vertex {v} has in-degree {self.degree_in(v)}")
        pos = self.targets.select(v, j)            # 1-based position
        return (pos - 1) // (self.m - 1) + 1

    def neighbours_in(self, v: int) -> list[int]:
        self._check_vertex(v)
        kids = self.tree.children(v)
        occ = self.targets.occ(v)
        if occ == 0:
            return kids
        pos = self.targets.select_batch(np.full(occ, v), np.arange(1, occ + 1))
        src = (pos - 1) // (self.m - 1) + 1
        return kids + src.astype(np.int64).tolist()

    def degree_total(self, v: int) -> int:
        return self.degree_in(v) + self.degree_out(v)

    # ---- adjacency ---------------------------------------------------------

    def _in_block(self, v: int, sym: int) -> bool:
        if v == 0 or self.m == 1:
            return False
        lo, hi = self._slice(v)
        return self.targets.rank(sym, hi) > self.targets.rank(sym, lo)

    def adjacent(self, u: int, v: int) -> bool:
        """True when at least one edge joins u and v."""
        self._check_vertex(u)
        self._check_vertex(v)
        if u == v:
            return False
        if u and self.tree.parent(u) == v:
            return True
        if v and self.tree.parent(v) == u:
            return True
        return self._in_block(u, v) or self._in_block(v, u)

    def multiplicity(self, u: int, v: int) -> int:
        """Number of parallel edges joining u and v."""
        self._check_vertex(u)
        self._check_vertex(v)
        if u == v:
            return 0
        cnt = 0
        if u and self.tree.parent(u) == v:
            cnt += 1
        if v and self.tree.parent(v) == u:
            cnt += 1
        for a, b in ((u, v), (v, u)):
            if a and self.m > 1:
                lo, hi = self._slice(a)
                cnt += self.targets.rank(b, hi) - self.targets.rank(b, lo)
        return cnt

    # ---- batch wrappers ----------------------------------------------------

    def degree_in_batch(self, vs) -> np.ndarray:
        arr = np.asarray(vs, dtype=np.int64)
        if arr.size and (arr.min() < 0 or arr.max() > self.n):
            raise OutOfRangeError("vertex out of range")
        occ = self.targets.rank_batch(arr, np.full(arr.size, self.targets.length))
        kids = self.tree.degree_batch(arr)
        return kids + occ

    def out_neighbour_batch(self, vs, idx) -> np.ndarray:
        arr = np.asarray(vs, dtype=np.int64)
        ii = np.asarray(idx, dtype=np.int64)
        if arr.shape != ii.shape:
            raise ValueError("vertex and index arrays must match")
        if arr.size == 0:
            return np.zeros(0, dtype=np.int64)
        if arr.min() < 1 or arr.max() > self.n or ii.min() < 1 or ii.max() > self.m:
            raise OutOfRangeError("query out of range")
        out = np.empty(arr.size, dtype=np.int64)
        first = ii == 1
        if first.any():
            out[first] = self.tree.parent_batch(arr[first])
        rest = ~first
        if rest.any():
            w = self.m - 1
            pos = (arr[rest] - 1) * w + ii[rest] - 1  # 1-based into targets
            out[rest] = self.targets.access_batch(pos)
        return out

    def in_neighbour_batch(self, vs, idx) -> np.ndarray:
        """Vectorised ``in_neighbour``: tree children first, then string hits.

        Children lists are fetched once per distinct queried vertex; the
        string lanes go through one batched select.
        """
        arr = np.asarray(vs, dtype=np.int64)
        ii = np.asarray(idx, dtype=np.int64)
        if arr.shape != ii.shape:
            raise ValueError("vertex and index arrays must match")
        if arr.size == 0:
            return np.zeros(0, dtype=np.int64)
        if arr.min() < 0 or arr.max() > self.n or ii.min() < 1:
            raise OutOfRangeError("query out of range")
        uniq, inv = np.unique(arr, return_inverse=True)
        out = np.empty(arr.size, dtype=np.int64)
        if uniq.size > max(self.tree.n_nodes // 8, 32):
            counts, starts, grouped = self.tree.child_layout()
            dt = counts[arr]
            from_tree = ii <= dt
            ft = np.flatnonzero(from_tree)
            out[ft] = grouped[starts[arr[ft]] + ii[ft] - 1]
        else:
            kids = [self.tree.children(int(v)) for v in uniq]
            dt = np.array([len(k) for k in kids], dtype=np.int64)[inv]
            from_tree = ii <= dt
            for k in np.flatnonzero(from_tree):
                out[k] = kids[inv[k]][ii[k] - 1]
        rest = ~from_tree
        if rest.any():
            j = ii[rest] - dt[rest]
            occ = self.targets.rank_batch(
                arr[rest], np.full(int(rest.sum()), self.targets.length)
            )
            if (j > occ).any():
                raise OutOfRangeError("in-edge index beyond in-degree")
            pos = self.targets.select_batch(arr[rest], j)
            out[rest] = (pos - 1) // (self.m - 1) + 1
        return out

    def _block_counts(self, owners: np.ndarray, syms: np.ndarray) -> np.ndarray:
        """How often ``syms[k]`` occurs in the block of vertex ``owners[k]``."""
        cnt = np.zeros(owners.size, dtype=np.int64)
        live = owners >= 1
        if self.m == 1 or not live.any():
            return cnt
        w = self.m - 1
        lo = (owners[live] - 1) * w
        s = syms[live]
        hi_rank = self.targets.rank_batch(s, lo + w)
        lo_rank = self.targets.rank_batch(s, lo)
        cnt[live] = hi_rank - lo_rank
        return cnt

    def multiplicity_batch(self, us, vs) -> np.ndarray:
        ua = np.asarray(us, dtype=np.int64)
        va = np.asarray(vs, dtype=np.int64)
        if ua.shape != va.shape:
            raise ValueError("vertex arrays must match")
        if ua.size == 0:
            return np.zeros(0, dtype=np.int64)
        if min(ua.min(), va.min()) < 0 or max(ua.max(), va.max()) > self.n:
            raise OutOfRangeError("vertex out of range")
        pu = np.full(ua.size, -1, dtype=np.int64)
        pv = np.full(va.size, -1, dtype=np.int64)
        if (ua >= 1).any():
            pu[ua >= 1] = self.tree.parent_batch(ua[ua >= 1])
        if (va >= 1).any():
            pv[va >= 1] = self.tree.parent_batch(va[va >= 1])
        cnt = (
            (pu == va).astype(np.int64)
            + (pv == ua).astype(np.int64)
            + self._block_counts(ua, va)
            + self._block_counts(va, ua)
        )
        cnt[ua == va] = 0
        return cnt

    def adjacent_batch(self, us, vs) -> np.ndarray:
        return self.multiplicity_batch(us, vs) > 0

    # ---- accounting ---------------------------------------------------------

    def target_entropy_bits(self) -> float:
        """H0 of the stored non-tree target string, from occurrence counts."""
        if self.targets.length == 0:
            return 0.0
        counts = self.targets.symbol_counts()
        return h0_bits(counts)

    def space_report(self) -> dict:
        t = self.tree.space_report()
        w = self.targets.space_report()
        payload = t["payload_bits"] + w["payload_bits"]
        directory = t["directory_bits"] + w["directory_bits"]
        metadata = w["presence_bits"]
        return {
            "n": self.n,
            "m": self.m,
            "tree_payload_bits": t["payload_bits"],
            "tree_directory_bits": t["directory_bits"],
            "wt_payload_bits": w["payload_bits"],
            "wt_directory_bits": w["directory_bits"],
            "sigma_eff": w["sigma_eff"],
            "payload_bits": payload,
            "directory_bits": directory,
            "metadata_bits": metadata,
            "total_bits": payload + directory + metadata,
            "entropy_bound_bits": self.target_entropy_bits() + 2 * w["sigma_eff"],
            "worstcase_budget_bits": worstcase_budget_bits(self.n, self.m),
        }


class LabelledGraph:
    """Attachment graph that keeps vertex names: one wavelet tree, no scaffold."""

    def __init__(self, m: int, n: int, targets: WaveletTree):
        if targets.length != n * m or targets.sigma != n + 1:
            raise ValueError("target string shape disagrees with (m, n)")
        self.m = m
        self.n = n
        self.targets = targets

    @classmethod
    def from_dag(cls, d: Dag, mode: str = "rrr") -> "LabelledGraph":
        from .graph_model import adjacency_string

        wt = WaveletTree(adjacency_string(d), sigma=d.n + 1, mode=mode)
        return cls(d.m, d.n, wt)

    @property
    def n_vertices(self) -> int:
        return self.n + 1

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v <= self.n:
            raise OutOfRangeError(f"vertex must lie in 0..{self.n}")

    def degree_out(self, v: int) -> int:
        self._check_vertex(v)
        return 0 if v == 0 else self.m

    def out_neighbour(self, v: int, i: int) -> int:
        self._check_vertex(v)
        if v == 0 or not 1 <= i <= self.m:
            raise OutOfRangeError(f"vertex {v} has {self.degree_out(v)} outgoing edges")
        return self.targets.access((v - 1) * self.m + i)

    def neighbours_out(self, v: int) -> list[int]:
        self._check_vertex(v)
        if v == 0:
            return []
        return [self.out_neighbour(v, i) for i in range(1, self.m + 1)]

    def degree_in(self, v: int) -> int:
        self._check_vertex(v)
        return self.targets.occ(v)

    def in_neighbour(self, v: int, i: int) -> int:
        self._check_vertex(v)
        if i < 1 or i > self.targets.occ(v):
            raise OutOfRangeError(f"vertex {v} has in-degree {self.degree_in(v)}")
        pos = self.targets.select(v, i)
        return (pos - 1) // self.m + 1

    def neighbours_in(self, v: int) -> list[int]:
        self._check_vertex(v)
        occ = self.targets.occ(v)
        if occ == 0:
            return []
        pos = self.targets.select_batch(np.full(occ, v), np.arange(1, occ + 1))
        return ((pos - 1) // self.m + 1).astype(np.int64).tolist()

    def degree_total(self, v: int) -> int:
        return self.degree_in(v) + self.degree_out(v)

    def adjacent(self, u: int, v: int) -> bool:
        self._check_vertex(u)
        self._check_vertex(v)
        if u == v:
            return False
        for a, b in ((u, v), (v, u)):
            if a:
                lo = (a - 1) * self.m
                if self.targets.rank(b, lo + self.m) > self.targets.rank(b, lo):
                    return True
        return False

    def space_report(self) -> dict:
        w = self.targets.space_report()
        return {
            "n": self.n,
            "m": self.m,
            "wt_payload_bits": w["payload_bits"],
            "wt_directory_bits": w["directory_bits"],
            "sigma_eff": w["sigma_eff"],
            "payload_bits": w["payload_bits"],
            "directory_bits": w["directory_bits"],
            "metadata_bits": w["presence_bits"],
            "total_bits": w["payload_bits"] + w["directory_bits"] + w["presence_bits"],
        }
