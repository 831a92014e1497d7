"""Ordinal tree stored as a balanced-parentheses sequence.

A tree on N nodes costs exactly 2N bits: an open parenthesis at each node's
preorder arrival, a close at its departure.  Node labels ARE preorder ranks,
so the open of node v sits at select1(v+1) and the label of an open at
position p is rank1(p)-1.

Navigation (parent, matching close) walks the excess profile
E(i) = 2*rank1(i) - i.  The walk skips whole 64-bit blocks using a one-byte
relative-minimum per block, and resolves the final block with 256-entry
byte tables, so no query ever inspects bits one at a time for long.
"""

from __future__ import annotations

import numpy as np

from .bitvector import BitVector
from .errors import OutOfRangeError

# ---- byte lookup tables ---------------------------------------------------
# excess contribution of one byte, and the minimum running excess over its
# eight prefixes (entry j covers bits 0..j)
_BYTE_EXC = np.zeros(256, dtype=np.int8)
_BYTE_MINPREF = np.zeros(256, dtype=np.int8)
# _FIRSTREACH[b][d] (d in 1..8): first length j (1..8) whose prefix excess
# equals -d, or 0 when the byte never dips that far
_FIRSTREACH = np.zeros((256, 9), dtype=np.int8)
# _BACKOPEN[b][delta]: largest bit j whose suffix (bits j+1..7) has excess
# delta while bit j is an open; -1 when absent
_BACKOPEN = np.full((256, 17), -1, dtype=np.int8)

for _byte in range(256):
    exc = 0
    mn = 8
    for _j in range(8):
        exc += 1 if (_byte >> _j) & 1 else -1
        mn = min(mn, exc)
        if exc < 0 and _FIRSTREACH[_byte][-exc] == 0:
            _FIRSTREACH[_byte][-exc] = _j + 1
    _BYTE_EXC[_byte] = exc
    _BYTE_MINPREF[_byte] = mn
    suffix = 0
    for _j in range(7, -1, -1):
        if (_byte >> _j) & 1 and 0 <= suffix <= 16:
            if _BACKOPEN[_byte][suffix] < 0:
                _BACKOPEN[_byte][suffix] = _j
        suffix += 1 if (_byte >> _j) & 1 else -1


class BPTree:
    """Succinct ordinal tree; nodes are preorder ranks 0..n_nodes-1."""

    def __init__(self, parents=None, *, _bv: BitVector | None = None):
        if _bv is not None:
            if _bv.mode != "plain" or _bv.n % 2 or _bv.n == 0:
                raise ValueError("parenthesis vector must be plain with even length")
            self._bv = _bv
            self.n_nodes = _bv.n // 2
            self._build_aux()
            self._validate_shape()
            return
        par = np.asarray(parents, dtype=np.int64)
        if par.ndim != 1 or par.size == 0:
            raise ValueError("need a non-empty parent array")
        if par[0] != -1 or (par.size > 1 and not np.all(par[1:] < np.arange(1, par.size))):
            raise ValueError("parents must be preorder-consistent: parent[v] < v, root first")
        n = par.size
        children: list[list[int]] = [[] for _ in range(n)]
        for v in range(1, n):
            children[par[v]].append(v)  # ascending because v is ascending
        bits = np.zeros(2 * n, dtype=np.uint8)
        stack: list[tuple[int, int]] = [(0, 0)]
        bits[0] = 1
        pos = 1
        visit_check = 0
        while stack:
            v, ci = stack[-1]
            if ci == 0:
                if v != visit_check:
                    raise ValueError("parent array is not in preorder")
                visit_check += 1
            if ci < len(children[v]):
                stack[-1] = (v, ci + 1)
                bits[pos] = 1
                pos += 1
                stack.append((children[v][ci], 0))
            else:
                pos += 1  # close parenthesis is already 0
                stack.pop()
        assert pos == 2 * n
        self._bv = BitVector(bits, mode="plain")
        self.n_nodes = n
        self._build_aux()

    def _build_aux(self) -> None:
        """Per-block excess summaries derived from the raw words."""
        words = self._bv._words
        nb = words.size
        self._nblocks = nb
        if nb == 0:
            self._relmin = np.zeros(0, dtype=np.int8)
            self._blockexc = np.zeros(0, dtype=np.int64)
            return
        lanes = (words[:, None] >> (np.uint64(8) * np.arange(8, dtype=np.uint64))[None, :])
        lanes = (lanes & np.uint64(0xFF)).astype(np.int64)
        exc = _BYTE_EXC[lanes].astype(np.int64)
        # padding bits beyond n read as closes inside _BYTE_EXC; correct the
        # final block so running excesses stay exact
        cum = np.cumsum(exc, axis=1)
        before = np.concatenate([np.zeros((nb, 1), np.int64), cum[:, :-1]], axis=1)
        self._relmin = (before + _BYTE_MINPREF[lanes]).min(axis=1).astype(np.int8)
        blockexc = cum[:, -1]
        tail = self._bv.n - 64 * (nb - 1)
        if tail < 64:
            blockexc = blockexc.copy()
            blockexc[-1] += 64 - tail  # undo the phantom closes
        self._blockexc = blockexc

    def _validate_shape(self) -> None:
        if self._bv.ones != self._bv.n // 2:
            raise ValueError("parenthesis sequence is unbalanced")
        if self._bv.n and self._bv.access(1) != 1:
            raise ValueError("sequence must start with an open parenthesis")

    # ---- low-level position machinery (0-based bit positions) -------------

    def _excess(self, count: int) -> int:
        """E(count) = opens - closes among the first ``count`` bits."""
        return 2 * self._bv.rank1(count) - count

    def _bit(self, pos: int) -> int:
        w = int(self._bv._words[pos >> 6])
        return (w >> (pos & 63)) & 1

    def _scan_forward(self, start: int, e_start: int, target: int) -> int:
        """Smallest q >= start with E(q+1) == target; e_start = E(start)."""
        n = self._bv.n
        words = self._bv._words
        pos = start
        e = e_start
        # finish the current byte bit by bit
        while pos < n and (pos & 7):
            e += 1 if self._bit(pos) else -1
            if e == target:
                return pos
            pos += 1
        # byte steps to the end of the current block, then block hops
        while pos < n:
            if (pos & 63) == 0:
                b = pos >> 6
                blen = min(64, n - pos)
                if blen == 64 and e + int(self._relmin[b]) > target:
                    e += int(self._blockexc[b])
                    pos += 64
                    continue
            byte = (int(words[pos >> 6]) >> (pos & 56)) & 0xFF
            blen = min(8, n - pos)
            if blen == 8:
                d = e - target
                if 1 <= d <= 8:
                    j = int(_FIRSTREACH[byte][d])
                    if j:
                        return pos + j - 1
                e += int(_BYTE_EXC[byte])
                pos += 8
            else:
                for j in range(blen):
                    e += 1 if (byte >> j) & 1 else -1
                    if e == target:
                        return pos + j
                pos += blen
        raise OutOfRangeError("forward excess scan ran off the sequence")

    def _scan_back_open(self, start: int, e_start: int, target: int) -> int:
        """Largest q < start with E(q+1) == target and an open at q.

        e_start = E(start); the caller guarantees the position exists.
        """
        words = self._bv._words
        pos = start  # exclusive frontier
        e = e_start
        while pos > 0 and (pos & 7):
            pos -= 1
            bit = self._bit(pos)
            if e == target and bit:
                return pos
            e -= 1 if bit else -1
        while pos > 0:
            if (pos & 63) == 0:
                b = (pos >> 6) - 1
                e_enter = e - int(self._blockexc[b])
                if e_enter + int(self._relmin[b]) > target:
                    e = e_enter
                    pos -= 64
                    continue
            byte = (int(words[(pos - 1) >> 6]) >> ((pos - 8) & 56)) & 0xFF
            delta = e - target
            if 0 <= delta <= 16:
                j = int(_BACKOPEN[byte][delta])
                if j >= 0:
                    return pos - 8 + j
            e -= int(_BYTE_EXC[byte])
            pos -= 8
        raise OutOfRangeError("backward excess scan ran off the sequence")

    def _scan_back_open_batch(self, start: np.ndarray, e_start: np.ndarray,
                              target: np.ndarray) -> np.ndarray:
        """Vectorised ``_scan_back_open``: every lane takes one bit, byte, or
        block step per round; resolved lanes drop out of the round."""
        words = self._bv._words
        relmin = self._relmin.astype(np.int64)
        blockexc = self._blockexc
        pos = np.asarray(start, dtype=np.int64).copy()
        e = np.asarray(e_start, dtype=np.int64).copy()
        tgt = np.asarray(target, dtype=np.int64).copy()
        out = np.full(pos.shape, -1, dtype=np.int64)
        live = np.arange(pos.size)
        # every round moves each live lane >= 8 bits once byte-aligned
        rounds = self._bv.n // 8 + 72
        for _ in range(rounds):
            if live.size == 0:
                return out
            p = pos[live]
            el = e[live]
            tl = tgt[live]
            if (p <= 0).any():
                raise OutOfRangeError("backward excess scan ran off the sequence")
            act_bit = (p & 7) != 0
            at_blk = ~act_bit & ((p & 63) == 0)
            b = np.where(at_blk, (p >> 6) - 1, 0)
            e_enter = el - blockexc[b]
            can_hop = at_blk & ((e_enter + relmin[b]) > tl)
            act_byte = ~act_bit & ~can_hop
            new_p = p.copy()
            new_e = el.copy()
            resolved = np.zeros(live.size, dtype=bool)
            res_pos = np.zeros(live.size, dtype=np.int64)
            if act_bit.any():
                pm = p - 1
                bit = ((words[pm >> 6] >> (pm & 63).astype(np.uint64))
                       & np.uint64(1)).astype(np.int64)
                hit = act_bit & (el == tl) & (bit == 1)
                resolved |= hit
                res_pos = np.where(hit, pm, res_pos)
                step = act_bit & ~hit
                new_e = np.where(step, el - np.where(bit == 1, 1, -1), new_e)
                new_p = np.where(step, pm, new_p)
            new_e = np.where(can_hop, e_enter, new_e)
            new_p = np.where(can_hop, p - 64, new_p)
            if act_byte.any():
                sh = ((p - 8) & 56).astype(np.uint64)
                byte = ((words[np.maximum(p - 1, 0) >> 6] >> sh)
                        & np.uint64(0xFF)).astype(np.int64)
                delta = el - tl
                elig = act_byte & (delta >= 0) & (delta <= 16)
                j = _BACKOPEN[byte, np.clip(delta, 0, 16)].astype(np.int64)
                hit = elig & (j >= 0)
                resolved |= hit
                res_pos = np.where(hit, p - 8 + j, res_pos)
                step = act_byte & ~hit
                new_e = np.where(step, el - _BYTE_EXC[byte], new_e)
                new_p = np.where(step, p - 8, new_p)
            out[live[resolved]] = res_pos[resolved]
            pos[live] = new_p
            e[live] = new_e
            live = live[~resolved]
        if live.size:
            raise OutOfRangeError("backward excess scan did not terminate")
        return out

    # ---- node navigation ---------------------------------------------------

    def _check_node(self, v: int) -> None:
        if not 0 <= v < self.n_nodes:
            raise OutOfRangeError(f"node must lie in 0..{self.n_nodes - 1}")

    def open_pos(self, v: int) -> int:
        """1-based position of v's open parenthesis."""
        self._check_node(v)
        return self._bv.select1(v + 1)

    def close_pos(self, v: int) -> int:
        """1-based position of v's close parenthesis."""
        p1 = self.open_pos(v)
        e_after = self._excess(p1)
        return self._scan_forward(p1, e_after, e_after - 1) + 1

    def subtree_size(self, v: int) -> int:
        return (self.close_pos(v) - self.open_pos(v) + 1) // 2

    def parent(self, v: int) -> int:
        """Parent label, or -1 for the root."""
        self._check_node(v)
        if v == 0:
            return -1
        p1 = self.open_pos(v)
        target = self._excess(p1 - 1)  # parent's post-open excess
        q = self._scan_back_open(p1 - 1, target, target)
        return self._bv.rank1(q + 1) - 1

    def is_leaf(self, v: int) -> bool:
        p1 = self.open_pos(v)
        return p1 == self._bv.n or self._bit(p1) == 0

    def children(self, v: int) -> list[int]:
        """Child labels in increasing order."""
        self._check_node(v)
        out: list[int] = []
        pos = self.open_pos(v)  # 0-based slot right after v's open
        n = self._bv.n
        if pos >= n or self._bit(pos) == 0:
            return out
        e = self._excess(pos)  # stays "excess before next child" across hops
        child = v + 1          # preorder: first child is the next label
        while pos < n and self._bit(pos) == 1:
            out.append(child)
            close = self._scan_forward(pos + 1, e + 1, e)  # matching close
            child += (close - pos + 1) // 2
            pos = close + 1
        return out

    def tree_degree(self, v: int) -> int:
        return len(self.children(v))

    def child(self, v: int, i: int) -> int:
        """i-th child (1-based)."""
        kids = self.children(v)
        if not 1 <= i <= len(kids):
            raise OutOfRangeError(f"node {v} has {len(kids)} children")
        return kids[i - 1]

    def parent_batch(self, vs) -> np.ndarray:
        # dedupe first: batch callers (all-pairs adjacency grids) repeat nodes
        arr = np.asarray(vs, dtype=np.int64)
        if arr.size == 0:
            return np.zeros(arr.shape, dtype=np.int64)
        uniq, inv = np.unique(arr, return_inverse=True)
        if uniq[0] < 0 or uniq[-1] >= self.n_nodes:
            raise OutOfRangeError(f"node must lie in 0..{self.n_nodes - 1}")
        per = np.empty(uniq.size, dtype=np.int64)
        nr = uniq > 0
        per[~nr] = -1
        vv = uniq[nr]
        if vv.size and vv.size <= 32:
            per[nr] = [self.parent(int(v)) for v in vv]
        elif vv.size:
            p1 = self._bv.select1_batch(vv + 1)        # 1-based open positions
            tgt = 2 * self._bv.rank1_batch(p1 - 1) - (p1 - 1)
            q = self._scan_back_open_batch(p1 - 1, tgt, tgt)
            per[nr] = self._bv.rank1_batch(q + 1) - 1
        return per[inv].reshape(arr.shape)

    def child_layout(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(tree degree per node, start offsets, children grouped by parent).

        ``grouped[starts[v] : starts[v] + counts[v]]`` lists v's children in
        ascending label order.  One synchronised parent sweep; nothing cached.
        """
        par = self.parent_batch(np.arange(self.n_nodes))
        counts = np.bincount(par[1:], minlength=self.n_nodes)
        starts = np.concatenate([[0], np.cumsum(counts)[:-1]]).astype(np.int64)
        grouped = np.argsort(par[1:], kind="stable") + 1
        return counts, starts, grouped

    def degree_batch(self, vs) -> np.ndarray:
        arr = np.asarray(vs, dtype=np.int64)
        if arr.size == 0:
            return np.zeros(arr.shape, dtype=np.int64)
        uniq, inv = np.unique(arr, return_inverse=True)
        if uniq[0] < 0 or uniq[-1] >= self.n_nodes:
            raise OutOfRangeError(f"node must lie in 0..{self.n_nodes - 1}")
        if uniq.size > max(self.n_nodes // 8, 32):
            counts, _, _ = self.child_layout()
            per = counts[uniq]
        else:
            per = np.array([self.tree_degree(int(v)) for v in uniq], dtype=np.int64)
        return per[inv].reshape(arr.shape)

    def parents_array(self) -> np.ndarray:
        """Parent of every node, recovered by one sweep (testing/debug aid)."""
        out = np.full(self.n_nodes, -1, dtype=np.int64)
        stack: list[int] = []
        label = 0
        for pos in range(self._bv.n):
            if self._bit(pos):
                if stack:
                    out[label] = stack[-1]
                stack.append(label)
                label += 1
            else:
                stack.pop()
        return out

    # ---- serialization and accounting ---------------------------------------

    def to_parts(self) -> dict:
        return {"paren": self._bv.to_parts()}

    @classmethod
    def from_parts(cls, parts: dict) -> "BPTree":
        return cls(_bv=BitVector.from_parts(**parts["paren"]))

    def space_report(self) -> dict:
        bv_rep = self._bv.space_report()
        return {
            "n_nodes": self.n_nodes,
            "payload_bits": 2 * self.n_nodes,
            "directory_bits": bv_rep["directory_bits"] + 8 * self._nblocks,
        }

    def __repr__(self) -> str:
        return f"BPTree(n_nodes={self.n_nodes})"
