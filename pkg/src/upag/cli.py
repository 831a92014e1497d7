"""Command-line surface for the whole pipeline.

Subcommands: ``generate`` samples an instance and writes it as a text edge
list, ``build`` compresses an edge list into a ``.upag`` file, ``query``
answers navigation questions on a compressed file, ``stats`` prints entropy
and space figures, ``selfcheck`` verifies a compressed file against its edge
list with a brute-force oracle, ``bench`` times the query operations, and
``lfc`` runs the string reduction on an explicit input.

Exit codes: 0 success, 1 verification failure, 2 usage or I/O error.  All
regular output is ``key=value`` tokens, one logical record per line.
"""

from __future__ import annotations

import argparse
import re
import sys
import time
from pathlib import Path

import numpy as np

from .construct import build, peel_relabel, reduce_string
from .entropy import bounds_report, h0_per_symbol
from .errors import FormatError, OutOfRangeError
from .graph_model import Dag, ModelError, UndirectedMultigraph
from .oracle import NaiveGraph, naive_from_dag
from .pa_gen import EXACT_CUTOFF, generate, log_prob
from .serialize import load, save
from .ugraph import CompressedGraph, LabelledGraph

HEADER_RE = re.compile(r"^# upag-el v1 M=(\d+) n=(\d+)\s*$")


# ---------------------------------------------------------------------------
# edge-list files
# ---------------------------------------------------------------------------

def write_edge_list(path, d: Dag) -> None:
    """Write an instance as a text edge list in arrival/draw order."""
    lines = [f"# upag-el v1 M={d.m} n={d.n}"]
    for t in range(1, d.n + 1):
        lines.extend(f"{t} {int(v)}" for v in d.targets[t - 1])
    Path(path).write_text("\n".join(lines) + "\n")


def read_edge_list(path) -> tuple[Dag, bool, np.ndarray | None]:
    """Parse an edge-list file.

    Returns ``(dag, inferred, order)``.  When the file's sources run in
    block order and every target predates its source, the arrival order is
    taken from the file directly (``inferred=False``).  Otherwise the edges
    are treated as an undirected multigraph and an arrival order is
    recovered by peeling; ``order[k]`` is then the file label of the vertex
    arriving k-th.
    """
    text = Path(path).read_text()
    lines = text.splitlines()
    if not lines:
        raise ModelError("empty edge-list file")
    head = HEADER_RE.match(lines[0])
    if not head:
        raise ModelError("missing or malformed header (expected '# upag-el v1 M=<M> n=<n>')")
    m, n = int(head.group(1)), int(head.group(2))
    body = [ln.strip() for ln in lines[1:] if ln.strip()]
    if len(body) != n * m:
        raise ModelError(f"expected {n * m} edge lines, found {len(body)}")
    pairs = np.empty((n * m, 2), dtype=np.int64)
    for k, ln in enumerate(body):
        parts = ln.split()
        if len(parts) != 2:
            raise ModelError(f"line {k + 2}: expected 'src dst'")
        try:
            pairs[k, 0] = int(parts[0])
            pairs[k, 1] = int(parts[1])
        except ValueError:
            raise ModelError(f"line {k + 2}: non-integer vertex label") from None
    if n == 0:
        return Dag(m, np.zeros((0, m), dtype=np.int64)), False, None
    if pairs.min() < 0 or pairs.max() > n:
        raise ModelError(f"vertex label out of range 0..{n}")
    src, dst = pairs[:, 0], pairs[:, 1]
    if np.array_equal(src, np.repeat(np.arange(1, n + 1), m)) and bool((dst < src).all()):
        return Dag(m, dst.reshape(n, m).copy()), False, None
    if (src == dst).any():
        raise ModelError("self-loop in edge list")
    g = UndirectedMultigraph(n + 1)
    for u, v in pairs:
        g.add_edge(int(u), int(v))
    d, order = peel_relabel(g, m)
    return d, True, order


def _warn_inferred() -> None:
    print(
        "warning: arrival order inferred from structure; any consistent "
        "order is equally likely for inputs without repeated targets "
        "beyond the seed block",
        file=sys.stderr,
    )


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_generate(args) -> int:
    d = generate(args.m, args.n, seed=args.seed)
    write_edge_list(args.out, d)
    lp = log_prob(d)
    print(f"out={args.out} m={args.m} n={args.n} edges={args.m * args.n}")
    print(f"lg(1/P)={lp.bits:.4f} mode={lp.mode}")
    return 0


def _relabel_pairs(n: int, order: np.ndarray | None, to_stored: np.ndarray | None):
    """(file label, stored label) rows, composing arrival inference and preorder."""
    file_to_arrival = np.arange(n + 1, dtype=np.int64)
    if order is not None:
        file_to_arrival[order] = np.arange(n + 1, dtype=np.int64)
    if to_stored is None:
        return [(w, int(file_to_arrival[w])) for w in range(n + 1)]
    return [(w, int(to_stored[file_to_arrival[w]])) for w in range(n + 1)]


def cmd_build(args) -> int:
    d, inferred, order = read_edge_list(args.infile)
    if inferred:
        _warn_inferred()
    if args.mode == "labelled":
        g = LabelledGraph.from_dag(d)
        pairs = _relabel_pairs(d.n, order, None)
    else:
        built = build(d, tie=args.tie)
        g = CompressedGraph.from_build(built)
        pairs = _relabel_pairs(d.n, order, built.relabel)
    nbytes = save(args.out, g)
    if args.emit_relabel:
        Path(args.emit_relabel).write_text(
            "".join(f"{old} {new}\n" for old, new in pairs)
        )
    rep = g.space_report()
    print(f"out={args.out} bytes={nbytes} mode={args.mode} m={d.m} n={d.n}")
    print(
        f"payload_bits={rep['payload_bits']} directory_bits={rep['directory_bits']} "
        f"metadata_bits={rep['metadata_bits']} total_bits={rep['total_bits']}"
    )
    return 0


def _fmt_list(values) -> str:
    return ",".join(str(int(v)) for v in values)


def cmd_query(args) -> int:
    g = load(args.infile)
    op, rest = args.op, [int(x) for x in args.args]

    def need(k: int) -> None:
        if len(rest) != k:
            raise ModelError(f"operation {op!r} takes {k} argument(s)")

    if op == "outn":
        need(2)
        print(g.out_neighbour(rest[0], rest[1]))
    elif op == "inn":
        need(2)
        print(g.in_neighbour(rest[0], rest[1]))
    elif op == "deg":
        need(1)
        v = rest[0]
        print(f"in={g.degree_in(v)} out={g.degree_out(v)} total={g.degree_total(v)}")
    elif op == "adj":
        need(2)
        print("true" if g.adjacent(rest[0], rest[1]) else "false")
    elif op == "nbrs":
        need(1)
        v = rest[0]
        print(f"out={_fmt_list(g.neighbours_out(v))} in={_fmt_list(g.neighbours_in(v))}")
    else:
        raise ModelError(f"unknown query operation {op!r}")
    return 0


def cmd_stats(args) -> int:
    d, inferred, _ = read_edge_list(args.infile)
    if inferred:
        _warn_inferred()
    rep = bounds_report(d)
    g = CompressedGraph.from_dag(d)
    sp = g.space_report()
    lp_mode = "exact" if d.n <= EXACT_CUTOFF else "float"
    fields = [
        ("m", d.m),
        ("n", d.n),
        ("edges", d.m * d.n),
        ("H_deg", f"{rep['degree_entropy_bits']:.4f}"),
        ("lg(1/P)", f"{rep['surprisal_bits']:.4f}"),
        ("prob_mode", lp_mode),
        ("lg(n!)", f"{rep['label_bits']:.4f}"),
        ("unlabelled_lb", f"{rep['unlabelled_lower_bound_bits']:.4f}"),
        ("entropy_budget", f"{rep['entropy_budget_bits']:.4f}"),
        ("worstcase_budget", f"{rep['worstcase_budget_bits']:.4f}"),
        ("tree_payload_bits", sp["tree_payload_bits"]),
        ("wt_payload_bits", sp["wt_payload_bits"]),
        ("payload_bits", sp["payload_bits"]),
        ("directory_bits", sp["directory_bits"]),
        ("metadata_bits", sp["metadata_bits"]),
        ("total_bits", sp["total_bits"]),
        ("entropy_bound_bits", f"{sp['entropy_bound_bits']:.4f}"),
        ("sigma_eff", sp["sigma_eff"]),
    ]
    if args.csv:
        print(",".join(k for k, _ in fields))
        print(",".join(str(v) for _, v in fields))
    else:
        print(f"m={d.m} n={d.n} edges={d.m * d.n}")
        print(
            f"H_deg={rep['degree_entropy_bits']:.4f} lg(1/P)={rep['surprisal_bits']:.4f} "
            f"prob_mode={lp_mode} lg(n!)={rep['label_bits']:.4f} "
            f"unlabelled_lb={rep['unlabelled_lower_bound_bits']:.4f}"
        )
        print(
            f"entropy_budget={rep['entropy_budget_bits']:.4f} "
            f"worstcase_budget={rep['worstcase_budget_bits']:.4f}"
        )
        print(
            f"tree_payload_bits={sp['tree_payload_bits']} "
            f"wt_payload_bits={sp['wt_payload_bits']} "
            f"payload_bits={sp['payload_bits']} "
            f"directory_bits={sp['directory_bits']} "
            f"metadata_bits={sp['metadata_bits']} total_bits={sp['total_bits']}"
        )
        print(
            f"entropy_bound_bits={sp['entropy_bound_bits']:.4f} sigma_eff={sp['sigma_eff']}"
        )
    return 0


def _selfcheck_compressed(g: CompressedGraph, d: Dag, rng: np.random.Generator, tie: str):
    """Yield (description, got, want) triples; caller stops at first mismatch."""
    built = build(d, tie=tie)
    ref = NaiveGraph(built.m, built.n, built.tree_parents, built.nontree)
    nv = d.n + 1
    if g.m != d.m or g.n != d.n:
        yield ("shape m/n", (g.m, g.n), (d.m, d.n))
        return
    verts = np.arange(nv) if nv <= 2001 else np.sort(rng.choice(nv, 2000, replace=False))
    for v in verts:
        v = int(v)
        yield (f"deg_in v={v}", g.degree_in(v), ref.degree_in(v))
        yield (f"deg_out v={v}", g.degree_out(v), ref.degree_out(v))
        yield (f"nbrs_out v={v}", g.neighbours_out(v), ref.out_lists[v])
        yield (f"nbrs_in v={v}", g.neighbours_in(v), ref.in_lists[v])
    if nv <= 301:
        us, vs = np.meshgrid(np.arange(nv), np.arange(nv), indexing="ij")
        us, vs = us.ravel(), vs.ravel()
    else:
        us = rng.integers(0, nv, 10000)
        vs = rng.integers(0, nv, 10000)
    got = g.adjacent_batch(us, vs)
    want = ref.mult[us, vs] > 0
    bad = np.flatnonzero(got != want)
    if bad.size:
        k = int(bad[0])
        yield (f"adjacent u={int(us[k])} v={int(vs[k])}", bool(got[k]), bool(want[k]))
    else:
        yield (f"adjacent batch x{us.size}", us.size, us.size)


def _selfcheck_labelled(g: LabelledGraph, d: Dag, rng: np.random.Generator):
    ref = naive_from_dag(d)
    nv = d.n + 1
    if g.m != d.m or g.n != d.n:
        yield ("shape m/n", (g.m, g.n), (d.m, d.n))
        return
    verts = np.arange(nv) if nv <= 2001 else np.sort(rng.choice(nv, 2000, replace=False))
    for v in verts:
        v = int(v)
        yield (f"deg_in v={v}", g.degree_in(v), ref.degree_in(v))
        yield (f"nbrs_out v={v}", g.neighbours_out(v), ref.out_lists[v])
        yield (f"nbrs_in v={v}", g.neighbours_in(v), ref.in_lists[v])
    pairs = rng.integers(0, nv, (4000, 2))
    for u, v in pairs:
        u, v = int(u), int(v)
        yield (f"adjacent u={u} v={v}", g.adjacent(u, v), ref.adjacent(u, v))


def _run_suite(suite) -> tuple[int, str | None]:
    """Consume a selfcheck generator; (queries verified, first mismatch or None)."""
    checked = 0
    for desc, got, want in suite:
        if isinstance(got, (int, np.integer)) and desc.startswith("adjacent batch"):
            checked += int(got)
            continue
        checked += 1
        eq = got == want
        if isinstance(eq, np.ndarray):
            eq = bool(eq.all())
        if not eq:
            return checked, f"MISMATCH {desc} got={got} want={want}"
    return checked, None


def cmd_selfcheck(args) -> int:
    g = load(args.infile)
    d, inferred, _ = read_edge_list(args.against)
    if inferred:
        _warn_inferred()
    if isinstance(g, LabelledGraph):
        checked, bad = _run_suite(_selfcheck_labelled(g, d, np.random.default_rng(0)))
        if bad:
            print(bad)
            return 1
        print(f"OK ({checked} queries verified)")
        return 0
    ties = ("index", "first-target") if args.tie == "auto" else (args.tie,)
    first_bad = None
    for tie in ties:
        checked, bad = _run_suite(_selfcheck_compressed(g, d, np.random.default_rng(0), tie))
        if bad is None:
            print(f"tie={tie}")
            print(f"OK ({checked} queries verified)")
            return 0
        if first_bad is None:
            first_bad = bad
    print(first_bad)
    return 1


def cmd_bench(args) -> int:
    g = load(args.infile)
    rng = np.random.default_rng(args.seed)
    n, m = g.n, g.m
    if n < 1:
        raise ModelError("benchmark needs at least one non-seed vertex")
    q = args.queries
    vs = rng.integers(1, n + 1, q)
    iis = rng.integers(1, m + 1, q)
    us = rng.integers(0, n + 1, q)
    ws = rng.integers(0, n + 1, q)

    def clock(fn, pairs) -> int:
        pairs = list(pairs)
        t0 = time.perf_counter_ns()
        for a, b in pairs:
            fn(int(a), int(b))
        return (time.perf_counter_ns() - t0) // max(len(pairs), 1)

    t0 = time.perf_counter_ns()
    for v in vs:
        g.degree_in(int(v))
    print(f"op=degree_in ns_per_query={(time.perf_counter_ns() - t0) // q} queries={q}")
    print(
        f"op=out_neighbour ns_per_query={clock(g.out_neighbour, zip(vs, iis))} queries={q}"
    )
    indeg = np.array([g.degree_in(int(v)) for v in vs])
    keep = indeg > 0
    jj = rng.integers(1, np.maximum(indeg[keep], 1) + 1)
    print(
        f"op=in_neighbour ns_per_query={clock(g.in_neighbour, zip(vs[keep], jj))} "
        f"queries={int(keep.sum())}"
    )
    print(f"op=adjacent ns_per_query={clock(g.adjacent, zip(us, ws))} queries={q}")
    if isinstance(g, CompressedGraph):
        t0 = time.perf_counter_ns()
        g.adjacent_batch(us, ws)
        print(f"op=adjacent_batch ns_per_query={(time.perf_counter_ns() - t0) // q} queries={q}")
        t0 = time.perf_counter_ns()
        g.out_neighbour_batch(vs, iis)
        print(
            f"op=out_neighbour_batch ns_per_query={(time.perf_counter_ns() - t0) // q} queries={q}"
        )
    return 0


def cmd_lfc(args) -> int:
    res = reduce_string(args.string, args.block, want_trace=True)
    order = sorted(res.sigma, key=res.sigma.get)
    counts = {sym: args.string.count(sym) for sym in order}
    print("sigma=" + ",".join(f"{sym}:{res.sigma[sym]}" for sym in order))
    print("S=" + "".join(sym * counts[sym] for sym in order))
    for step in res.trace:
        kept = "".join(x for x in step["after"] if x is not None)
        print(
            f"step={step['step']} symbol={step['symbol']} s_index={step['s_index']} "
            f"flag_block={step['block']} kept={kept}"
        )
    h_in = h0_per_symbol(args.string)
    h_out = h0_per_symbol(res.reduced)
    print(f"A'={res.reduced} H0pc: {h_in:.4f}→{h_out:.4f}")
    return 0


# ---------------------------------------------------------------------------
# parser plumbing
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="upag",
        description="Generate, compress, query, and verify preferential-attachment graphs.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="sample an instance and write an edge list")
    g.add_argument("--m", type=int, required=True, help="targets per vertex")
    g.add_argument("--n", type=int, required=True, help="number of non-seed vertices")
    g.add_argument("--seed", type=int, default=None, help="RNG seed (omit for entropy)")
    g.add_argument("--out", required=True, help="edge-list file to write")
    g.set_defaults(func=cmd_generate)

    b = sub.add_parser("build", help="compress an edge list into a .upag file")
    b.add_argument("--in", dest="infile", required=True, help="edge-list file")
    b.add_argument("--out", required=True, help=".upag file to write")
    b.add_argument(
        "--mode",
        choices=("unlabelled", "labelled"),
        default="unlabelled",
        help="unlabelled: scaffold tree + leftover string; labelled: full string",
    )
    b.add_argument(
        "--emit-relabel",
        metavar="PATH",
        default=None,
        help="write the 'old new' vertex-name map as two-column text",
    )
    b.add_argument(
        "--tie",
        choices=("index", "first-target"),
        default="index",
        help="rank tie-break among equal in-degrees (unlabelled mode)",
    )
    b.set_defaults(func=cmd_build)

    q = sub.add_parser("query", help="answer one navigation query on a .upag file")
    q.add_argument("--in", dest="infile", required=True, help=".upag file")
    q.add_argument("op", choices=("outn", "inn", "deg", "adj", "nbrs"))
    q.add_argument("args", nargs="*", help="vertex / index arguments")
    q.set_defaults(func=cmd_query)

    s = sub.add_parser("stats", help="entropy, probability, and space figures")
    s.add_argument("--in", dest="infile", required=True, help="edge-list file")
    s.add_argument("--csv", action="store_true", help="emit one CSV header+row instead")
    s.set_defaults(func=cmd_stats)

    c = sub.add_parser("selfcheck", help="verify a .upag file against its edge list")
    c.add_argument("--in", dest="infile", required=True, help=".upag file")
    c.add_argument("--against", required=True, help="edge-list file (ground truth)")
    c.add_argument(
        "--tie",
        choices=("auto", "index", "first-target"),
        default="auto",
        help="rank tie-break the file was built with (auto: try both)",
    )
    c.set_defaults(func=cmd_selfcheck)

    n = sub.add_parser("bench", help="time each query operation")
    n.add_argument("--in", dest="infile", required=True, help=".upag file")
    n.add_argument("--queries", type=int, default=1000, help="queries per operation")
    n.add_argument("--seed", type=int, default=0)
    n.set_defaults(func=cmd_bench)

    f = sub.add_parser("lfc", help="run the block-wise string reduction")
    f.add_argument("--string", required=True, help="input string")
    f.add_argument("--block", type=int, required=True, help="block size")
    f.set_defaults(func=cmd_lfc)
    return p


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ModelError, FormatError, OutOfRangeError, OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
