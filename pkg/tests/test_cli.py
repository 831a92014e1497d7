"""End-to-end tests for the command-line surface.

Every subcommand is driven through ``main(argv)`` exactly as a shell would
invoke it; assertions run against captured stdout/stderr, exit codes, and
the files the commands write.  The five-vertex figure instance reappears
here as an edge-list fixture so the pinned navigation answers can be
checked through the full generate/build/query pipeline.
"""

from __future__ import annotations

import pytest

from upag.cli import main

FIGURE_EDGE_LIST = (
    "# upag-el v1 M=3 n=5\n"
    "1 0\n1 0\n1 0\n"
    "2 1\n2 1\n2 1\n"
    "3 1\n3 1\n3 1\n"
    "4 3\n4 2\n4 2\n"
    "5 3\n5 4\n5 4\n"
)


def run(capsys, *argv):
    code = main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


@pytest.fixture
def figure_files(tmp_path, capsys):
    el = tmp_path / "fig.el"
    el.write_text(FIGURE_EDGE_LIST)
    up = tmp_path / "fig.upag"
    code, _, _ = run(capsys, "build", "--in", str(el), "--out", str(up),
                     "--tie", "first-target")
    assert code == 0
    return el, up


# ---------------------------------------------------------------------------
# generate
# ---------------------------------------------------------------------------

def test_generate_writes_golden_edge_list(tmp_path, capsys):
    out = tmp_path / "g.el"
    code, text, _ = run(capsys, "generate", "--m", "3", "--n", "4",
                        "--seed", "7311", "--out", str(out))
    assert code == 0
    lines = text.splitlines()
    assert lines[0] == f"out={out} m=3 n=4 edges=12"
    assert lines[1] == "lg(1/P)=7.4330 mode=exact"
    assert out.read_text() == (
        "# upag-el v1 M=3 n=4\n"
        "1 0\n1 0\n1 0\n"
        "2 0\n2 0\n2 1\n"
        "3 0\n3 1\n3 1\n"
        "4 0\n4 1\n4 3\n"
    )


def test_generate_single_edge(tmp_path, capsys):
    out = tmp_path / "one.el"
    code, text, _ = run(capsys, "generate", "--m", "1", "--n", "1",
                        "--seed", "0", "--out", str(out))
    assert code == 0
    assert "edges=1" in text
    assert out.read_text() == "# upag-el v1 M=1 n=1\n1 0\n"


def test_generate_same_seed_is_byte_identical(tmp_path, capsys):
    a, b = tmp_path / "a.el", tmp_path / "b.el"
    run(capsys, "generate", "--m", "3", "--n", "50", "--seed", "99", "--out", str(a))
    run(capsys, "generate", "--m", "3", "--n", "50", "--seed", "99", "--out", str(b))
    assert a.read_bytes() == b.read_bytes()


def test_generate_switches_to_float_mode_past_cutoff(tmp_path, capsys):
    out = tmp_path / "big.el"
    code, text, _ = run(capsys, "generate", "--m", "2", "--n", "100",
                        "--seed", "3", "--out", str(out))
    assert code == 0
    assert "mode=float" in text.splitlines()[1]


# ---------------------------------------------------------------------------
# build
# ---------------------------------------------------------------------------

def test_build_reports_mode_shape_and_space(figure_files, tmp_path, capsys):
    el, _ = figure_files
    up = tmp_path / "again.upag"
    code, text, err = run(capsys, "build", "--in", str(el), "--out", str(up))
    assert code == 0
    assert err == ""
    first, second = text.splitlines()
    assert first.endswith("mode=unlabelled m=3 n=5")
    assert "bytes=" in first
    for key in ("payload_bits=", "directory_bits=", "metadata_bits=", "total_bits="):
        assert key in second


def test_build_emit_relabel_is_identity_for_figure_instance(tmp_path, capsys):
    el = tmp_path / "fig.el"
    el.write_text(FIGURE_EDGE_LIST)
    up, mp = tmp_path / "f.upag", tmp_path / "map.txt"
    code, _, _ = run(capsys, "build", "--in", str(el), "--out", str(up),
                     "--tie", "first-target", "--emit-relabel", str(mp))
    assert code == 0
    assert mp.read_text() == "0 0\n1 1\n2 2\n3 3\n4 4\n5 5\n"


def test_build_infers_order_for_out_of_order_input(tmp_path, capsys):
    el = tmp_path / "s.el"
    run(capsys, "generate", "--m", "2", "--n", "10", "--seed", "44", "--out", str(el))
    lines = el.read_text().splitlines()
    body = lines[1:][::-1]
    body = [(" ".join(ln.split()[::-1]) if i % 2 else ln) for i, ln in enumerate(body)]
    shuf = tmp_path / "shuf.el"
    shuf.write_text("\n".join([lines[0]] + body) + "\n")

    up = tmp_path / "shuf.upag"
    code, _, err = run(capsys, "build", "--in", str(shuf), "--out", str(up))
    assert code == 0
    assert "arrival order inferred" in err
    code, text, _ = run(capsys, "selfcheck", "--in", str(up), "--against", str(shuf))
    assert code == 0
    assert "OK (" in text


def test_stats_invariant_under_reordering_when_simple_beyond_seed(tmp_path, capsys):
    # Seed 44 at m=2 never repeats a target within a block beyond the seed,
    # so every admissible arrival order carries the same probability and the
    # inferred-order stats must match the block-order stats exactly.
    el = tmp_path / "s.el"
    run(capsys, "generate", "--m", "2", "--n", "10", "--seed", "44", "--out", str(el))
    _, base, _ = run(capsys, "stats", "--in", str(el))
    lines = el.read_text().splitlines()
    body = lines[1:][::-1]
    body = [(" ".join(ln.split()[::-1]) if i % 2 else ln) for i, ln in enumerate(body)]
    shuf = tmp_path / "shuf.el"
    shuf.write_text("\n".join([lines[0]] + body) + "\n")
    code, text, err = run(capsys, "stats", "--in", str(shuf))
    assert code == 0
    assert "arrival order inferred" in err
    assert text.splitlines()[1] == base.splitlines()[1]
    assert "lg(1/P)=34.7142" in text


# ---------------------------------------------------------------------------
# query
# ---------------------------------------------------------------------------

@pytest.mark.parametrize(
    ("args", "want"),
    [
        (("outn", "4", "1"), "3"),
        (("outn", "4", "2"), "2"),
        (("inn", "1", "1"), "2"),
        (("inn", "1", "3"), "2"),
        (("deg", "1"), "in=6 out=3 total=9"),
        (("deg", "5"), "in=0 out=3 total=3"),
        (("deg", "0"), "in=3 out=0 total=3"),
        (("adj", "0", "0"), "false"),
        (("adj", "0", "1"), "true"),
        (("adj", "3", "4"), "true"),
        (("adj", "2", "5"), "false"),
        (("nbrs", "5"), "out=3,4,4 in="),
        (("nbrs", "0"), "out= in=1,1,1"),
    ],
)
def test_query_figure_answers(figure_files, capsys, args, want):
    _, up = figure_files
    code, text, _ = run(capsys, "query", "--in", str(up), *args)
    assert code == 0
    assert text.strip() == want


def test_query_labelled_mode(figure_files, tmp_path, capsys):
    el, _ = figure_files
    up = tmp_path / "lab.upag"
    run(capsys, "build", "--in", str(el), "--out", str(up), "--mode", "labelled")
    code, text, _ = run(capsys, "query", "--in", str(up), "deg", "1")
    assert (code, text.strip()) == (0, "in=6 out=3 total=9")
    code, text, _ = run(capsys, "query", "--in", str(up), "nbrs", "5")
    assert (code, text.strip()) == (0, "out=3,4,4 in=")


def test_query_in_neighbour_beyond_degree_fails(figure_files, capsys):
    _, up = figure_files
    code, _, err = run(capsys, "query", "--in", str(up), "inn", "5", "1")
    assert code == 2
    assert err.startswith("error:")


def test_query_wrong_arity_fails(figure_files, capsys):
    _, up = figure_files
    assert run(capsys, "query", "--in", str(up), "deg", "1", "2")[0] == 2


def test_query_non_integer_argument_fails(figure_files, capsys):
    _, up = figure_files
    assert run(capsys, "query", "--in", str(up), "deg", "x")[0] == 2


def test_query_unknown_operation_is_a_usage_error(figure_files, capsys):
    _, up = figure_files
    with pytest.raises(SystemExit) as exc:
        main(["query", "--in", str(up), "frob", "1"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_query_missing_file_fails(tmp_path, capsys):
    code, _, err = run(capsys, "query", "--in", str(tmp_path / "nope.upag"), "deg", "1")
    assert code == 2
    assert err.startswith("error:")


# ---------------------------------------------------------------------------
# stats
# ---------------------------------------------------------------------------

def test_stats_reports_probability_and_entropy(tmp_path, capsys):
    el = tmp_path / "g.el"
    run(capsys, "generate", "--m", "3", "--n", "4", "--seed", "7311", "--out", str(el))
    code, text, _ = run(capsys, "stats", "--in", str(el))
    assert code == 0
    lines = text.splitlines()
    assert lines[0] == "m=3 n=4 edges=12"
    assert "H_deg=15.3681" in lines[1]
    assert "lg(1/P)=7.4330" in lines[1]
    assert "prob_mode=exact" in lines[1]
    assert "lg(n!)=4.5850" in lines[1]
    assert any(ln.startswith("entropy_budget=") for ln in lines)
    assert any("total_bits=" in ln for ln in lines)


def test_stats_csv_has_matching_header_and_row(tmp_path, capsys):
    el = tmp_path / "g.el"
    run(capsys, "generate", "--m", "3", "--n", "4", "--seed", "7311", "--out", str(el))
    code, text, _ = run(capsys, "stats", "--in", str(el), "--csv")
    assert code == 0
    header, row = text.splitlines()
    assert header.startswith("m,n,edges,H_deg,lg(1/P),prob_mode")
    assert len(header.split(",")) == len(row.split(","))
    assert row.split(",")[:3] == ["3", "4", "12"]


# ---------------------------------------------------------------------------
# selfcheck
# ---------------------------------------------------------------------------

def test_selfcheck_auto_detects_tie_break(figure_files, tmp_path, capsys):
    el, ft = figure_files
    code, text, _ = run(capsys, "selfcheck", "--in", str(ft), "--against", str(el))
    assert code == 0
    assert text.splitlines() == ["tie=first-target", "OK (60 queries verified)"]

    idx = tmp_path / "idx.upag"
    run(capsys, "build", "--in", str(el), "--out", str(idx))
    code, text, _ = run(capsys, "selfcheck", "--in", str(idx), "--against", str(el))
    assert code == 0
    assert text.splitlines() == ["tie=index", "OK (60 queries verified)"]


def test_selfcheck_labelled_mode(figure_files, tmp_path, capsys):
    el, _ = figure_files
    up = tmp_path / "lab.upag"
    run(capsys, "build", "--in", str(el), "--out", str(up), "--mode", "labelled")
    code, text, _ = run(capsys, "selfcheck", "--in", str(up), "--against", str(el))
    assert code == 0
    assert text.startswith("OK (")
    assert "tie=" not in text


def test_selfcheck_flags_a_mismatched_pair(tmp_path, capsys):
    a, b = tmp_path / "a.el", tmp_path / "b.el"
    run(capsys, "generate", "--m", "2", "--n", "30", "--seed", "1", "--out", str(a))
    run(capsys, "generate", "--m", "2", "--n", "30", "--seed", "2", "--out", str(b))
    up = tmp_path / "a.upag"
    run(capsys, "build", "--in", str(a), "--out", str(up))
    code, text, _ = run(capsys, "selfcheck", "--in", str(up), "--against", str(b))
    assert code == 1
    assert "MISMATCH" in text


# ---------------------------------------------------------------------------
# bench
# ---------------------------------------------------------------------------

def test_bench_times_every_operation(tmp_path, capsys):
    el, up = tmp_path / "b.el", tmp_path / "b.upag"
    run(capsys, "generate", "--m", "2", "--n", "30", "--seed", "5", "--out", str(el))
    run(capsys, "build", "--in", str(el), "--out", str(up))
    code, text, _ = run(capsys, "bench", "--in", str(up), "--queries", "25")
    assert code == 0
    ops = [ln.split()[0] for ln in text.splitlines()]
    assert ops == [
        "op=degree_in",
        "op=out_neighbour",
        "op=in_neighbour",
        "op=adjacent",
        "op=adjacent_batch",
        "op=out_neighbour_batch",
    ]
    assert all("ns_per_query=" in ln for ln in text.splitlines())


# ---------------------------------------------------------------------------
# lfc
# ---------------------------------------------------------------------------

def test_lfc_reduction_golden(capsys):
    code, text, _ = run(capsys, "lfc", "--string", "abracadabraa", "--block", "4")
    assert code == 0
    lines = text.splitlines()
    assert lines[0] == "sigma=c:0,d:1,b:2,r:3,a:4"
    assert lines[1] == "S=cdbbrraaaaaa"
    steps = [ln for ln in lines if ln.startswith("step=")]
    assert len(steps) == 3
    assert [ln.split("flag_block=")[1].split()[0] for ln in steps] == ["2", "1", "3"]
    assert lines[-1] == "A'=araadaraa H0pc: 1.9591→1.2244"


def test_lfc_rejects_block_size_not_dividing_length(capsys):
    assert run(capsys, "lfc", "--string", "abracadabraa", "--block", "5")[0] == 2


# ---------------------------------------------------------------------------
# malformed edge lists
# ---------------------------------------------------------------------------

@pytest.mark.parametrize(
    "content",
    [
        "3 4\n1 0\n",                                  # missing header magic
        "# upag-el v1 M=3 n=4\n1 0\n",                 # wrong line count
        "# upag-el v1 M=1 n=2\n1 0\n2 9\n",            # label out of range
        "# upag-el v1 M=1 n=2\n1 0\n2 2\n",            # self-loop
        "# upag-el v1 M=1 n=2\n1 0\nx 0\n",            # non-integer label
        "",                                            # empty file
    ],
)
def test_malformed_edge_list_is_a_usage_error(tmp_path, capsys, content):
    el = tmp_path / "bad.el"
    el.write_text(content)
    code, _, err = run(capsys, "stats", "--in", str(el))
    assert code == 2
    assert err.startswith("error:")
