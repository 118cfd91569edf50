import os

import pytest

from ncpaths.cli import main


def run(args):
    try:
        return main(args)
    except SystemExit as exc:  # argparse usage failures
        return exc.code


def gen_files(tmp_path, extra=()):
    inst = tmp_path / "a.inst"
    pairs = tmp_path / "a.pairs"
    code = run(["gen", "--kind", "grid", "--width", "5", "--height", "4",
                "--k", "3", "--seed", "2",
                "--instance-out", str(inst), "--pairs-out", str(pairs),
                *extra])
    assert code == 0
    return inst, pairs


def test_gen_solve_round_trip(tmp_path, capsys):
    inst, pairs = gen_files(tmp_path)
    out = tmp_path / "a.res"
    assert run(["solve", str(inst), str(pairs), "--out", str(out)]) == 0
    text = out.read_text()
    assert "union:" in text and text.splitlines()[0].split()[0] == "1"
    # determinism
    out2 = tmp_path / "b.res"
    assert run(["solve", str(inst), str(pairs), "--out", str(out2)]) == 0
    assert out2.read_text() == text


def test_gen_corner_pair_matches_g9(tmp_path):
    inst = tmp_path / "g9.inst"
    pairs = tmp_path / "g9.pairs"
    assert run(["gen", "--kind", "grid", "--width", "3", "--height", "3",
                "--pair-model", "corners",
                "--instance-out", str(inst), "--pairs-out", str(pairs)]) == 0
    assert pairs.read_text() == "1\n0 8\n"


def test_verify_subcommand_passes(tmp_path, capsys):
    inst, pairs = gen_files(tmp_path)
    assert run(["verify", str(inst), str(pairs), "--samples", "40"]) == 0
    out = capsys.readouterr().out
    assert "summary: PASS" in out
    assert "check=shortestness status=pass" in out


def test_check_subcommand(tmp_path, capsys):
    inst, pairs = gen_files(tmp_path)
    assert run(["check", str(inst), str(pairs)]) == 0
    out = capsys.readouterr().out
    assert "instance ok" in out and "pairs ok" in out


def test_check_rejects_interleaved_pairs(tmp_path, capsys):
    inst, _ = gen_files(tmp_path)
    bad = tmp_path / "bad.pairs"
    bad.write_text("2\n0 2\n1 3\n")  # interleaved on the top row
    assert run(["check", str(inst), str(bad)]) == 2


def test_invalid_instance_exits_2(tmp_path):
    broken = tmp_path / "broken.inst"
    broken.write_text("not an instance\n")
    assert run(["check", str(broken)]) == 2


def test_usage_error_exits_1():
    assert run(["gen", "--kind", "grid"]) == 1      # missing outputs
    assert run(["frobnicate"]) == 1                 # unknown subcommand


def test_incremental_mode_is_reported_unavailable(tmp_path):
    inst, pairs = gen_files(tmp_path)
    assert run(["solve", str(inst), str(pairs),
                "--mode", "incremental"]) == 1


def test_render_writes_svg(tmp_path):
    inst, pairs = gen_files(tmp_path)
    svg = tmp_path / "fig.svg"
    assert run(["solve", str(inst), str(pairs), "--out",
                str(tmp_path / "r.res"), "--render", str(svg)]) == 0
    body = svg.read_text()
    assert body.startswith("<svg") and "polyline" in body


def test_subdivide_pipeline(tmp_path):
    inst = tmp_path / "w.inst"
    pairs = tmp_path / "w.pairs"
    assert run(["gen", "--kind", "grid", "--width", "4", "--height", "4",
                "--k", "2", "--seed", "9", "--weight-max", "3",
                "--instance-out", str(inst), "--pairs-out", str(pairs)]) == 0
    unit = tmp_path / "unit.inst"
    vmap = tmp_path / "v.map"
    assert run(["subdivide", str(inst), "--out", str(unit),
                "--map-out", str(vmap)]) == 0
    assert run(["verify", str(unit), str(pairs), "--samples", "20"]) == 0
    assert vmap.read_text().splitlines()[0] == "0 0"


def test_cw_rotations_flag(tmp_path):
    inst, pairs = gen_files(tmp_path)
    flipped = tmp_path / "cw.inst"
    lines = inst.read_text().splitlines()
    n = int(lines[0].split()[0])
    out = [lines[0]]
    for ln in lines[1:1 + n]:
        tok = ln.split()
        out.append(" ".join(tok[:2] + tok[:1:-1]))
    out.extend(lines[1 + n:])
    flipped.write_text("\n".join(out) + "\n")
    assert run(["solve", str(flipped), str(pairs), "--cw-rotations",
                "--out", str(tmp_path / "cw.res")]) == 0
    assert run(["solve", str(inst), str(pairs),
                "--out", str(tmp_path / "ccw.res")]) == 0
    assert (tmp_path / "cw.res").read_text() == \
        (tmp_path / "ccw.res").read_text()


def test_bench_subcommand(tmp_path, capsys):
    csv = tmp_path / "bench.csv"
    assert run(["bench", "--sizes", "400,900", "--out", str(csv)]) == 0
    body = csv.read_text()
    assert body.startswith("# ncpaths bench csv v1")
    assert len(body.splitlines()) == 4  # comment + header + 2 rows
