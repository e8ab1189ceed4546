"""Grid assembly, cache files, rendering, and the command-line surface."""

import json
import os

import pytest

from asymcover import cli
from asymcover.bounds import BoundRecord, Budget, FULL_BUDGET
from asymcover.codefiles import load_code, save_code
from asymcover.constructions import diagonal_code
from asymcover.cube import Code
from asymcover.table import (
    TableSpec,
    build_grid,
    load_cache,
    render_cell,
    render_table,
    save_cache,
)

SMALL = TableSpec(n_min=2, n_max=5, r_min=1, r_max=4, budget=FULL_BUDGET)


def test_tablespec_domain_includes_working_margin():
    cells = SMALL.cells()
    assert (1, 0) in cells  # below the rendered window
    assert (5, 0) in cells
    assert (3, 3) in cells
    assert (3, 4) not in cells  # outside the triangle
    assert max(n for n, _ in cells) == 5


def test_tablespec_validation():
    with pytest.raises(ValueError):
        TableSpec(n_min=0, n_max=3, r_min=1, r_max=2)
    with pytest.raises(ValueError):
        TableSpec(n_min=2, n_max=1, r_min=1, r_max=2)
    with pytest.raises(ValueError):
        TableSpec(n_min=1, n_max=3, r_min=2, r_max=1)


def test_render_cell_formats():
    assert render_cell(BoundRecord(4, 1, 6, 6, "i", "e")) == "6[i/e]"
    assert render_cell(BoundRecord(7, 2, 13, 15, "mono", "g")) == "13-15[mono/g]"
    assert render_cell(BoundRecord(3, 0, 8, 8, "sphere", "sphere")) == "8"
    assert render_cell(BoundRecord(3, 3, 1, 1, "superdiag", "d")) == "1"


def test_build_grid_small_block():
    grid = build_grid(SMALL)
    want = {
        (2, 1): 2,
        (3, 1): 3,
        (4, 1): 6,
        (5, 1): 10,
        (3, 2): 2,
        (4, 2): 3,
        (5, 2): 5,
        (4, 3): 2,
        (5, 3): 3,
        (5, 4): 2,
    }
    for cell, value in want.items():
        rec = grid[cell]
        assert (rec.lower, rec.upper) == (value, value), cell


def test_render_table_layout():
    grid = build_grid(SMALL)
    text = render_table(grid, SMALL)
    lines = text.splitlines()
    assert lines[0].split() == ["R\\n", "2", "3", "4", "5"]
    assert len(lines) == 5
    first_row = lines[1].split()
    assert first_row[0] == "1"
    assert first_row[1] == "2[superdiag/d]"
    # R > n corner renders the constant cell
    wide = TableSpec(n_min=2, n_max=3, r_min=1, r_max=4, budget=FULL_BUDGET)
    corner = render_table(build_grid(wide), wide).splitlines()[-1].split()
    assert corner == ["4", "1", "1"]


def test_cache_round_trip(tmp_path):
    path = str(tmp_path / "cache.json")
    spec = TableSpec(
        n_min=2, n_max=4, r_min=1, r_max=3, budget=FULL_BUDGET, cache_path=path
    )
    first = build_grid(spec)
    assert os.path.exists(path)
    reloaded = load_cache(path)
    assert set(reloaded) == set(first)
    for key, rec in first.items():
        assert reloaded[key] == rec
    second = build_grid(spec)
    assert second == first


def test_cache_write_is_clean(tmp_path):
    path = str(tmp_path / "c.json")
    save_cache(path, {(2, 1): BoundRecord(2, 1, 2, 2, "e", "e")})
    assert sorted(os.listdir(tmp_path)) == ["c.json"]
    raw = json.load(open(path))
    assert raw["2,1"]["exact"] is True


def test_build_grid_workers_match_serial():
    spec = TableSpec(n_min=2, n_max=5, r_min=1, r_max=4, budget=Budget())
    serial = build_grid(spec, workers=1)
    threaded = build_grid(spec, workers=3)
    assert serial == threaded


def run_cli(args, capsys):
    rc = cli.main(args)
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


def test_cli_bound_text(capsys):
    rc, out, _ = run_cli(["bound", "--n", "6", "--r", "3"], capsys)
    assert rc == 0
    assert out.strip() == "4 [superdiag/d]"


def test_cli_bound_json(capsys):
    rc, out, _ = run_cli(["bound", "--n", "4", "--r", "1", "--exact", "--json"], capsys)
    assert rc == 0
    data = json.loads(out)
    assert data["lower"] == data["upper"] == 6
    assert data["exact"] is True


def test_cli_usage_errors(capsys):
    assert run_cli([], capsys)[0] == 1
    assert run_cli(["bound", "--n", "4"], capsys)[0] == 1
    assert run_cli(["nosuch"], capsys)[0] == 1
    assert run_cli(["verify", "no-such-file.json"], capsys)[0] == 1
    assert run_cli(["bound", "--n", "80", "--r", "1"], capsys)[0] == 1


def test_cli_construct_and_verify(tmp_path, capsys):
    out_path = str(tmp_path / "d.json")
    rc, out, _ = run_cli(
        ["construct", "--method", "diagonal", "--n", "6", "--coradius", "3",
         "--out", out_path],
        capsys,
    )
    assert rc == 0
    assert "4 words" in out
    code = load_code(out_path)
    assert len(code) == 4 and code.r == 3

    rc, out, _ = run_cli(["verify", out_path], capsys)
    assert rc == 0
    assert "covers: true (R=3)" in out
    assert "radius: 3" in out

    rc, out, _ = run_cli(["verify", out_path, "--r", "2"], capsys)
    assert rc == 2
    assert "covers: false (R=2)" in out


def test_cli_construct_needs_inputs(tmp_path, capsys):
    rc, _, err = run_cli(
        ["construct", "--method", "directsum", "--in1", "x.json",
         "--out", str(tmp_path / "o.json")],
        capsys,
    )
    assert rc == 1
    assert "--in2" in err


def test_cli_construct_rejects_invalid_patch(tmp_path, capsys):
    s_path = str(tmp_path / "s.json")
    t_path = str(tmp_path / "t.json")
    inner_path = str(tmp_path / "i.json")
    save_code(s_path, Code.from_words(2, [3]))   # misses vertex 00 at R=1
    save_code(t_path, Code.from_words(2, []))    # empty patch cannot absorb it
    save_code(inner_path, diagonal_code(3, 2))
    rc, _, err = run_cli(
        ["construct", "--method", "semidirect", "--s-in", s_path, "--t-in", t_path,
         "--code-in", inner_path, "--r", "1", "--out", str(tmp_path / "o.json")],
        capsys,
    )
    assert rc == 2
    assert "verification failure" in err


def test_cli_exact_and_witness(tmp_path, capsys):
    witness = str(tmp_path / "w.json")
    rc, out, err = run_cli(["exact", "--n", "4", "--r", "1", "--out", witness], capsys)
    assert rc == 0
    assert out.strip() == "6"
    assert "nodes:" in err
    code = load_code(witness)
    assert len(code) == 6 and code.r == 1


def test_cli_exact_bracket_exit(capsys):
    rc, out, _ = run_cli(
        ["exact", "--n", "6", "--r", "1", "--node-limit", "100"], capsys
    )
    assert rc == 3
    assert "bracket" in out


def test_cli_linear(capsys):
    rc, out, _ = run_cli(["linear", "--n", "5", "--r", "2", "--exhaustive"], capsys)
    assert rc == 0
    lines = out.splitlines()
    assert lines[0] == "k+ = 3 (exhaustive agrees)"
    assert any(line.startswith("basis:") for line in lines)
    assert "self-complementary: true" in out


def test_cli_table_text_and_cache(tmp_path, capsys, monkeypatch):
    cache = str(tmp_path / "cache.json")
    rc, out, _ = run_cli(
        ["table", "--n-max", "4", "--r-max", "3", "--cache", cache], capsys
    )
    assert rc == 0
    assert out.splitlines()[0].split()[0] == "R\\n"
    assert os.path.exists(cache)

    env_cache = str(tmp_path / "env.json")
    monkeypatch.setenv("ASYMCOVER_CACHE", env_cache)
    rc, _, _ = run_cli(["table", "--n-max", "3", "--r-max", "2"], capsys)
    assert rc == 0
    assert os.path.exists(env_cache)


def test_cli_table_json(capsys):
    rc, out, _ = run_cli(
        ["table", "--n-max", "4", "--r-max", "2", "--json", "--no-exact"], capsys
    )
    assert rc == 0
    data = json.loads(out)
    assert data["4,1"]["lower"] == 6
