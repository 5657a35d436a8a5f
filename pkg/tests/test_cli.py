import json

import pytest

from dlx.cli import main

from conftest import DATA

EXAMPLE = str(DATA / "example_matrix.txt")

SCOTT_PACKING = ("I 11 12 13 14 15 / N 16 26 27 37 47 / L 17 18 28 38 48 / U 21 22 31 41 42 / "
           "X 23 32 33 34 43 / W 24 25 35 36 46 / P 51 52 53 62 63 / F 56 64 65 66 75 / "
           "Z 57 58 67 76 77 / T 61 71 72 73 81 / V 68 78 86 87 88 / Y 74 82 83 84 85")


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def table(out):
    """Tab-delimited report lines as {first field: rest}."""
    rows = {}
    for line in out.splitlines():
        if line and not line.startswith("#") and "\t" in line:
            key, *rest = line.split("\t")
            rows[key] = rest
    return rows


def test_solve_example_matrix_min_size(capsys):
    code, out, _ = run(capsys, "solve", EXAMPLE, "--heuristic", "s")
    assert code == 0
    assert out.strip() == "A D / E F C / B G"


def test_solve_example_matrix_leftmost_stats(capsys):
    code, out, _ = run(capsys, "solve", EXAMPLE, "--heuristic", "leftmost", "--stats")
    assert code == 0
    assert "A D / B G / C E F" in out
    t = table(out)
    assert t["total"][2] == "33"
    assert t["solutions"] == ["1"]
    assert out.splitlines()[4].split("\t") == ["level", "nodes", "node_pct", "updates",
                                               "update_pct", "updates_per_node"]


def test_skip_empty_flag_changes_counting(capsys):
    _, out, _ = run(capsys, "solve", EXAMPLE, "--heuristic", "leftmost", "--no-skip-empty",
                    "--count", "--stats")
    assert table(out)["total"][2] == "35"


def test_gen_and_solve_queens(capsys, tmp_path):
    path = tmp_path / "q8.txt"
    assert run(capsys, "gen-queens", 8, "-o", path)[0] == 0
    assert "# dlx-options: no-skip-empty" in path.read_text()
    code, out, _ = run(capsys, "solve", path, "--count", "--stats")
    assert code == 0
    t = table(out)
    assert t["solutions"] == ["92"]
    assert t["total"][0] == "1049" and t["total"][2] == "16680"
    path.write_text(path.read_text())
    run(capsys, "gen-queens", 8, "--files-secondary", "-o", path)
    _, out, _ = run(capsys, "solve", path, "--count", "--stats")
    assert table(out)["total"][0] == "1223" and table(out)["total"][2] == "18849"


def test_gen_queens_four(capsys):
    code, out, _ = run(capsys, "gen-queens", 4, "--ordering", "natural")
    rows = [ln for ln in out.splitlines() if ln and not ln.startswith("#")]
    assert code == 0
    assert rows[0] == "R0 F0 R1 F1 R2 F2 R3 F3 | A1 A2 A3 A4 A5 B1 B2 B3 B4 B5"
    assert len(rows) == 17
    assert rows[1] == "R0 F0 B3" and rows[2] == "R0 F1 A1 B4"


def test_gen_preset_scott_x23(capsys, tmp_path):
    path = tmp_path / "x23.txt"
    assert run(capsys, "gen-polyomino", "--preset", "scott-x23", "-o", path)[0] == 0
    text = path.read_text()
    assert "# dlx-force: X 13 22 23 24 33" in text
    body = [ln for ln in text.splitlines() if ln and not ln.startswith("#")]
    assert len(body) == 1 + 1545
    code, out, _ = run(capsys, "solve", path, "--count", "--stats")
    t = table(out)
    assert t["solutions"] == ["19"]
    assert t["total"][0] == "10421" and t["total"][2] == "3617723"


def test_gen_polyomino_board(capsys):
    code, out, _ = run(capsys, "gen-polyomino", "--board", "scott8x8")
    body = [ln for ln in out.splitlines() if ln and not ln.startswith("#")]
    assert code == 0
    assert len(body) == 1 + 1568
    assert len(body[0].split()) == 72


def test_gen_polystick_exclude(capsys):
    code, out, _ = run(capsys, "gen-polystick", "--board", "grid:5x5-segments",
                       "--exclude", "L")
    header = next(ln for ln in out.splitlines() if ln and not ln.startswith("#"))
    primary, secondary = header.split(" | ")
    assert primary.split()[-15:] == list("FHIJNOPRTUVWXYZ")
    assert len(primary.split()) == 60 + 15
    assert len(secondary.split()) == 16 and secondary.startswith("I11")


def test_gen_dominoes_and_no_solution_exit(capsys, tmp_path):
    path = tmp_path / "dom.txt"
    run(capsys, "gen-dominoes", "--board", "mutilated-chessboard", "-o", path)
    code, out, _ = run(capsys, "solve", path, "--count")
    assert code == 1
    assert table(out)["solutions"] == ["0"]


def test_preset_group_reports_distinct(capsys):
    code, out, _ = run(capsys, "solve", "welded-4x4", "--count")
    t = table(out)
    assert code == 0
    assert t["solutions"] == ["16"] and t["distinct"] == ["3"]


def test_machine_output(capsys):
    _, out, _ = run(capsys, "solve", EXAMPLE, "--machine")
    obj = json.loads(out.strip())
    assert sorted(obj["rows"]) == [0, 3, 4]
    assert obj["names"][0] == ["A", "D"]


def test_force_and_limit(capsys):
    code, out, _ = run(capsys, "solve", EXAMPLE, "--force", "A D")
    assert code == 0 and "A D" in out
    code, out, _ = run(capsys, "solve", EXAMPLE, "--force", "#1")
    assert code == 1
    code, _, err = run(capsys, "solve", EXAMPLE, "--force", "A B")
    assert code == 2 and "names no row" in err


def test_split_jobs_match(capsys, tmp_path):
    path = tmp_path / "q7.txt"
    run(capsys, "gen-queens", 7, "-o", path)
    _, out, _ = run(capsys, "solve", path, "--count", "--split-depth", 2, "--jobs", 2)
    assert table(out)["solutions"] == ["40"]


def test_plot_writes_png(capsys, tmp_path):
    png = tmp_path / "profile.png"
    code, _, _ = run(capsys, "solve", EXAMPLE, "--count", "--plot", png)
    assert code == 0
    assert png.read_bytes()[:4] == b"\x89PNG"


def test_input_errors(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("A B\nA C\n")
    code, _, err = run(capsys, "solve", bad)
    assert code == 2 and "line 2" in err
    code, _, err = run(capsys, "solve", tmp_path / "missing.txt")
    assert code == 2
    code, _, err = run(capsys, "gen-polyomino", "--preset", "nope")
    assert code == 2
    code, _, err = run(capsys, "gen-polyomino", "--board", "scott8x8", "--exclude", "Q")
    assert code == 2


def test_estimate(capsys):
    code, out, _ = run(capsys, "estimate", EXAMPLE, "--probes", 2000, "--seed", 4)
    assert code == 0
    fields = out.split("\t")
    nodes, se = float(fields[2]), float(fields[4])
    assert abs(nodes - 6) <= 3 * se + 1e-9


def test_score_scott_packing(capsys, tmp_path):
    path = tmp_path / "fig1.txt"
    path.write_text(SCOTT_PACKING + "\n")
    png = tmp_path / "best.png"
    code, out, _ = run(capsys, "score", path, "--board", "scott8x8", "--plot", png)
    assert code == 0
    assert out.splitlines()[0] == "0\thsym=30 vsym=36"
    assert "# best\t0\thsym=30 vsym=36" in out
    assert png.exists()


def test_score_empty_stream(capsys, tmp_path):
    path = tmp_path / "empty.txt"
    path.write_text("")
    code, out, _ = run(capsys, "score", path, "--board", "scott8x8")
    assert code == 0
    assert out.strip() == "# scored\t0"


def test_score_machine_stream(capsys, tmp_path):
    path = tmp_path / "sols.jsonl"
    code, out, _ = run(capsys, "solve", "welded-4x4", "--machine")
    path.write_text(out)
    code, out, _ = run(capsys, "score", path, "--board", "grid:4x4-segments")
    assert code == 2  # segment boards have no cell edges to score


def test_reports_are_deterministic(capsys):
    def strip(out):
        return [ln for ln in out.splitlines() if not ln.startswith("# wall")]

    _, a, _ = run(capsys, "solve", "scott-x24", "--stats")
    _, b, _ = run(capsys, "solve", "scott-x24", "--stats")
    assert strip(a) == strip(b)
    assert table(a)["total"][2] == "4547186"


@pytest.mark.parametrize("argv", [["solve"], ["gen-queens"], ["bogus"]])
def test_usage_errors(argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2
