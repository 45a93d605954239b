import json
import re
import subprocess
import sys

import pytest

from disjoint_matching.cli import run
from disjoint_matching.gen import convex
from disjoint_matching.model import Drawing


def call(capsys, *argv):
    code = run([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def k6(tmp_path, capsys):
    path = tmp_path / "k6.json"
    assert call(capsys, "gen", "--kind", "convex", "--n", 6, "-o", path)[0] == 0
    return path


def test_gen_then_oracle(k6, capsys):
    code, out, _ = call(capsys, "oracle", k6)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "3" and lines[1].startswith("edges ") and len(lines[1].split()) == 4
    assert lines[2].endswith("exact true")


def test_gen_stdout_matches_library(capsys):
    code, out, _ = call(capsys, "gen", "--kind", "convex", "--n", 7)
    assert code == 0 and out == convex(7).dumps()


def test_solve_triangle(tmp_path, capsys):
    path = tmp_path / "k3.json"
    call(capsys, "gen", "--kind", "convex", "--n", 3, "-o", path)
    res = tmp_path / "res.json"
    code, out, _ = call(capsys, "solve", path, "-o", res)
    assert code == 0 and out.splitlines()[0] == "1"
    data = json.loads(res.read_text())
    assert data["size"] == 1 and len(data["edges"]) == 1


def test_solve_stats_line(k6, capsys):
    code, out, _ = call(capsys, "solve", k6, "--root", "all")
    stats = json.loads(out.splitlines()[2].removeprefix("stats "))
    assert code == 0 and stats["root_policy"] == "all"


def test_compare_ratio(tmp_path, capsys):
    path = tmp_path / "k8.json"
    call(capsys, "gen", "--kind", "convex", "--n", 8, "-o", path)
    code, out, _ = call(capsys, "compare", path)
    m = re.match(r"solve (\d+) oracle (\d+) ratio ([\d.]+)$", out.strip())
    assert code == 0 and m and m.group(2) == "4"
    assert 0.25 <= float(m.group(3)) <= 1


def test_validate_reports(k6, tmp_path, capsys):
    assert call(capsys, "validate", k6)[0] == 0
    bad = tmp_path / "bad.json"
    # vertex 2 sits on the segment 0-1
    bad.write_text(Drawing.straight_line([(0, 0), (4, 2), (2, 1), (1, 5)]).dumps())
    code, out, _ = call(capsys, "validate", bad)
    assert code == 1 and "edge-through-vertex" in out
    assert call(capsys, "solve", bad)[0] == 1
    assert call(capsys, "solve", k6, "--no-validate")[1] == call(capsys, "solve", k6)[1]


def test_exit_codes(tmp_path, capsys, k6):
    assert call(capsys, "solve", tmp_path / "missing.json")[0] == 3
    assert call(capsys, "gen", "--kind", "nope", "--n", 5)[0] == 3
    assert call(capsys, "gen", "--kind", "convex", "--n", 2)[0] == 3
    assert call(capsys, "solve", k6, "--root", 99)[0] == 3
    junk = tmp_path / "junk.json"
    junk.write_text("{not json")
    assert call(capsys, "oracle", junk)[0] == 3
    # node limit reached: best-so-far is still printed
    code, out, _ = call(capsys, "oracle", k6, "--limit", 1)
    assert code == 2 and out.splitlines()[2].endswith("exact false")


def test_tampered_matching_rejected(k6, tmp_path, capsys):
    fake = tmp_path / "fake.json"
    fake.write_text(json.dumps({"edges": [[0, 3], [1, 4]], "size": 2}))   # two crossing diagonals
    code, _, err = call(capsys, "svg", k6, "-o", tmp_path / "x.svg", "--matching", fake)
    assert code == 2 and "Certification" in err


def test_svg(k6, tmp_path, capsys):
    res, out = tmp_path / "res.json", tmp_path / "k6.svg"
    call(capsys, "solve", k6, "-o", res)
    assert call(capsys, "svg", k6, "-o", out, "--matching", res, "--plane-root", 0)[0] == 0
    text = out.read_text()
    assert text.startswith("<svg") and text.count("<polyline") == 15 and text.count("<circle") == 6
    assert text.count('stroke="#d62728"') == json.loads(res.read_text())["size"]


def test_cylinder_commands(tmp_path, capsys):
    path = tmp_path / "cyl.json"
    assert call(capsys, "gen", "--kind", "cyl-random", "--n", 5, "--seed", 3, "-o", path)[0] == 0
    assert call(capsys, "validate", path)[0] == 0
    code, out, _ = call(capsys, "oracle", path)
    assert code == 0 and int(out.splitlines()[0]) >= 1
    assert call(capsys, "svg", path, "-o", tmp_path / "c.svg")[0] == 0
    assert call(capsys, "solve", path)[0] == 3


def test_estimate_c(capsys):
    code, out, _ = call(capsys, "estimate-c", "--delta", 4, 5, "--trials", 4)
    lines = out.splitlines()
    assert code == 0 and lines[0] == "delta trials min mean max" and len(lines) == 3
    delta, trials, lo, mean, hi = lines[1].split()
    assert (delta, trials) == ("4", "4") and int(lo) <= float(mean) <= int(hi)


def test_module_entry_point_is_deterministic(tmp_path):
    cmd = [sys.executable, "-m", "disjoint_matching", "gen", "--kind", "random-points", "--n", "9", "--seed", "5"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == subprocess.run(cmd, capture_output=True, check=True).stdout
    path = tmp_path / "r.json"
    path.write_bytes(first)
    solve = [sys.executable, "-m", "disjoint_matching", "solve", str(path)]
    runs = {subprocess.run(solve, capture_output=True, check=True).stdout for _ in range(2)}
    assert len(runs) == 1
