import csv
import io
import json
import subprocess
import sys
from contextlib import redirect_stderr, redirect_stdout

import pytest

from apollo import cli
from apollo.verify import Claim


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        try:
            code = cli.main(list(argv))
        except SystemExit as e:  # argparse errors
            code = e.code
    return code, out.getvalue(), err.getvalue()


def test_depth_triple_text_trace():
    code, out, err = run("depth", "--triple", "179", "62", "23", "--trace")
    assert code == 0
    assert "62, 23, 6" in out.replace("(", "").replace(")", "") or "62 23 6" in out
    assert "WARNING" in err


def test_depth_json():
    code, out, _ = run("depth", "--triple", "2", "2", "3", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["depth"] == 1 and doc["warnings"] == []
    code, out, _ = run("depth", "--z", "2", "1/2", "--format", "json")
    assert json.loads(out)["depth"] == 2


def test_depth_errors_exit_2():
    # a non-positive entry means depth 0 before any radicand is taken
    code, out, _ = run("depth", "--triple", "1", "2", "-3", "--format", "json")
    assert code == 0 and json.loads(out)["depth"] == 0
    assert run("depth", "--triple", "a", "2", "3")[0] == 2
    assert run("nosuchcommand")[0] == 2


def test_depth_guard_exit_3():
    code, _, err = run("depth", "--z", "1000", "1/2", "--max-steps", "5")
    assert code == 3 and err


def test_canonicalize_json():
    code, out, _ = run("canonicalize", "--z", "3/10", "27/10", "--format", "json")
    doc = json.loads(out)
    assert doc["point"] == {"x": "3/10", "y": "-17/10"} and doc["word"] == ["F"]


def test_orbit_word_and_sample():
    code, out, _ = run("orbit", "--z", "0", "1", "--word", "T S", "--format", "json")
    assert json.loads(out)["image"] == {"x": "1/2", "y": "1/2"}
    code, out, _ = run("orbit", "--z", "0", "1", "--length", "1", "--format", "json")
    assert code == 0 and json.loads(out)
    assert run("orbit", "--z", "0", "1", "--word", "Q")[0] == 2


def test_packing_json_and_csv(tmp_path):
    code, out, _ = run("packing", "--preset", "window", "--max-curvature", "15", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and len(doc["disks"]) == 19
    path = tmp_path / "w.csv"
    assert run("packing", "--seed", "-1", "2", "2", "3", "--max-curvature", "6", "--out", str(path))[0] == 0
    rows = list(csv.DictReader(path.open()))
    assert [r["curvature"] for r in rows[:4]] == ["-1", "2", "2", "3"]


def test_packing_svg(tmp_path):
    path = tmp_path / "w.svg"
    assert run("packing", "--preset", "window", "--max-curvature", "15", "--out", str(path), "--labels")[0] == 0
    assert path.read_text().count("<circle") == 19


def test_packing_guard_exit_3():
    code, _, err = run("packing", "--preset", "belt", "--max-curvature", "50", "--max-disks", "100")
    assert code == 3 and "max_curvature" in err.replace("-", "_")


def test_graph_depth_json():
    code, out, _ = run("graph-depth", "--preset", "window", "--max-curvature", "30", "--vertex", "6", "3", "2",
                       "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["vertices"]
    assert all(v["graph_depth"] == v["greedy_depth"] == 1 for v in doc["vertices"])


def test_tessellation_stdout():
    code, out, _ = run("tessellation", "--words", "1")
    assert code == 0 and "<svg" in out


def test_render_depth(tmp_path):
    path = tmp_path / "d.ppm"
    assert run("render-depth", "--size", "30", "10", "--threads", "2", "--out", str(path))[0] == 0
    assert path.read_bytes().startswith(b"P6\n30 10\n255\n")


def test_verify_exit_codes(monkeypatch):
    code, out, _ = run("verify", "--suite", "groups", "--format", "json")
    assert code == 0 and json.loads(out)["passed"]
    monkeypatch.setattr(cli, "run_suite", lambda name: [Claim("forced", False, "x")])
    assert run("verify", "--suite", "groups")[0] == 1
    monkeypatch.setattr(cli, "run_suite", lambda name: [Claim("known", False, "x", discrepancy=True)])
    assert run("verify", "--suite", "groups")[0] == 0


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "apollo", "depth", "--triple", "2", "2", "3"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and "1" in r.stdout
