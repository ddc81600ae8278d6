import csv
import json
import subprocess
import sys
from pathlib import Path

import pytest

from casimir_entropy import cli, config
from casimir_entropy.errors import ConfigError

T2_SWEEP = """
[sweep]
target = t2
output = out/t2.csv

[model]
kind = drude
omega_p = 1.0

[geometry]
kind = planar
a = 1.0

[grid]
gamma = log:1e-3:1:10
omega_p = 0.5:5:10
"""

ENTROPY = """
[model]
kind = dc
eps0 = 5

[geometry]
kind = planar
a = 1

[law]
mu1 = 1
alpha = {alpha}

[state]
T = 1e-3
"""


def write(path, text):
    Path(path).write_text(text)
    return str(path)


def read_rows(path):
    lines = [l for l in Path(path).read_text().splitlines() if not l.startswith("#")]
    return list(csv.DictReader(lines))


def test_parse_axis_forms():
    assert config.parse_axis("T", "1:3:3") == (1.0, 2.0, 3.0)
    assert config.parse_axis("T", "log:1e-3:1e-1:3") == pytest.approx((1e-3, 1e-2, 1e-1))
    assert config.parse_axis("l_m", "1, 2, 4.0") == (1, 2, 4)
    for bad in ("1:2", "log:-1:1:3", "a,b", "1:2:0"):
        with pytest.raises(ConfigError):
            config.parse_axis("T", bad)


def test_sweep_100_rows_and_skip(workdir):
    cfg = write(workdir / "s.ini", T2_SWEEP)
    assert cli.main(["sweep", cfg]) == 0
    rows = read_rows(workdir / "out/t2.csv")
    assert len(rows) == 100
    assert list(rows[0]) == ["gamma", "omega_p", "t2_te", "t2_tm", "error"]
    assert all(r["error"] == "" for r in rows)
    # last axis fastest
    assert rows[0]["gamma"] == rows[9]["gamma"] != rows[10]["gamma"]
    before = (workdir / "out/t2.csv").stat().st_mtime_ns
    _, _, skipped = cli.run_sweep(config.load_sweep(cfg))
    assert skipped and (workdir / "out/t2.csv").stat().st_mtime_ns == before


def test_sweep_single_row(workdir):
    text = T2_SWEEP.replace("gamma = log:1e-3:1:10\nomega_p = 0.5:5:10", "gamma = 0.1")
    assert cli.main(["sweep", write(workdir / "s.ini", text)]) == 0
    assert len(read_rows(workdir / "out/t2.csv")) == 1


def test_sweep_resumes_partial_output(workdir):
    cfg = write(workdir / "s.ini", T2_SWEEP)
    spec = config.load_sweep(cfg)
    cli.run_sweep(spec)
    full = (workdir / "out/t2.csv").read_text()
    lines = full.splitlines(keepends=True)
    data_start = next(i for i, l in enumerate(lines) if not l.startswith("#")) + 1
    # simulate an interruption after 37 rows with a torn last line; mark the
    # kept rows so we can tell they were not recomputed
    kept = [l.replace(",\n", ",kept\n") for l in lines[data_start:data_start + 37]]
    partial = "".join(lines[:data_start] + kept) + lines[data_start + 37][:7]
    (workdir / "out/t2.csv").unlink()
    (workdir / "out/t2.csv.partial").write_text(partial)
    cli.run_sweep(spec)
    rows = read_rows(workdir / "out/t2.csv")
    assert len(rows) == 100
    assert sum(r["error"] == "kept" for r in rows) == 37
    assert not (workdir / "out/t2.csv.partial").exists()
    # --force recomputes everything
    assert cli.main(["sweep", cfg, "--force"]) == 0
    assert (workdir / "out/t2.csv").read_text() == full


def test_sweep_error_column(workdir):
    text = T2_SWEEP.replace("gamma = log:1e-3:1:10", "gamma = 0, 0.1").replace("omega_p = 0.5:5:10", "omega_p = 1")
    assert cli.main(["sweep", write(workdir / "s.ini", text)]) == 0
    rows = read_rows(workdir / "out/t2.csv")
    assert rows[0]["error"].startswith("DomainError:") and rows[0]["t2_te"] == "nan"
    assert rows[1]["error"] == ""


def test_sweep_deterministic_across_workers(workdir):
    cfg = write(workdir / "s.ini", T2_SWEEP.replace("target = t2", "target = f_linear").replace(
        "gamma = log:1e-3:1:10\n", ""))
    cli.main(["sweep", cfg, "-o", "w1.csv", "-w", "1"])
    cli.main(["sweep", cfg, "-o", "w3.csv", "-w", "3"])
    assert Path("w1.csv").read_bytes() == Path("w3.csv").read_bytes()


def test_entropy_diverges_column(workdir):
    text = T2_SWEEP.replace("target = t2", "target = entropy").replace("[grid]", "[state]\nT = 1e-3\n\n[law]\nmu1 = 1\n\n[grid]") \
        .replace("gamma = log:1e-3:1:10\nomega_p = 0.5:5:10", "alpha = 0.5, 1, 2")
    assert cli.main(["sweep", write(workdir / "s.ini", text)]) == 0
    rows = read_rows(workdir / "out/t2.csv")
    assert [r["diverges"] for r in rows] == ["1", "1", "0"]


@pytest.mark.parametrize("drop,key", [("omega_p = 1.0\n", "omega_p"), ("a = 1.0\n", "a"),
                                      ("target = t2\n", "target"), ("kind = planar\n", "kind")])
def test_missing_key_exit_2(workdir, capsys, drop, key):
    text = T2_SWEEP.replace("omega_p = 0.5:5:10\n", "").replace(drop, "", 1)
    assert cli.main(["sweep", write(workdir / "s.ini", text)]) == 2
    assert repr(key) in capsys.readouterr().err


def test_unknown_key_and_bad_section(workdir):
    assert cli.main(["sweep", write(workdir / "s.ini", T2_SWEEP + "\n[model]\n")]) == 2
    bad = T2_SWEEP.replace("a = 1.0", "a = 1.0\nomega = 3")
    assert cli.main(["sweep", write(workdir / "b.ini", bad)]) == 2
    misplaced = T2_SWEEP.replace("a = 1.0", "a = 1.0\nT = 1")
    assert cli.main(["sweep", write(workdir / "c.ini", misplaced)]) == 2
    assert cli.main(["sweep", str(workdir / "missing.ini")]) == 2


def test_entropy_command(workdir, capsys):
    assert cli.main(["entropy", write(workdir / "e.ini", ENTROPY.format(alpha=2))]) == 0
    out = dict(l.split(" = ") for l in capsys.readouterr().out.splitlines())
    assert float(out["s0"]) + float(out["s1"]) == pytest.approx(float(out["total"]))
    assert out["diverges"] == "0" and float(out["residual"]) > 0
    assert cli.main(["entropy", write(workdir / "f.ini", ENTROPY.format(alpha=1))]) == 0
    out = dict(l.split(" = ") for l in capsys.readouterr().out.splitlines())
    assert out["diverges"] == "1"


def test_entropy_rejects_grid(workdir):
    text = ENTROPY.format(alpha=2) + "\n[grid]\nT = 1e-3, 1e-4\n"
    assert cli.main(["entropy", write(workdir / "e.ini", text)]) == 2


def test_figure_command_and_no_partial_on_failure(workdir, monkeypatch):
    assert cli.main(["figure", "fig2R", "-o", "f.csv"]) == 0
    text = Path("f.csv").read_text()
    assert "# figure = fig2R" in text and len(read_rows("f.csv")) == 100

    def boom(*args):
        raise ArithmeticError("synthetic")

    monkeypatch.setattr(cli, "figure_row", boom)
    assert cli.main(["figure", "fig2R", "-o", "g.csv"]) == 3
    assert not Path("g.csv").exists() and not Path("g.csv.tmp").exists()


def test_worker_env(monkeypatch):
    monkeypatch.setenv("CASIMIR_WORKERS", "3")
    assert cli.worker_count() == 3
    assert cli.worker_count(2) == 2
    monkeypatch.setenv("CASIMIR_WORKERS", "x")
    with pytest.raises(ConfigError):
        cli.worker_count()


def test_validate_subset_json(workdir, capsys):
    code = cli.main(["validate", "--only", "1,2", "-o", "r.json"])
    assert code == 0
    doc = json.loads(Path("r.json").read_text())
    assert [c["id"] for c in doc["criteria"]] == [1, 2] and doc["passed"]
    assert "criterion  1: PASS" in capsys.readouterr().err
    assert cli.main(["validate", "--only", "12"]) == 2


def test_module_entry_point(workdir):
    res = subprocess.run([sys.executable, "-m", "casimir_entropy", "--version"], capture_output=True, text=True)
    assert res.returncode == 0 and "casimir-entropy" in res.stdout
    res = subprocess.run([sys.executable, "-m", "casimir_entropy", "figure", "nope"], capture_output=True, text=True)
    assert res.returncode == 2
