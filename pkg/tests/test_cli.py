import csv
import io
import json
import subprocess
import sys
from fractions import Fraction

import numpy as np
import pytest

from gfourier.cli import main


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.reader(io.StringIO(text)))


def test_kernel_grid_row_count(capsys):
    code, out, _ = run(["kernel", "--family", "cft", "--m", "2"], capsys)
    assert code == 0
    table = rows(out)
    assert len(table) == 101
    assert table[0] == ["x1", "x2", "y1", "y2", "re_1", "im_1", "re_e1", "im_e1", "re_e2", "im_e2", "re_e12", "im_e12"]


def test_kernel_excluded_alpha(capsys):
    code, _, err = run(["kernel", "--family", "fractional", "--alpha", "0"], capsys)
    assert code == 2
    assert "excluded" in err


def test_j_only_with_class(capsys):
    code, _, err = run(["kernel", "--family", "cft", "--m", "4", "--j", "1"], capsys)
    assert code == 2 and "--j" in err


def test_radial_closed_matches_series(capsys):
    base = ["kernel", "--family", "radial", "--a", "1", "--m", "3"]
    _, closed, _ = run(base + ["--mode", "closed"], capsys)
    _, series, _ = run(base + ["--mode", "series"], capsys)
    a = np.array(rows(closed)[1:], dtype=float)
    b = np.array(rows(series)[1:], dtype=float)
    assert a.shape == b.shape
    assert np.max(np.abs(a - b)) < 1e-9


def test_kernel_csv_grid_file(tmp_path, capsys):
    pts = tmp_path / "pts.csv"
    pts.write_text("1,0,0,1\n0.5,0.5,1,-1\n")
    code, out, _ = run(["kernel", "--family", "cft", "--m", "2", "--mode", "closed", "--grid", str(pts)], capsys)
    assert code == 0
    table = rows(out)
    assert len(table) == 3
    assert float(table[1][4]) == pytest.approx(np.cos(1.0), abs=1e-15)
    assert float(table[1][10]) == pytest.approx(np.sin(1.0), abs=1e-15)


def test_config_file_and_flag_precedence(tmp_path, capsys):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"family": "cft", "m": 2, "grid": "3"}))
    code, out, _ = run(["--config", str(cfg), "kernel"], capsys)
    assert code == 0 and len(rows(out)) == 10
    code, out, _ = run(["--config", str(cfg), "kernel", "--grid", "4"], capsys)
    assert code == 0 and len(rows(out)) == 17


def test_config_unknown_key(tmp_path, capsys):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"familly": "cft"}))
    code, _, err = run(["--config", str(cfg), "kernel"], capsys)
    assert code == 2 and "familly" in err


def test_basis_exact_json(capsys):
    code, out, _ = run(["basis", "--m", "2", "--k", "1", "--kind", "monogenic"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["dimension"] == len(doc["elements"]) == 4
    for elem in doc["elements"]:
        for term in elem:
            Fraction(term["coeff"])
            assert isinstance(term["exponents"], list)


def test_verify_algebra_green(capsys):
    code, out, _ = run(["verify", "algebra", "--quick"], capsys)
    report = json.loads(out)
    assert code == 0
    assert report["status"] == "pass"
    for chk in report["checks"]:
        assert set(chk) >= {"name", "status", "max_error", "tolerance"}
        assert chk["status"] == "pass"


def test_verify_kernels_m4(capsys):
    code, out, _ = run(["verify", "kernels", "--m", "4"], capsys)
    report = json.loads(out)
    assert code == 0, [c for c in report["checks"] if c["status"] != "pass"]
    names = " ".join(c["name"] for c in report["checks"])
    assert "series vs closed" in names and "system" in names


def test_verify_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(["verify", "specfun", "--out", str(a)], capsys)
    run(["verify", "specfun", "--out", str(b)], capsys)
    assert a.read_bytes() == b.read_bytes()


def test_verify_only_filter(capsys):
    code, out, _ = run(["verify", "harmonics", "--only", "monogenic"], capsys)
    report = json.loads(out)
    assert code == 0 and len(report["checks"]) >= 1
    assert all("monogenic" in c["name"] for c in report["checks"])


def test_eigen_deformed(capsys):
    code, out, _ = run(["eigen", "--family", "deformed", "--c", "1", "--m", "2"], capsys)
    assert code == 0
    table = rows(out)
    assert table[0] == ["j", "k", "member", "predicted_re", "predicted_im", "measured_re", "measured_im", "rel_error"]
    assert len(table) == 10
    assert max(float(r[-1]) for r in table[1:]) < 1e-6


def test_eigen_fourier_bessel(capsys):
    code, out, _ = run(["eigen", "--family", "cft_class", "--m", "4", "--j", "0", "--max-j", "2", "--max-k", "0"], capsys)
    assert code == 0
    for r in rows(out)[1:]:
        p, k = int(r[0]), int(r[1])
        if p % 2 == 0 and k == 0:
            assert float(r[3]) == (-1) ** (p // 2)
        assert float(r[-1]) < 1e-5


def test_console_script_entry():
    proc = subprocess.run(
        [sys.executable, "-m", "gfourier.cli", "kernel", "--family", "classical", "--m", "3", "--grid", "2"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert len(proc.stdout.strip().splitlines()) == 5
