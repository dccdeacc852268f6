import csv
import json
import math

import numpy as np
import pytest

from hcs import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def _rows(text):
    return list(csv.DictReader(text.splitlines()))


def test_amplitude_ground_along_z(capsys):
    code, out, _ = run(capsys, "amplitude", "--u", "0,0,0", "--grid", "z:-3:3:7,x:0:0:1,y:0:0:1")
    rows = _rows(out)
    assert code == 0 and len(rows) == 7
    for row in rows:
        z = float(row["z"])
        assert float(row["abs"]) == pytest.approx(math.exp(-abs(z)) / math.sqrt(math.pi), rel=1e-15)


def test_amplitude_origin(capsys):
    code, out, _ = run(capsys, "amplitude", "--u", "0,0.5,0", "--grid", "x:0:0:1")
    assert code == 0
    assert float(_rows(out)[0]["abs"]) == pytest.approx(0.338514, abs=1e-6)


def test_amplitude_z_major_order(capsys):
    _, out, _ = run(capsys, "amplitude", "--u", "0,0,0", "--grid", "x:0:1:2,z:0:1:2")
    xz = [(float(r["x"]), float(r["z"])) for r in _rows(out)]
    assert xz == [(0, 0), (1, 0), (0, 1), (1, 1)]


def test_amplitude_json_format(capsys):
    code, out, _ = run(capsys, "amplitude", "--u", "0,0,0", "--grid", "x:0:0:1", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["schema_version"] == "1" and doc["columns"][-1] == "abs"


@pytest.mark.parametrize(
    "argv",
    [
        ["amplitude", "--u", "0,0.5j,0", "--grid", "x:0:0:1"],
        ["amplitude", "--u", "0,0", "--grid", "x:0:0:1"],
        ["amplitude", "--u", "0,0,0", "--grid", "w:0:0:1"],
        ["amplitude", "--u", "0,0,2", "--grid", "x:0:0:1"],
        ["trajectory", "--k", "1,0,0", "--m", "1,0,0"],
        ["limit", "--q", "0,0,2", "--rho-list", "0.9"],
        ["limit", "--q", "0,0,1", "--rho-list", "1.2"],
        ["overlap", "--u", "0,0,0", "--v", "0,1.5i,0"],
        ["series-check", "--lambda1", "1.1", "--lambda2", "0.1"],
        ["verify", "--suite", "nope"],
        ["nosuchcommand"],
    ],
)
def test_invalid_parameters_exit_2(tmp_path, capsys, argv):
    out = tmp_path / "out.csv"
    code, _, err = run(capsys, *argv, *(["--out", str(out)] if argv[0] != "nosuchcommand" else []))
    assert code == 2
    assert err
    assert not out.exists()


def test_trajectory_inadmissible_exit_3(tmp_path, capsys):
    out = tmp_path / "t.csv"
    code, _, err = run(capsys, "trajectory", "--k", "0,0,0", "--m", "1.2,0,0", "--out", str(out))
    assert code == 3 and "theta" in err
    assert not out.exists()


def test_trajectory_example(tmp_path, capsys):
    out = tmp_path / "t.csv"
    code, _, _ = run(capsys, "trajectory", "--k", "0,0,0", "--m", "0.2,0,0", "--samples", "4", "--out", str(out))
    assert code == 0
    rows = _rows(out.read_text())
    assert [float(rows[0][c]) for c in "xyz"] == pytest.approx([-5 / 6, 0, 0], abs=1e-12)
    assert [float(rows[1][c]) for c in "xyz"] == pytest.approx([0, 0, 0], abs=1e-12)
    side = json.loads((tmp_path / "t.csv.json").read_text())
    assert side["residual"] < 1e-10
    assert side["semi_axes"][0] == pytest.approx(5 / 6)


def test_trajectory_residual_small(tmp_path, capsys):
    out = tmp_path / "t.csv"
    run(capsys, "trajectory", "--k", "0.1,0.2,0", "--m", "0,0,0.35", "--theta", "0.4", "--out", str(out))
    assert json.loads((tmp_path / "t.csv.json").read_text())["residual"] < 1e-10


def test_verify_norms(tmp_path, capsys):
    out = tmp_path / "r.json"
    code, _, _ = run(capsys, "verify", "--suite", "norms", "--tol", "1e-8", "--seed", "7", "--out", str(out))
    report = json.loads(out.read_text())
    assert code == 0
    assert report["schema_version"] == "1" and report["rng"]
    assert len(report["cases"]) == 20 and all(c["pass"] for c in report["cases"])
    assert set(report["cases"][0]) == {"suite", "case", "value", "tolerance", "pass"}


def test_verify_commutators(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "commutators", "--cutoff", "8")
    cases = json.loads(out)["cases"]
    assert code == 0 and len(cases) == 45
    assert max(c["value"] for c in cases) < 1e-10


def test_verify_failure_exit_1(tmp_path, capsys):
    out = tmp_path / "r.json"
    code, _, _ = run(capsys, "verify", "--suite", "norms", "--tol", "1e-30", "--out", str(out))
    assert code == 1
    assert json.loads(out.read_text())["pass"] is False


def test_verify_repeatable_suite_flag(capsys):
    _, out, _ = run(capsys, "verify", "--suite", "hardy-hille", "--suite", "bessel")
    assert {c["suite"] for c in json.loads(out)["cases"]} == {"hardy-hille", "bessel"}


def test_verify_reproducible_with_threads(tmp_path, capsys, monkeypatch):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(capsys, "verify", "--suite", "norms,overlap,position", "--seed", "3", "--out", str(a))
    monkeypatch.setenv("HCS_THREADS", "4")
    run(capsys, "verify", "--suite", "norms,overlap,position", "--seed", "3", "--out", str(b))
    assert a.read_bytes() == b.read_bytes()


def test_limit(capsys):
    code, out, _ = run(capsys, "limit", "--q", "0,0,1", "--rho-list", "0.9,0.99")
    rows = _rows(out)
    assert code == 0
    assert float(rows[0]["expect_r"]) == pytest.approx(19.0526315789, rel=1e-10)
    assert float(rows[1]["expect_r"]) == pytest.approx(199.0050251256, rel=1e-10)
    assert float(rows[1]["flatness"]) < float(rows[0]["flatness"])


def test_overlap(capsys):
    code, out, _ = run(capsys, "overlap", "--u", "0,0,0", "--v", "0,0.5,0")
    doc = json.loads(out)
    assert code == 0 and doc["abs"] == pytest.approx(0.75, abs=1e-12)
    assert doc["rel_err"] < 1e-8
    _, out, _ = run(capsys, "overlap", "--u", "0.1+0.2i,0,0.3", "--v", "0.1+0.2i,0,0.3")
    assert json.loads(out)["abs"] == pytest.approx(1.0, abs=1e-10)


def test_series_check(tmp_path, capsys):
    out = tmp_path / "s.csv"
    code, stdout, _ = run(capsys, "series-check", "--lambda1", "0.3", "--lambda2=0.2i", "--out", str(out))
    summary = json.loads(stdout)
    assert code == 0 and summary["pass"] and summary["max_abs_diff"] < 1e-10
    assert len(_rows(out.read_text())) == 27


@pytest.mark.parametrize(
    "argv",
    [
        ["amplitude", "--u", "0.1+0.1i,0.2,-0.1i", "--grid", "x:-1:1:4,y:0:1:3,z:-2:2:5"],
        ["trajectory", "--k", "0.1,0,0", "--m", "0,0.3,0", "--samples", "16"],
        ["limit", "--q", "0.6,0,0.8", "--rho-list", "0.5,0.9"],
    ],
)
def test_byte_identical_output(tmp_path, capsys, argv):
    a, b = tmp_path / "a.out", tmp_path / "b.out"
    assert cli.main([*argv, "--out", str(a)]) == 0
    assert cli.main([*argv, "--out", str(b)]) == 0
    capsys.readouterr()
    assert a.read_bytes() == b.read_bytes()


def test_csv_full_precision(capsys):
    _, out, _ = run(capsys, "amplitude", "--u", "0,0.3,0", "--grid", "x:0.1:0.1:1")
    row = _rows(out)[0]
    expected = float(row["abs"])
    assert float(repr(expected)) == expected
    assert np.isclose(float(row["re"]) ** 2 + float(row["im"]) ** 2, expected**2, rtol=1e-15)


def test_grid_parser():
    axes = cli.parse_grid("z:-1:1:3")
    np.testing.assert_array_equal(axes["z"], [-1, 0, 1])
    np.testing.assert_array_equal(axes["x"], [0])
    with pytest.raises(ValueError):
        cli.parse_grid("x:0:1:0")
    with pytest.raises(ValueError):
        cli.parse_grid("x:0:1:2,x:0:1:2")
