"""Command-line front end: outputs, schemas, determinism, exit codes."""

import json
import math

import numpy as np
import pytest

from sqg_vstates.cli import EXIT_GUARD, EXIT_OK, main

SPECTRUM_HEADER = "m,C_m,D_m,Delta_m,lambda_minus,lambda_plus,omega_minus,omega_plus,transversal"


def run_branch(tmp_path, name="branch.json", steps=2, extra=()):
    out = tmp_path / name
    code = main([
        "branch", "--b", "0.6", "--m", "5", "--sign", "plus",
        "--steps", str(steps), "--ds", "1e-3",
        "--modes", "4", "--quad", "320", "--out", str(out), *extra,
    ])
    assert code == EXIT_OK
    return out


class TestSpectrumCommand:
    def test_default_range_csv(self, tmp_path):
        out = tmp_path / "spec.csv"
        assert main(["spectrum", "--b", "0.5", "--out", str(out)]) == EXIT_OK
        lines = out.read_text().strip().splitlines()
        assert lines[0] == SPECTRUM_HEADER
        assert len(lines) == 22  # N(0.5)=3 .. N+20, inclusive
        rows = [line.split(",") for line in lines[1:]]
        assert [int(r[0]) for r in rows] == list(range(3, 24))
        assert all(r[8] == "true" for r in rows)
        # Omega = (1 - lambda)/2 mapping, columns are round-trip exact
        for r in rows:
            lam_minus, lam_plus = float(r[4]), float(r[5])
            om_minus, om_plus = float(r[6]), float(r[7])
            assert om_plus == 0.5 * (1.0 - lam_minus)
            assert om_minus == 0.5 * (1.0 - lam_plus)

    def test_deterministic_output(self, tmp_path):
        out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
        main(["spectrum", "--b", "0.37", "--out", str(out1)])
        main(["spectrum", "--b", "0.37", "--out", str(out2)])
        assert out1.read_bytes() == out2.read_bytes()

    def test_json_format(self, tmp_path):
        out = tmp_path / "spec.json"
        assert main(["spectrum", "--b", "0.5", "--m-min", "3", "--m-max", "5",
                     "--format", "json", "--out", str(out)]) == EXIT_OK
        data = json.loads(out.read_text())
        assert [row["m"] for row in data] == [3, 4, 5]
        assert all(row["transversal"] for row in data)

    def test_below_threshold_guard(self, tmp_path, capsys):
        code = main(["spectrum", "--b", "0.5", "--m-min", "2", "--out", str(tmp_path / "x.csv")])
        assert code == EXIT_GUARD
        assert "threshold" in capsys.readouterr().err

    def test_invalid_b_is_usage_error(self):
        with pytest.raises(SystemExit) as exc:
            main(["spectrum", "--b", "1.2"])
        assert exc.value.code == 2


class TestThresholdCommand:
    def test_prints_bracketing(self, capsys):
        assert main(["threshold", "--b", "0.5"]) == EXIT_OK
        line = capsys.readouterr().out.strip()
        assert line.startswith("b=0.5 N=3 ")
        parts = dict(tok.split("=") for tok in line.split())
        assert float(parts["E[N-1]"]) <= 0.0 < float(parts["E[N]"])

    @pytest.mark.parametrize("b", ["0.1", "0.9"])
    def test_extreme_radii_well_defined(self, b, capsys):
        assert main(["threshold", "--b", b]) == EXIT_OK
        parts = dict(tok.split("=") for tok in capsys.readouterr().out.strip().split())
        assert int(parts["N"]) >= 2

    def test_invalid_b_is_usage_error(self):
        with pytest.raises(SystemExit) as exc:
            main(["threshold", "--b", "1.2"])
        assert exc.value.code == 2


class TestBranchCommand:
    def test_json_schema_and_contract(self, tmp_path):
        out = run_branch(tmp_path, steps=2)
        data = json.loads(out.read_text())
        assert data["b"] == 0.6 and data["m"] == 5 and data["sign"] == "plus"
        assert data["K"] == 4 and data["P"] == 320
        assert data["stopped_reason"] is None
        assert len(data["points"]) == 3
        assert data["points"][0]["s"] == 0.0
        for pt in data["points"]:
            assert len(pt["a"]) == 4 and len(pt["c"]) == 4
            assert pt["residual_norm"] <= 1e-10

    def test_deterministic_output(self, tmp_path):
        out1 = run_branch(tmp_path, "b1.json", steps=1)
        out2 = run_branch(tmp_path, "b2.json", steps=1)
        assert out1.read_bytes() == out2.read_bytes()

    def test_ten_steps_default_contract(self, tmp_path):
        out = run_branch(tmp_path, steps=10)
        data = json.loads(out.read_text())
        assert len(data["points"]) == 11  # includes s = 0
        assert [round(p["s"], 12) for p in data["points"]] == [
            round(k * 1e-3, 12) for k in range(11)
        ]
        assert all(p["residual_norm"] <= 1e-10 for p in data["points"])

    def test_boundaries_csv(self, tmp_path):
        run_branch(tmp_path, steps=1, extra=("--boundaries",))
        for idx in (0, 1):
            csv = tmp_path / f"branch.boundaries.{idx:03d}.csv"
            lines = csv.read_text().strip().splitlines()
            assert lines[0] == "theta,x1,y1,x2,y2"
            assert len(lines) == 513
            first = [float(v) for v in lines[1].split(",")]
            assert len(first) == 5

    def test_below_threshold_guard(self, tmp_path, capsys):
        code = main(["branch", "--b", "0.6", "--m", "2", "--steps", "1",
                     "--modes", "4", "--quad", "320", "--out", str(tmp_path / "x.json")])
        assert code == EXIT_GUARD


class TestRenderCommand:
    def test_round_trip_from_branch(self, tmp_path):
        src = run_branch(tmp_path, steps=1)
        out = tmp_path / "img.svg"
        assert main(["render", str(src), "--out", str(out)]) == EXIT_OK
        svg = out.read_text()
        assert svg.startswith("<svg ")
        assert svg.count("<polygon") == 2  # outer + inner of the last point
        assert svg.count("<circle") == 2  # dashed reference circles
        assert "viewBox" in svg

    def test_annulus_point_renders_circles(self, tmp_path):
        src = run_branch(tmp_path, steps=0)
        out = tmp_path / "img.svg"
        assert main(["render", str(src), "--points", "0", "--out", str(out)]) == EXIT_OK
        svg = out.read_text()
        data = json.loads(src.read_text())
        # the rendered outer polygon of the annulus point lies on |z| = 1
        pts_attr = svg.split('<polygon points="')[1].split('"')[0]
        xy = np.array([[float(u) for u in tok.split(",")] for tok in pts_attr.split()])
        assert np.abs(np.hypot(xy[:, 0], xy[:, 1]) - 1.0).max() <= 1e-6
        assert data["points"][0]["s"] == 0.0

    def test_mfold_symmetry_of_samples(self, tmp_path):
        # boundary points map onto themselves under rotation by 2 pi / m
        from sqg_vstates.contour import PatchPair, eval_maps

        src = run_branch(tmp_path, steps=2)
        data = json.loads(src.read_text())
        pt = data["points"][-1]
        patch = PatchPair(b=data["b"], m=data["m"], K=data["K"],
                          a=np.array(pt["a"]), c=np.array(pt["c"]),
                          omega=pt["omega"])
        rot = np.exp(2j * math.pi / data["m"])
        for theta in np.linspace(0.0, 2.0 * math.pi, 32, endpoint=False):
            z1, z2, _, _ = eval_maps(patch, theta)
            z1r, z2r, _, _ = eval_maps(patch, theta + 2.0 * math.pi / data["m"])
            assert abs(z1r - rot * z1) <= 1e-9
            assert abs(z2r - rot * z2) <= 1e-9

    def test_empty_selection(self, tmp_path):
        src = run_branch(tmp_path, steps=1)
        out = tmp_path / "img.svg"
        assert main(["render", str(src), "--points", "none", "--out", str(out)]) == EXIT_OK
        svg = out.read_text()
        assert "<polygon" not in svg
        assert svg.count("<circle") == 2

    def test_schema_violation_names_field(self, tmp_path, capsys):
        src = run_branch(tmp_path, steps=1)
        data = json.loads(src.read_text())
        del data["points"][1]["omega"]
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps(data))
        code = main(["render", str(bad), "--out", str(tmp_path / "img.svg")])
        assert code == EXIT_GUARD
        assert "points[1].omega" in capsys.readouterr().err

    def test_bad_point_index(self, tmp_path, capsys):
        src = run_branch(tmp_path, steps=1)
        code = main(["render", str(src), "--points", "7", "--out", str(tmp_path / "i.svg")])
        assert code == EXIT_GUARD


class TestCheckCommand:
    def test_reduced_suite_via_api(self, tmp_path):
        # the full default suite runs in the acceptance tests; here only
        # the plumbing: text table to a file, json format, exit code
        from sqg_vstates.verify import check_c3_c8

        reports = check_c3_c8(b_set=(0.4,), n_max=3, P=1024)
        assert all(r.passed for r in reports)

    def test_env_override_table_size(self, tmp_path, monkeypatch, capsys):
        monkeypatch.setenv("VSTATES_NMAX", "40")
        assert main(["threshold", "--b", "0.5"]) == EXIT_OK
        # N(0.9) = 14 <= 40 still fine; a tiny table must fail loudly
        monkeypatch.setenv("VSTATES_NMAX", "5")
        code = main(["threshold", "--b", "0.9"])
        assert code == EXIT_GUARD
        assert "enlarge" in capsys.readouterr().err


class TestUsageErrors:
    def test_unknown_command(self):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == 2

    def test_missing_required(self):
        with pytest.raises(SystemExit) as exc:
            main(["branch", "--b", "0.6"])
        assert exc.value.code == 2

    def test_missing_input_file(self, capsys):
        assert main(["render", "/nonexistent/branch.json"]) == 2
