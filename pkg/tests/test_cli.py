import json
from pathlib import Path

import pytest

from apxlat.cli import main


def run(args):
    try:
        return main(args)
    except SystemExit as exc:
        return exc.code


def read_json(path):
    return json.loads(Path(path).read_text(encoding="utf-8"))


class TestModelset:
    def test_zp_integers(self, tmp_path):
        out = tmp_path / "run"
        code = run(
            ["modelset", "--scheme", "zp", "--p", "2", "--window-exp", "0",
             "--range", "5", "--out-dir", str(out)]
        )
        assert code == 0
        lines = (out / "points.csv").read_text().splitlines()
        assert lines[0] == "physical_exact,internal_exact,physical_float,internal_float"
        phys = sorted(ln.split(",")[0] for ln in lines[1:])
        assert len(phys) == 11 and "-5/2^0" in phys
        assert (out / "figure.svg").exists()
        prov = read_json(out / "provenance.json")
        assert prov["window_recheck"] is True
        assert prov["config"]["scheme"] == "zp"

    def test_missing_range_is_config_error(self, tmp_path):
        code = run(["modelset", "--scheme", "zp", "--p", "2", "--window-exp",
                    "0", "--out-dir", str(tmp_path)])
        assert code == 2

    def test_no_figure_flag(self, tmp_path):
        code = run(["modelset", "--scheme", "fibonacci", "--window", "1",
                    "--range", "10", "--out-dir", str(tmp_path), "--no-figure"])
        assert code == 0
        assert not (tmp_path / "figure.svg").exists()

    def test_config_file_supplies_defaults(self, tmp_path):
        cfg = tmp_path / "scheme.json"
        cfg.write_text(json.dumps({"scheme": "fibonacci", "window": "1", "range": "10"}))
        code = run(["modelset", "--config", str(cfg), "--out-dir", str(tmp_path)])
        assert code == 0
        assert read_json(tmp_path / "provenance.json")["config"]["scheme"] == "fibonacci"


class TestVerify:
    def test_approx_subgroup_integers(self, tmp_path):
        code = run(["verify", "--check", "approx-subgroup", "--scheme", "zp",
                    "--p", "2", "--window-exp", "0", "--range", "10",
                    "--margin", "20", "--out-dir", str(tmp_path)])
        assert code == 0
        rep = read_json(tmp_path / "verify_report.json")
        assert rep["certificate"]["validated"] is True
        assert rep["certificate"]["counts"]["translates"] == 3

    def test_not_symmetric_exit_one(self, tmp_path):
        elems = tmp_path / "pts.txt"
        elems.write_text("1\n2\n3\n")
        code = run(["verify", "--check", "approx-subgroup", "--elements-file",
                    str(elems), "--scalar", "rational", "--region", "3",
                    "--out-dir", str(tmp_path)])
        assert code == 1
        rep = read_json(tmp_path / "verify_report.json")
        assert rep["failure"]["kind"] == "not-symmetric"
        assert rep["failure"]["witness"]

    def test_meyer_not_subset_exit_one(self, tmp_path):
        alien = tmp_path / "m.txt"
        alien.write_text("2+0*sqrt(5)\n")
        code = run(["verify", "--check", "meyer", "--scheme", "fibonacci",
                    "--window", "1", "--range", "40", "--region", "20",
                    "--m-file", str(alien), "--out-dir", str(tmp_path)])
        assert code == 1
        rep = read_json(tmp_path / "verify_report.json")
        assert rep["meyer"]["subset_ok"] is False

    def test_meyer_halfline_uncoverable_exit_three(self, tmp_path):
        code = run(["verify", "--check", "meyer", "--scheme", "fibonacci",
                    "--window", "1", "--range", "60", "--region", "30",
                    "--m-halfline", "--out-dir", str(tmp_path)])
        assert code == 3

    def test_meyer_drop_every_passes(self, tmp_path):
        code = run(["verify", "--check", "meyer", "--scheme", "fibonacci",
                    "--window", "1", "--range", "60", "--region", "30",
                    "--m-drop-every", "3", "--out-dir", str(tmp_path)])
        assert code == 0
        rep = read_json(tmp_path / "verify_report.json")
        assert rep["meyer"]["is_meyer"] is True

    def test_delone_report(self, tmp_path):
        code = run(["verify", "--check", "delone", "--scheme", "fibonacci",
                    "--window", "1", "--range", "40", "--interior", "20",
                    "--out-dir", str(tmp_path)])
        assert code == 0
        rep = read_json(tmp_path / "verify_report.json")
        assert len(rep["delone"]["gap_alphabet"]) <= 3
        assert (tmp_path / "gaps.svg").exists()

    def test_pullback(self, tmp_path):
        code = run(["verify", "--check", "pullback", "--scheme", "zp", "--p",
                    "2", "--window-exp", "1", "--range", "20",
                    "--out-dir", str(tmp_path)])
        assert code == 0
        rep = read_json(tmp_path / "verify_report.json")
        assert rep["pullback"]["containment_ok"] is True

    def test_commensurable_two_windows(self, tmp_path):
        code = run(["verify", "--check", "commensurable", "--scheme",
                    "fibonacci", "--window", "1", "--window-b", "2",
                    "--range", "60", "--region", "30", "--out-dir", str(tmp_path)])
        assert code == 0
        rep = read_json(tmp_path / "verify_report.json")
        assert len(rep["certificates"]) == 2
        assert all(c["validated"] for c in rep["certificates"])


class TestQuasi:
    def test_brooks_report(self, tmp_path):
        code = run(["quasi", "brooks", "--w", "xy", "--ball", "5", "--kernel",
                    "0", "--defect-ball", "4", "--out-dir", str(tmp_path)])
        assert code == 0
        rep = read_json(tmp_path / "quasi_brooks_report.json")
        assert rep["xny_in_A"]["-3"] is True and rep["xny_in_A"]["3"] is False
        assert rep["kernel"]["certificate"]["validated"] is True
        assert rep["empirical_defect"]["value"] == "1"

    def test_nearint_requires_seed(self, tmp_path):
        code = run(["quasi", "nearint", "--gamma", "1/2", "--pairs", "100",
                    "--out-dir", str(tmp_path)])
        assert code == 2

    def test_nearint_defects(self, tmp_path):
        code = run(["quasi", "nearint", "--gamma", "1/2", "--pairs", "5000",
                    "--seed", "7", "--out-dir", str(tmp_path)])
        assert code == 0
        rep = read_json(tmp_path / "quasi_nearint_report.json")
        assert rep["outliers"] == 0
        assert rep["max_defect"] == 1


class TestEuler:
    def test_report(self, tmp_path):
        code = run(["euler", "--triples", "200", "--seed", "42",
                    "--out-dir", str(tmp_path)])
        assert code == 0
        rep = read_json(tmp_path / "euler_report.json")
        assert rep["identity_failures"] == 0
        assert set(rep["beta_values"]) <= {0, 1}
        assert rep["beta_half_turn_squared"] == 1
        assert rep["max_residual"] < 1e-6

    def test_requires_seed(self, tmp_path):
        assert run(["euler", "--triples", "10", "--out-dir", str(tmp_path)]) == 2

    def test_kernel_subcommand(self, tmp_path):
        code = run(["euler-kernel", "--p", "2", "--ball", "3", "--no-diag",
                    "--seed", "1", "--out-dir", str(tmp_path)])
        assert code == 0
        rep = read_json(tmp_path / "euler_kernel_report.json")
        assert rep["certificate"]["validated"] is True


class TestFreeset:
    def test_trace(self, tmp_path):
        code = run(["freeset", "--y", "0:9", "--x", "1,2",
                    "--out-dir", str(tmp_path)])
        assert code == 0
        rep = read_json(tmp_path / "freeset_report.json")
        assert rep["b"] == ["0", "3", "6", "9"]
        assert rep["free"] and rep["maximal"]


class TestReproducibility:
    def test_reports_embed_config(self, tmp_path):
        run(["freeset", "--y", "0:5", "--x", "1", "--out-dir", str(tmp_path)])
        rep = read_json(tmp_path / "freeset_report.json")
        assert rep["config"]["y"] == "0:5" and rep["config"]["x"] == "1"

    def test_byte_identical_reruns(self, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        for out in (a, b):
            run(["modelset", "--scheme", "fibonacci", "--window", "1",
                 "--range", "20", "--out-dir", str(out)])
        for name in ("points.csv", "provenance.json", "figure.svg"):
            assert (a / name).read_bytes() == (b / name).read_bytes(), name
