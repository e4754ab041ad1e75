"""Command line behaviour: exit codes, outputs, determinism."""

import json
import os

import numpy as np

from toeprange import cli
from toeprange.operators import counterexample_spec, spec_to_doc, symbol, validate_spec
from toeprange.ranges import RangeReport

COUNTEREXAMPLE = os.path.join(os.path.dirname(__file__), "..", "specs", "counterexample.json")
FREE_JACOBI = os.path.join(os.path.dirname(__file__), "..", "specs", "free_jacobi.json")


def write_spec(tmp_path, doc, name="spec.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc), encoding="utf-8")
    return str(path)


class TestValidate:
    def test_bundled_counterexample(self, capsys):
        assert cli.main(["validate", COUNTEREXAMPLE]) == 0
        echoed = json.loads(capsys.readouterr().out)
        spec = validate_spec(echoed)
        want = counterexample_spec()
        for r in range(-2, 3):
            assert np.array_equal(spec.diagonal(r), want.diagonal(r))

    def test_wrong_diagonal_length(self, tmp_path, capsys):
        path = write_spec(
            tmp_path, {"period": 3, "band": 1, "diagonals": {"1": [1.0, 2.0]}}
        )
        assert cli.main(["validate", path]) == 3
        assert "diagonal 1" in capsys.readouterr().err

    def test_missing_file(self, tmp_path):
        assert cli.main(["validate", str(tmp_path / "absent.json")]) == 2

    def test_malformed_json(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json", encoding="utf-8")
        assert cli.main(["validate", str(path)]) == 2

    def test_echo_is_normalized(self, tmp_path, capsys):
        path = write_spec(tmp_path, {"period": 2, "band": 2, "diagonals": {"1": [-1, 2]}})
        assert cli.main(["validate", path]) == 0
        echoed = json.loads(capsys.readouterr().out)
        assert sorted(echoed["diagonals"]) == ["-1", "-2", "0", "1", "2"]


class TestSymbol:
    def test_matches_library(self, capsys):
        assert cli.main(["symbol", COUNTEREXAMPLE, "--theta", "0.9"]) == 0
        doc = json.loads(capsys.readouterr().out)
        got = np.array([[complex(re, im) for re, im in row] for row in doc["matrix"]])
        assert np.max(np.abs(got - symbol(counterexample_spec(), 0.9))) < 1e-15


class TestRange:
    def test_report_doc_roundtrips(self, tmp_path):
        out = tmp_path / "report.json"
        code = cli.main(
            ["range", COUNTEREXAMPLE, "--theta-count", "24", "--phi-count", "24",
             "--out", str(out)]
        )
        assert code == 0
        report = RangeReport.from_dict(json.loads(out.read_text()))
        assert report.theta_count == 24
        assert report.samples.shape == (24 * 24,)

    def test_flat_table_deterministic(self, tmp_path):
        args = ["range", COUNTEREXAMPLE, "--theta-count", "18", "--phi-count", "18",
                "--format", "flat-table"]
        first = tmp_path / "a.txt"
        second = tmp_path / "b.txt"
        assert cli.main(args + ["--out", str(first)]) == 0
        assert cli.main(args + ["--out", str(second)]) == 0
        assert first.read_bytes() == second.read_bytes()
        header = first.read_text().splitlines()[0]
        assert header == "theta phi support_value x y"

    def test_svg_with_overlays(self, tmp_path):
        out = tmp_path / "fig.svg"
        code = cli.main(
            ["range", COUNTEREXAMPLE, "--theta-count", "30", "--phi-count", "60",
             "--format", "svg", "--overlay-thetas", "6", "--out", str(out)]
        )
        assert code == 0
        text = out.read_text()
        assert text.startswith("<svg")
        assert text.count("<path") == 7  # six dotted overlays plus the hull
        assert 'stroke="red"' in text

    def test_write_failure_exit_code(self, tmp_path):
        missing_dir = tmp_path / "no" / "such" / "dir" / "x.json"
        code = cli.main(
            ["range", COUNTEREXAMPLE, "--theta-count", "6", "--phi-count", "6",
             "--out", str(missing_dir)]
        )
        assert code == 4

    def test_no_partial_file_on_failure(self, tmp_path):
        target = tmp_path / "out.json"
        code = cli.main(
            ["range", COUNTEREXAMPLE, "--theta-count", "6", "--phi-count", "6",
             "--out", str(target)]
        )
        assert code == 0
        leftovers = [p for p in tmp_path.iterdir() if p.name.startswith(".toeprange-")]
        assert leftovers == []


class TestInterval:
    def test_free_jacobi(self, capsys):
        assert cli.main(["interval", FREE_JACOBI, "--theta-count", "400"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert abs(doc["a"] + 2.0) < 1e-5
        assert abs(doc["b"] - 2.0) < 1e-5

    def test_non_selfadjoint_rejected(self, capsys):
        assert cli.main(["interval", COUNTEREXAMPLE, "--theta-count", "8"]) == 3
        assert "selfadjoint" in capsys.readouterr().err


class TestVerify:
    def test_counterexample_passes(self, capsys):
        code = cli.main(
            ["verify", COUNTEREXAMPLE, "--theta-count", "120", "--phi-count", "120",
             "--s", "3", "--s", "4", "--s", "6"]
        )
        assert code == 0
        out = capsys.readouterr().out
        rows = [line for line in out.splitlines() if line and line[0].isdigit()]
        assert len(rows) == 3
        assert all(row.endswith("PASS") for row in rows)

    def test_random_spec_passes(self, tmp_path):
        rng = np.random.default_rng(50)
        from toeprange.operators import random_spec

        spec = random_spec(rng, 3, 2)
        path = write_spec(tmp_path, spec_to_doc(spec))
        code = cli.main(
            ["verify", path, "--theta-count", "90", "--phi-count", "90", "--s", "2",
             "--s", "4"]
        )
        assert code == 0

    def test_precondition_violation(self, capsys):
        code = cli.main(["verify", COUNTEREXAMPLE, "--s", "2", "--theta-count", "8",
                         "--phi-count", "8"])
        assert code == 3
        assert "precondition" in capsys.readouterr().err

    def test_tolerance_breach_exit_code(self, capsys):
        code = cli.main(
            ["verify", COUNTEREXAMPLE, "--theta-count", "60", "--phi-count", "60",
             "--s", "3", "--tol-scale", "1e-12"]
        )
        assert code == 5
        assert "FAIL" in capsys.readouterr().out


class TestCounterexample:
    def test_report_roundtrips(self, tmp_path, capsys):
        out = tmp_path / "report.json"
        code = cli.main(
            ["counterexample", "--theta-count", "90", "--phi-count", "90",
             "--direction-count", "90", "--out", str(out)]
        )
        assert code == 0
        summary = capsys.readouterr().out
        assert "hyperbolic: False" in summary
        doc = json.loads(out.read_text())
        range_report, pipeline = cli.parse_counterexample_doc(doc)
        assert range_report.theta_count == 90
        assert not pipeline.verdict.hyperbolic

    def test_refinement_shrinks_quartic_residual(self):
        coarse, _ = cli.counterexample_doc(
            cli.RunConfig(command="counterexample", theta_count=120, phi_count=120,
                          direction_count=16)
        )
        fine, _ = cli.counterexample_doc(
            cli.RunConfig(command="counterexample", theta_count=360, phi_count=360,
                          direction_count=16)
        )
        assert fine["quartic_residual_max"] < coarse["quartic_residual_max"]


class TestPlot:
    def test_default_overlays(self, tmp_path):
        out = tmp_path / "fig.svg"
        code = cli.main(
            ["plot", COUNTEREXAMPLE, "--theta-count", "30", "--phi-count", "60",
             "--out", str(out)]
        )
        assert code == 0
        assert out.read_text().count("<path") == 7

    def test_single_point_plot(self, tmp_path):
        spec_path = write_spec(
            tmp_path, {"period": 1, "band": 0, "diagonals": {"0": [[0.5, -0.5]]}}
        )
        out = tmp_path / "point.svg"
        code = cli.main(
            ["plot", spec_path, "--theta-count", "6", "--phi-count", "6",
             "--overlay-thetas", "0", "--out", str(out)]
        )
        assert code == 0
        assert "<circle" in out.read_text()


class TestConfigValidation:
    def test_bad_counts(self):
        assert cli.main(["range", COUNTEREXAMPLE, "--theta-count", "0"]) == 3
        assert cli.main(["range", COUNTEREXAMPLE, "--phi-count", "2"]) == 3
