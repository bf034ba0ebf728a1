"""Command-line interface: outputs, determinism, and exit codes."""

import json

import pytest

from extropy.cli import main
from extropy.forest import make_classification_data

EXAMPLE_TSV = "0\t0\t0.1\n0\t1\t0.2\n1\t0\t0.3\n1\t1\t0.4\n"


@pytest.fixture
def example_pmf_path(tmp_path):
    path = tmp_path / "example.tsv"
    path.write_text(EXAMPLE_TSV, encoding="utf-8")
    return path


@pytest.fixture
def synth_csv_path(tmp_path):
    X, y, names = make_classification_data(n_rows=120, seed=0)
    path = tmp_path / "synth.csv"
    lines = [",".join(names + ["label"])]
    for row, label in zip(X, y):
        lines.append(",".join(repr(float(v)) for v in row) + f",{label}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def run(args, tmp_path, name):
    out = tmp_path / name
    code = main([*args, "--out", str(out)])
    return code, out


class TestDist:
    def test_reports_extropy(self, example_pmf_path, tmp_path):
        code, out = run(
            ["dist", "--pmf", str(example_pmf_path), "--base", "natural"],
            tmp_path,
            "dist.json",
        )
        assert code == 0
        payload = json.loads(out.read_text())
        assert payload["results"]["extropy"] == pytest.approx(0.829507, abs=1e-6)
        assert payload["results"]["simpson_diversity"] == pytest.approx(0.7)
        assert payload["metadata"]["version"]

    def test_csv_format(self, example_pmf_path, tmp_path):
        code, out = run(
            ["dist", "--pmf", str(example_pmf_path), "--format", "csv"],
            tmp_path,
            "dist.csv",
        )
        assert code == 0
        text = out.read_text()
        assert text.startswith("# {")
        assert "extropy,0.829507" in text


class TestRate:
    def test_profile_columns(self, synth_csv_path, tmp_path):
        code, out = run(
            ["rate", "--data", str(synth_csv_path), "--target", "label"],
            tmp_path,
            "rate.csv",
        )
        assert code == 0
        lines = [l for l in out.read_text().splitlines() if not l.startswith("#")]
        assert lines[0] == "step,extropy_rate,entropy_rate,support_size"
        assert len(lines) == 1 + 8


class TestComplexity:
    def test_table_shape(self, tmp_path):
        code, out = run(["complexity"], tmp_path, "table.csv")
        assert code == 0
        lines = [l for l in out.read_text().splitlines() if not l.startswith("#")]
        assert lines[0] == "series,apen,pe,extropy_rate"
        assert len(lines) == 7
        assert lines[1].startswith("constant,0.000000,0.000000,0.000000")


class TestBifurcate:
    def test_row_count(self, tmp_path):
        code, out = run(
            [
                "bifurcate",
                "--map",
                "logistic",
                "--from",
                "2.5",
                "--to",
                "4.0",
                "--steps",
                "151",
                "--length",
                "100",
            ],
            tmp_path,
            "scan.csv",
        )
        assert code == 0
        lines = [l for l in out.read_text().splitlines() if not l.startswith("#")]
        assert len(lines) == 1 + 151

    def test_diagram_emitted(self, tmp_path):
        diagram = tmp_path / "diagram.csv"
        code, out = run(
            [
                "bifurcate",
                "--map",
                "henon",
                "--from",
                "1.0",
                "--to",
                "1.4",
                "--steps",
                "3",
                "--length",
                "60",
                "--diagram",
                str(diagram),
            ],
            tmp_path,
            "scan.csv",
        )
        assert code == 0
        assert diagram.exists()
        assert "parameter,orbit_value" in diagram.read_text()


class TestSelect:
    def test_all_methods(self, synth_csv_path, tmp_path):
        code, out = run(
            ["select", "--data", str(synth_csv_path), "--target", "label", "--k", "3"],
            tmp_path,
            "select.json",
        )
        assert code == 0
        methods = json.loads(out.read_text())["results"]["methods"]
        assert set(methods) == {"extropy", "mi", "chi2", "fscore"}
        assert len(methods["extropy"]["selected"]) == 3

    def test_baseline_needs_target(self, synth_csv_path, tmp_path):
        code, _ = run(
            ["select", "--data", str(synth_csv_path), "--k", "2", "--methods", "mi"],
            tmp_path,
            "select.json",
        )
        assert code == 2

    def test_extropy_without_target_ok(self, synth_csv_path, tmp_path):
        code, out = run(
            [
                "select",
                "--data",
                str(synth_csv_path),
                "--k",
                "2",
                "--methods",
                "extropy",
            ],
            tmp_path,
            "select.json",
        )
        assert code == 0
        payload = json.loads(out.read_text())
        # without a declared target every column including the label is profiled
        assert len(payload["results"]["columns"]) == 9


class TestEvaluate:
    def test_bit_identical_reruns(self, synth_csv_path, tmp_path):
        args = [
            "evaluate",
            "--data",
            str(synth_csv_path),
            "--target",
            "label",
            "--k",
            "3",
            "--seed",
            "42",
            "--trees",
            "10",
        ]
        code1, out1 = run(args, tmp_path, "eval1.json")
        code2, out2 = run(args, tmp_path, "eval2.json")
        assert code1 == 0 and code2 == 0
        assert out1.read_bytes() == out2.read_bytes()
        blocks = json.loads(out1.read_text())["results"]["methods"]
        assert set(blocks) == {"extropy", "mi", "chi2", "fscore"}
        for block in blocks.values():
            assert {"accuracy", "f1", "tpr", "confusion"} <= set(block)

    def test_positive_class_flag(self, synth_csv_path, tmp_path):
        base = [
            "evaluate",
            "--data",
            str(synth_csv_path),
            "--target",
            "label",
            "--k",
            "2",
            "--trees",
            "5",
            "--methods",
            "extropy",
        ]
        code, out = run([*base, "--positive-class", "0"], tmp_path, "flip.json")
        assert code == 0
        block = json.loads(out.read_text())["results"]["methods"]["extropy"]
        assert block["positive_class"] == "0"
        code, _ = run([*base, "--positive-class", "7"], tmp_path, "bad.json")
        assert code == 2


class TestExitCodes:
    def test_usage_error(self):
        assert main(["unknown-command"]) == 1
        assert main([]) == 1

    def test_data_error(self, tmp_path):
        assert main(["dist", "--pmf", str(tmp_path / "missing.tsv")]) == 2

    def test_validation_error_in_pmf(self, tmp_path):
        bad = tmp_path / "bad.tsv"
        bad.write_text("0\t0.9\n1\t0.9\n", encoding="utf-8")
        assert main(["dist", "--pmf", str(bad)]) == 2

    def test_help_exits_zero(self, capsys):
        assert main(["--help"]) == 0
        assert "extropy" in capsys.readouterr().out

    def test_no_partial_output_on_error(self, tmp_path):
        bad = tmp_path / "bad.tsv"
        bad.write_text("0\t0.9\n1\t0.9\n", encoding="utf-8")
        out = tmp_path / "report.json"
        assert main(["dist", "--pmf", str(bad), "--out", str(out)]) == 2
        assert not out.exists()
        assert not (tmp_path / "report.json.tmp").exists()


class TestOutputDirEnv:
    def test_bare_filename_routed(self, example_pmf_path, tmp_path, monkeypatch):
        monkeypatch.setenv("EXTROPY_OUT_DIR", str(tmp_path))
        monkeypatch.chdir(tmp_path)
        assert main(["dist", "--pmf", str(example_pmf_path), "--out", "routed.json"]) == 0
        assert (tmp_path / "routed.json").exists()
