"""CLI 테스트"""

import json

import pytest

from harsanyi.batch import BatchExtraction, ExtractionOutcome
from harsanyi.cli import build_parser, main
from harsanyi.constants import (
    ADDITIVE_CHECK_MAX_VARIABLES,
    EXIT_EMPTY_SELECTION,
    EXIT_INPUT_ERROR,
    EXIT_OK,
    MANIFEST_FILENAME,
    MODEL_FILENAME,
    REPORT_FILENAME,
)
from harsanyi.exporter import ReportExporter
from harsanyi.models import InteractionTable

FAST = ["--set", "model.epochs=3", "--set", "model.hidden_width=8", "-q"]
SMALL_SELECTION = ["--set", "dataset.filter=category-4", "--set", "dataset.max_samples=6"]


def _report(directory) -> dict:
    return json.loads((directory / REPORT_FILENAME).read_text(encoding="utf-8"))


@pytest.fixture(scope="module")
def trained_run(tmp_path_factory, wifi_path):
    """학습 + 추출까지 마친 실행 디렉토리"""
    out = tmp_path_factory.mktemp("run")
    common = ["--dataset", str(wifi_path), "-o", str(out), *FAST]
    assert main(["train", *common]) == EXIT_OK
    assert main(["extract", *common, *SMALL_SELECTION]) == EXIT_OK
    return out


class TestParser:
    """인자 파서"""

    def test_commands(self):
        parser = build_parser()
        for command in ("train", "extract", "metrics", "noise-study", "synth-check"):
            args = parser.parse_args([command])
            assert args.command == command

    def test_no_command(self):
        assert main([]) == EXIT_INPUT_ERROR


class TestTrain:
    """train 명령"""

    def test_writes_model_and_report(self, trained_run):
        assert (trained_run / MODEL_FILENAME).is_file()
        assert (trained_run / MANIFEST_FILENAME).is_file()

    def test_missing_dataset_writes_nothing(self, tmp_path):
        out = tmp_path / "out"
        code = main(["train", "--dataset", str(tmp_path / "none.txt"), "-o", str(out), *FAST])
        assert code == EXIT_INPUT_ERROR
        assert not out.exists()

    def test_bad_override(self, tmp_path, wifi_path):
        code = main([
            "train", "--dataset", str(wifi_path), "-o", str(tmp_path), "--set", "model.depth=3",
        ])
        assert code == EXIT_INPUT_ERROR


class TestExtract:
    """extract 명령"""

    def test_tables_written(self, trained_run):
        tables = sorted((trained_run / "tables").glob("*.hars"))
        assert len(tables) == 6
        block = _report(trained_run)["blocks"]["extraction"]
        assert block["n"] == 7
        assert block["success"] == 6
        assert block["max_residual"] <= 1e-9 * 1e3

    def test_context_variables_shrink_table(self, trained_run, wifi_path, tmp_path):
        code = main([
            "extract", "--dataset", str(wifi_path), "-o", str(tmp_path),
            "-m", str(trained_run / MODEL_FILENAME), *FAST, *SMALL_SELECTION,
            "--set", "extraction.context_variables=[5,6]",
            "--set", "extraction.quadrature_points=3",
        ])
        assert code == EXIT_OK
        block = _report(tmp_path)["blocks"]["extraction"]
        assert block["n"] == 5
        assert block["violations"] == 0

    def test_rerun_is_identical(self, trained_run, wifi_path):
        before = {p.name: p.read_bytes() for p in (trained_run / "tables").iterdir()}
        report_before = (trained_run / REPORT_FILENAME).read_bytes()
        common = ["--dataset", str(wifi_path), "-o", str(trained_run), *FAST]
        assert main(["extract", *common, *SMALL_SELECTION]) == EXIT_OK
        after = {p.name: p.read_bytes() for p in (trained_run / "tables").iterdir()}
        assert before == after
        assert (trained_run / REPORT_FILENAME).read_bytes() == report_before

    def test_empty_selection(self, tmp_path):
        path = tmp_path / "boards.data"
        path.write_text("".join(
            f"o,o,o,x,x,b,x,b,b,{'negative' if i % 2 else 'positive'}\n" for i in range(20)
        ))
        common = [
            "--set", "dataset.schema=tictactoe", "--dataset", str(path), "-o", str(tmp_path), *FAST,
        ]
        assert main(["train", *common]) == EXIT_OK
        assert main(["extract", *common, "--set", "dataset.filter=row1"]) == EXIT_EMPTY_SELECTION

    def test_missing_model(self, tmp_path, wifi_path):
        code = main(["extract", "--dataset", str(wifi_path), "-o", str(tmp_path / "none"), "-q"])
        assert code == EXIT_INPUT_ERROR


class TestMetrics:
    """metrics 명령"""

    def test_blocks(self, trained_run, tmp_path):
        out = tmp_path / "metrics"
        code = main([
            "metrics", "-t", str(trained_run), "-o", str(out), "-q",
            "--set", "analysis.dictionary_ks=[1,2,5]",
        ])
        assert code == EXIT_OK
        blocks = _report(out)["blocks"]
        for name in ("sparsity_curve", "rho_curve", "kappa", "histograms", "attribution"):
            assert name in blocks
        assert "gamma_curve" not in blocks
        sparsity = blocks["sparsity_curve"]
        assert len(sparsity["without_empty"]) == 127
        assert len(sparsity["with_empty"]) == 128
        assert (out / "sparsity_curve_without_empty.csv").is_file()

    def test_identical_peer_transfers_fully(self, trained_run, tmp_path):
        out = tmp_path / "gamma"
        code = main([
            "metrics", "-t", str(trained_run), "-p", str(trained_run), "-o", str(out), "-q",
            "--set", "analysis.transfer_trials=50",
        ])
        assert code == EXIT_OK
        gamma = _report(out)["blocks"]["gamma_curve"]
        assert all(g == 1.0 for g in gamma["gamma"] if g is not None)
        assert gamma["random_baseline"]["trials"] == 50

    def test_rerun_is_byte_identical(self, trained_run, tmp_path):
        out = tmp_path / "again"
        command = [
            "metrics", "-t", str(trained_run), "-p", str(trained_run), "-o", str(out), "-q",
            "--set", "analysis.transfer_trials=50",
        ]
        assert main(command) == EXIT_OK
        first = {p.name: p.read_bytes() for p in out.iterdir() if p.name != MANIFEST_FILENAME}
        assert main(command) == EXIT_OK
        second = {p.name: p.read_bytes() for p in out.iterdir() if p.name != MANIFEST_FILENAME}
        assert REPORT_FILENAME in first
        assert first == second

    def test_peer_with_other_samples_rejected(self, tmp_path):
        def batch(indices):
            outcomes = [
                ExtractionOutcome(i, 0, True, InteractionTable(2, [0.0, 1.0, 2.0, 0.5]), 0.0, 1e-9)
                for i in indices
            ]
            return BatchExtraction(total=3, success=2, failed=1, outcomes=outcomes)

        ReportExporter(tmp_path / "own").export_tables(batch([0, 2]))
        ReportExporter(tmp_path / "peer").export_tables(batch([0, 1]))
        code = main([
            "metrics", "-t", str(tmp_path / "own"), "-p", str(tmp_path / "peer"),
            "-o", str(tmp_path / "out"), "-q",
        ])
        assert code == EXIT_INPUT_ERROR

    def test_missing_tables(self, tmp_path):
        code = main(["metrics", "-t", str(tmp_path / "none"), "-o", str(tmp_path), "-q"])
        assert code == EXIT_INPUT_ERROR


class TestSynthCheck:
    """synth-check 명령"""

    def test_passes(self, tmp_path):
        code = main(["synth-check", "--max-n", "5", "--trials", "5", "-o", str(tmp_path), "-q"])
        assert code == EXIT_OK
        blocks = _report(tmp_path)["blocks"]
        assert all(check["passed"] for check in blocks["axioms"]["checks"])
        assert blocks["additive_game"]["nonzero_ranks"] == 5
        assert blocks["additive_game"]["kappa"] == pytest.approx(0.0, abs=1e-9)

    @pytest.mark.slow
    def test_additive_game_size_is_capped(self, tmp_path):
        code = main(["synth-check", "--max-n", "9", "--trials", "1", "-o", str(tmp_path), "-q"])
        assert code == EXIT_OK
        additive = _report(tmp_path)["blocks"]["additive_game"]
        assert additive["n"] == ADDITIVE_CHECK_MAX_VARIABLES
        assert additive["nonzero_ranks"] == ADDITIVE_CHECK_MAX_VARIABLES


class TestNoiseStudy:
    """noise-study 명령"""

    @pytest.mark.slow
    def test_grid(self, tmp_path, wifi_path):
        code = main([
            "noise-study", "--dataset", str(wifi_path), "-o", str(tmp_path),
            *FAST, *SMALL_SELECTION,
            "--set", "noise.label_ratios=[0.0,0.3]",
            "--set", "noise.input_strengths=[0.0]",
            "--set", "analysis.dictionary_ks=[1,5]",
        ])
        assert code == EXIT_OK
        points = _report(tmp_path)["blocks"]["noise_study"]["points"]
        assert [(p["sweep"], p["value"]) for p in points] == [
            ("label", 0.0), ("label", 0.3), ("input", 0.0)
        ]
        # δ=0 점은 r=0 결과 재사용
        assert points[2]["beta_bar"] == points[0]["beta_bar"]
        assert (tmp_path / "noise_study.csv").is_file()

    @pytest.mark.slow
    def test_noise_degrades_concepts(self, tmp_path, tictactoe_path):
        code = main([
            "noise-study", "--dataset", str(tictactoe_path), "-o", str(tmp_path), "-q",
            "--set", "dataset.schema=tictactoe",
            "--set", "dataset.filter=category-positive",
            "--set", "dataset.max_samples=40",
            "--set", "noise.label_ratios=[0.0,0.3]",
            "--set", "noise.input_strengths=[0.0,1.0]",
            "--set", "analysis.dictionary_ks=[10]",
        ])
        assert code == EXIT_OK
        points = {
            (p["sweep"], p["value"]): p
            for p in _report(tmp_path)["blocks"]["noise_study"]["points"]
        }
        clean = points[("label", 0.0)]
        assert points[("label", 0.3)]["beta_bar"] < clean["beta_bar"]
        assert points[("input", 1.0)]["rho"][0] < clean["rho"][0]
