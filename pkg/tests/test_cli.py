"""
Test della riga di comando (report JSON su stdout e codici di uscita)
"""

import json
import shutil
from pathlib import Path

import pytest

from cli.verifier_cli import EXIT_OK, EXIT_USAGE, build_parser, run


def _run(capsys, *argv):
    code = run(list(argv) + ["--no-progress"])
    out = capsys.readouterr().out
    return code, (json.loads(out) if out else None), out


class TestParser:

    def test_subcommands(self):
        args = build_parser().parse_args(["params", "--m", "1", "--a", "0"])
        assert args.command == "params"
        assert args.threads == 1

    def test_missing_required(self, capsys):
        assert run(["params", "--m", "1"]) == EXIT_USAGE

    def test_unknown_target(self, capsys):
        assert run(["verify", "nothing"]) == EXIT_USAGE

    @pytest.mark.parametrize("distance, weight", [("3", 2), ("2", 1)])
    def test_distance_sets_max_weight(self, distance, weight):
        args = build_parser().parse_args(["verify", "small9", "--distance", distance])
        assert args.max_weight == weight
        assert not hasattr(args, "distance")

    def test_distance_and_max_weight_exclusive(self, capsys):
        assert run(["verify", "small9", "--distance", "3", "--max-weight", "2"]) == EXIT_USAGE

    def test_distance_out_of_range(self, capsys):
        assert run(["verify", "small9", "--distance", "4"]) == EXIT_USAGE


class TestParams:

    def test_m1_a0(self, capsys):
        code, report, _ = _run(capsys, "params", "--m", "1", "--a", "0")
        assert code == EXIT_OK
        assert report["kind"] == "run_report"
        assert report["outcome"] == "pass"
        details = report["details"]
        assert details["N"] == 41
        assert details["K"] == "3*2^32"
        assert details["stabilizer_k"] == 33
        assert details["hamming_s"] == 7
        assert details["theorem_s"] == 8

    def test_seed_code(self, capsys):
        _, report, _ = _run(capsys, "params", "--m", "0", "--a", "1")
        assert report["details"]["small_code"] == "((10,24,3))"

    def test_inputs_echo(self, capsys):
        _, report, _ = _run(capsys, "params", "--m", "1", "--a", "1", "--threads", "4")
        assert report["inputs"] == {"a": 1, "command": "params", "m": 1}

    def test_negative_m(self, capsys):
        code, report, _ = _run(capsys, "params", "--m", "-1", "--a", "0")
        assert code == EXIT_USAGE
        assert report["outcome"] == "error"
        assert report["details"]["error"] == "DimensionError"


class TestLpBound:

    def test_theorem(self, capsys):
        code, report, _ = _run(capsys, "lpbound", "--n", "41")
        assert code == EXIT_OK
        assert report["details"]["min_s"] == 8
        assert report["details"]["hamming_s"] == 7

    def test_not_admissible(self, capsys):
        code, report, _ = _run(capsys, "lpbound", "--n", "20", "--mode", "theorem")
        assert code == EXIT_USAGE
        assert report["details"]["error"] == "NotAdmissibleError"

    def test_lp_infeasible_is_success(self, capsys):
        code, report, _ = _run(capsys, "lpbound", "--n", "41", "--mode", "lp", "--s", "7")
        assert code == EXIT_OK
        assert report["details"]["verdict"] == "infeasible"
        assert report["details"]["verified"] is True

    def test_lp_default_s(self, capsys):
        _, report, _ = _run(capsys, "lpbound", "--n", "42", "--mode", "lp")
        assert report["details"]["s_tested"] == 7


class TestVerify:

    def test_gottesman(self, capsys):
        code, report, _ = _run(capsys, "verify", "gottesman", "--r", "1")
        assert code == EXIT_OK
        assert report["counters"] == {"errors_checked": 4560, "violations": 0}
        assert report["details"]["parameters"] == "[[32,25,3]]"
        assert report["details"]["hamming_identity"] is True

    def test_output_independent_of_threads(self, capsys):
        _, _, single = _run(capsys, "verify", "gottesman", "--r", "1", "--threads", "1")
        _, _, multi = _run(capsys, "verify", "gottesman", "--r", "1", "--threads", "2")
        assert single == multi

    def test_small9_with_json(self, capsys, tmp_path):
        out = tmp_path / "small9.json"
        code, report, text = _run(capsys, "verify", "small9", "--json", str(out))
        assert code == EXIT_OK
        assert report["counters"] == {"errors_checked": 351, "violations": 0}
        assert report["details"]["dimension"] == "12"
        assert out.read_text(encoding="utf-8") == text

        session = json.loads((tmp_path / "small9.json.session.json").read_text(encoding="utf-8"))
        assert session["session_info"]["command"] == "verify"
        assert session["statistics"]["errors_checked"] == 351
        assert session["activities"][-1]["type"] == "run_end"

    def test_distance_alias_same_report(self, capsys):
        _, _, by_weight = _run(capsys, "verify", "gottesman", "--r", "1", "--max-weight", "2")
        _, _, by_distance = _run(capsys, "verify", "gottesman", "--r", "1", "--distance", "3")
        assert by_weight == by_distance

    def test_small9_distance2(self, capsys):
        code, report, _ = _run(capsys, "verify", "small9", "--distance", "2")
        assert code == EXIT_OK
        assert report["counters"] == {"errors_checked": 27, "violations": 0}
        assert report["inputs"]["max_weight"] == 1

    def test_gottesman_invalid_r(self, capsys):
        code, _, _ = _run(capsys, "verify", "gottesman", "--r", "0")
        assert code == EXIT_USAGE

    @pytest.mark.slow
    def test_pasted_m1(self, capsys):
        code, report, _ = _run(capsys, "verify", "pasted", "--m", "1", "--a", "0")
        assert code == EXIT_OK
        assert report["counters"]["errors_checked"] == 7503
        assert report["details"]["dimension"] == str(3 * 2 ** 32)

    @pytest.mark.slow
    def test_small10(self, capsys):
        code, report, _ = _run(capsys, "verify", "small10")
        assert code == EXIT_OK
        assert report["counters"] == {"errors_checked": 435, "violations": 0}
        details = report["details"]
        assert details["dimension"] == "24"
        assert details["trace_B0"] == str(2 ** 9)
        assert details["codeword_subsets"] == 24
        assert len(details["code"]["graph"]["edges"]) == 17

    @pytest.mark.slow
    def test_pasted_independent_of_threads(self, capsys):
        argv = ["verify", "pasted", "--m", "1", "--a", "0"]
        _, _, single = _run(capsys, *argv, "--threads", "1")
        _, _, multi = _run(capsys, *argv, "--threads", "3")
        assert single == multi


@pytest.mark.slow
class TestRecoverGraph10:

    def test_all_solutions_and_frozen_match(self, capsys, tmp_path):
        committed = Path(__file__).parent.parent / "data" / "g1.json"
        shutil.copy(committed, tmp_path / "g1.json")
        code, report, _ = _run(capsys, "recover-graph10", "--all", "--data-dir", str(tmp_path))
        assert code == EXIT_OK
        assert report["counters"] == {"candidates": 2 ** 15, "solutions": 1}
        details = report["details"]
        assert details["matches_frozen"] is True
        assert details["written"] == "g1.json"
        assert details["dimension"] == "24"
        assert details["candidate_index"] == 10379
        assert details["solution_graphs"] == [details["graph"]]
        assert (tmp_path / "g1.json").read_text(encoding="utf-8") == committed.read_text(encoding="utf-8")

    def test_empty_data_dir(self, capsys, tmp_path):
        code, report, _ = _run(capsys, "recover-graph10", "--data-dir", str(tmp_path))
        assert code == EXIT_OK
        assert report["details"]["matches_frozen"] is None
        assert "solution_graphs" not in report["details"]
        assert (tmp_path / "g1.json").exists()


class TestExport:

    def test_gottesman(self, capsys):
        code, report, _ = _run(capsys, "export", "gottesman", "--r", "1")
        assert code == EXIT_OK
        payload = report["details"]["export"]
        assert payload["kind"] == "export_gottesman"
        assert len(payload["generators"]) == 7
        assert payload["parameters"] == "[[32,25,3]]"

    def test_written_file(self, capsys, tmp_path):
        code, report, _ = _run(capsys, "export", "small9", "--data-dir", str(tmp_path),
                               "--out", "small9_code.json")
        assert code == EXIT_OK
        data = json.loads((tmp_path / "small9_code.json").read_text(encoding="utf-8"))
        assert data["name"] == "small9"
        assert data["dimension"] == 12
        assert report["details"]["written"].endswith("small9_code.json")

    @pytest.mark.slow
    def test_small10(self, capsys):
        code, report, _ = _run(capsys, "export", "small10")
        assert code == EXIT_OK
        payload = report["details"]["export"]
        assert payload["kind"] == "export_small10"
        assert payload["dimension"] == 24
        assert len(payload["codeword_subsets"]) == 24
        assert sorted(payload["observables"]) == ["B0", "B1", "B2", "beta1", "beta2", "beta3"]

    @pytest.mark.slow
    def test_pasted(self, capsys):
        _, report, _ = _run(capsys, "export", "pasted", "--m", "1", "--a", "0")
        payload = report["details"]["export"]
        assert len(payload["observables"]) == 8
        assert payload["N"] == 41
