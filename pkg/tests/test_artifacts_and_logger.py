"""
Test degli artefatti JSON e del logger di sessione
"""

import json

from core.artifact_manager import SCHEMA, ArtifactManager
from utils.session_logger import SessionLogger


class TestArtifactManager:

    def test_canonical_dumps_sorted(self):
        text = ArtifactManager.canonical_dumps({"b": 1, "a": [1, 2]})
        assert text.endswith("\n")
        assert text.index('"a"') < text.index('"b"')
        assert ArtifactManager.canonical_dumps({"a": [1, 2], "b": 1}) == text

    def test_with_schema(self):
        payload = ArtifactManager.with_schema("run_report", {"x": 1})
        assert payload == {"schema": SCHEMA, "kind": "run_report", "x": 1}

    def test_write_and_read(self, tmp_path):
        artifacts = ArtifactManager(tmp_path)
        target = artifacts.write_json("sub/report.json", {"k": "3*2^32"})
        assert target == tmp_path / "sub" / "report.json"
        assert artifacts.read_json("sub/report.json") == {"k": "3*2^32"}

    def test_missing_file(self, tmp_path):
        assert ArtifactManager(tmp_path).read_json("missing.json") is None

    def test_corrupted_file(self, tmp_path, capsys):
        (tmp_path / "bad.json").write_text("{", encoding="utf-8")
        assert ArtifactManager(tmp_path).read_json("bad.json") is None
        assert "bad.json" in capsys.readouterr().err

    def test_absolute_path(self, tmp_path):
        artifacts = ArtifactManager(tmp_path / "data")
        assert artifacts.path(tmp_path / "x.json") == tmp_path / "x.json"

    def test_sidecar_path(self, tmp_path):
        assert ArtifactManager.sidecar_path(tmp_path / "out.json") == \
            tmp_path / "out.json.session.json"


class TestSessionLogger:

    def test_without_report_path(self):
        logger = SessionLogger("params")
        logger.log_step("params", errors_checked=0)
        summary = logger.get_session_summary()
        assert summary["log_file"] is None
        assert summary["statistics"]["steps"] == 1

    def test_statistics_written(self, tmp_path):
        report = tmp_path / "verify.json"
        logger = SessionLogger("verify", report)
        logger.log_run_start({"target": "gottesman", "r": 1})
        logger.log_step("purity", errors_checked=4560, violations=0, elapsed_ms=12)
        logger.log_step("hamming", errors_checked=0)
        logger.log_error("DimensionError", "r deve essere >= 1")
        logger.end_session(exit_code=2)

        data = json.loads(ArtifactManager.sidecar_path(report).read_text(encoding="utf-8"))
        assert data["session_info"]["command"] == "verify"
        assert data["session_info"]["end_time"] is not None
        assert data["statistics"] == {"steps": 2, "errors_checked": 4560,
                                      "violations": 0, "errors_logged": 1}
        types = [a["type"] for a in data["activities"]]
        assert types == ["run_start", "step", "step", "error", "run_end"]
        assert data["activities"][-1]["details"]["exit_code"] == 2

    def test_set_report_path_later(self, tmp_path):
        logger = SessionLogger("lpbound")
        logger.log_run_start({"n": 41})
        logger.set_report_path(tmp_path / "lp.json")
        assert (tmp_path / "lp.json.session.json").exists()
        data = json.loads((tmp_path / "lp.json.session.json").read_text(encoding="utf-8"))
        assert len(data["activities"]) == 1
