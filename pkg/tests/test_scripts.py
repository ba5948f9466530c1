"""
Test degli script di avvio e del punto di ingresso installato
"""

import importlib
import re
import shutil
import subprocess
import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).parent.parent
START_SCRIPT = ROOT / "scripts" / "start_verifier.sh"


def _requirements():
    names = []
    for line in (ROOT / "requirements.txt").read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            names.append(re.split(r"[<>=!~]", line)[0].strip())
    return names


class TestEntryPoint:

    def test_console_script_resolves(self):
        setup = (ROOT / "setup.py").read_text(encoding="utf-8")
        target = re.search(r'"nonadditive-verifier=([\w.]+):(\w+)"', setup)
        assert target is not None
        module = importlib.import_module(target.group(1))
        assert callable(getattr(module, target.group(2)))

    def test_main_exits_with_run_code(self, monkeypatch, capsys):
        from cli.verifier_cli import main
        monkeypatch.setattr(sys, "argv", ["nonadditive-verifier", "params", "--m", "1",
                                          "--a", "0", "--no-progress"])
        with pytest.raises(SystemExit) as exit_info:
            main()
        assert exit_info.value.code == 0
        assert '"N": 41' in capsys.readouterr().out


class TestStartScript:

    @pytest.mark.skipif(shutil.which("bash") is None, reason="bash non disponibile")
    def test_syntax(self):
        result = subprocess.run(["bash", "-n", str(START_SCRIPT)], capture_output=True)
        assert result.returncode == 0, result.stderr

    def test_checks_every_requirement(self):
        text = START_SCRIPT.read_text(encoding="utf-8")
        check = re.search(r'python -c "import ([^"]+)"', text)
        assert check is not None
        imported = {name.strip() for name in check.group(1).split(",")}
        assert set(_requirements()) <= imported
        assert "cli.verifier_cli" in imported

    def test_installs_from_manifest(self):
        text = START_SCRIPT.read_text(encoding="utf-8")
        assert 'pip install -r "$PROJECT_DIR/requirements.txt"' in text
        assert 'pip install -e "$PROJECT_DIR"' in text
