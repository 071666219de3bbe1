"""End-to-end CLI runs.

These run whole command suites through ``main`` and one through ``python -m src``.
"""

import json
import subprocess
import sys
from pathlib import Path

import pytest

from src.cli import main

ROOT = Path(__file__).resolve().parent.parent

pytestmark = pytest.mark.integration


@pytest.fixture(autouse=True)
def _isolated(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    for name in ("NONOR_BRANCH_LIMIT", "NONOR_FORMAT", "NONOR_SEED", "NONOR_SAMPLE_WORDS", "NONOR_N4_READING"):
        monkeypatch.delenv(name, raising=False)


def _json(capsys, argv):
    code = main(argv + ["--format", "json", "-q"])
    return code, json.loads(capsys.readouterr().out)


class TestCommands:
    """Full suites at small genus."""

    @pytest.mark.parametrize("rep", ["psi1", "psi2", "psi1p", "psi2p"])
    @pytest.mark.parametrize("genus", [5, 6, 7, 8])
    def test_verify_relations(self, capsys, rep, genus):
        """Every relation instance holds for the Psi family."""
        code, payload = _json(capsys, ["verify-relations", "--genus", str(genus), "--rep", rep])
        assert code == 0
        assert payload["counts"]["fail"] == 0

    @pytest.mark.parametrize("genus", [5, 6])
    def test_derive_psi(self, capsys, genus):
        """Derived tables and block checks pass with a small sample."""
        code, _ = _json(capsys, ["derive-psi", "--genus", str(genus), "--rep", "psi1", "--samples", "10"])
        assert code == 0

    def test_scenario_symmetric_eight(self, capsys):
        """The S8 scenario, named by its alternate id, concludes M = U_7 = L_7."""
        code, payload = _json(capsys, ["scenario", "lemma83"])
        assert code == 0
        assert payload["summary"]["scenario"] == "symmetric-eight"
        assert payload["summary"]["conclusion"] == "M = U_7 = L_7"
        assert all(c["id"].startswith("step-") for c in payload["checks"])

    def test_epsilon(self, capsys):
        """epsilon at g = 8 passes every check."""
        code, payload = _json(capsys, ["epsilon", "--genus", "8", "--word", "d7 e3^-1"])
        assert code == 0
        assert payload["summary"]["matrix"]["entries"] == [[1 if i == j else 0 for j in range(6)] for i in range(6)]

    def test_show_generator_phi(self, capsys):
        """The Phi table at g = 5 lives in dimension 8."""
        code, payload = _json(capsys, ["show-generator", "--genus", "5", "--rep", "phi"])
        assert code == 0
        assert payload["summary"]["dimension"] == 8


def test_module_entry_point(tmp_path):
    """python -m src runs a command and exits with its status."""
    result = subprocess.run(
        [sys.executable, "-m", "src", "dihedral", "--word", "e2 u1", "--format", "json", "-q"],
        cwd=ROOT,
        capture_output=True,
        text=True,
        timeout=300,
    )
    assert result.returncode == 0, result.stderr
    assert json.loads(result.stdout)["summary"]["image"] == "xy y"
