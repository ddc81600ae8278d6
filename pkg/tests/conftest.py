import os
import warnings

import pytest


def pytest_configure(config):
    # numerics deliberately probe singular points; keep the output readable
    warnings.filterwarnings("ignore", category=RuntimeWarning, module="casimir_entropy")


@pytest.fixture
def workdir(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv("CASIMIR_WORKERS", raising=False)
    return tmp_path


def numba_enabled():
    return os.environ.get("CASIMIR_DISABLE_NUMBA", "").strip().lower() in ("", "0", "false", "no")


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS, verdict_line

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for cid in sorted(RESULTS):
            terminalreporter.write_line(verdict_line(RESULTS[cid]))
