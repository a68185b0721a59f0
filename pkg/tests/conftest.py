from __future__ import annotations

import pytest

from voxsync.service.config import ServiceConfig
from voxsync.service.core import SyncTtsService


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One line per acceptance criterion at the end of the run."""
    outcomes = {}
    for status, marker in (("passed", "PASS"), ("failed", "FAIL"), ("error", "FAIL")):
        for report in terminalreporter.stats.get(status, []):
            nodeid = getattr(report, "nodeid", "")
            if "test_acceptance.py" not in nodeid:
                continue
            if getattr(report, "when", "call") != "call" and marker == "PASS":
                continue
            name = nodeid.split("::")[-1]
            if marker == "FAIL" or name not in outcomes:
                outcomes[name] = marker
    if outcomes:
        terminalreporter.write_sep("-", "acceptance criteria")
        for name in sorted(outcomes):
            terminalreporter.write_line(f"{outcomes[name]}  {name}")


@pytest.fixture
def make_service(tmp_path):
    """Factory for isolated service instances sharing tmp_path state.

    Calling it twice with the same name simulates a process restart against
    the same journal and object store.
    """
    created = []

    def factory(name: str = "svc", **overrides) -> SyncTtsService:
        defaults = dict(
            storage_root=str(tmp_path / name / "store"),
            journal_path=str(tmp_path / name / "cache.jsonl"),
            pool_size=2,
        )
        defaults.update(overrides)
        service = SyncTtsService(ServiceConfig(**defaults))
        created.append(service)
        return service

    yield factory
    for service in created:
        service.close()
