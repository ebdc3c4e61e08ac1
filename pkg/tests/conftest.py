from __future__ import annotations

import hashlib
from pathlib import Path

import pytest

import hcprim

ACCEPTANCE: dict[int, tuple[str, str, float]] = {}


def source_digest() -> str:
    """Hash of the package sources; cached oracle reports are keyed by it."""
    h = hashlib.sha256()
    root = Path(hcprim.__file__).parent
    for path in sorted(root.rglob("*.py")):
        h.update(path.relative_to(root).as_posix().encode())
        h.update(path.read_bytes())
    return h.hexdigest()[:16]


@pytest.fixture(scope="session")
def oracle_cache(request: pytest.FixtureRequest) -> Path:
    """Cache directory for exhaustive oracle reports.

    Reports are reused across runs only while the package sources are
    unchanged, so every code change triggers a fresh exhaustive sweep.
    """
    return Path(request.config.cache.mkdir("hcprim-oracle")) / source_digest()


def record_criterion(number: int, text: str, ok: bool, seconds: float) -> None:
    ACCEPTANCE[number] = (text, "PASS" if ok else "FAIL", seconds)


def pytest_terminal_summary(terminalreporter, exitstatus, config) -> None:  # noqa: ARG001
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        text, status, seconds = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:2d}: {status}  ({seconds:.1f} s)  {text}")
