import os
import tempfile

import pytest

# keep the disk cache out of the user's home during the test run
os.environ.setdefault("RGWSPLIT_CACHE_DIR", tempfile.mkdtemp(prefix="rgwsplit-test-cache-"))


@pytest.fixture
def fresh_characters():
    from rgwsplit.characters import clear_memory

    clear_memory()
    yield
    clear_memory()


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    lines = getattr(module, "ACCEPTANCE_LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
