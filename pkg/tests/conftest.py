import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings, strategies as st

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

EXAMPLE = "CDABCCDABCCA"


def texts(alphabet="abc", min_size=1, max_size=12):
    return st.text(alphabet=alphabet, min_size=min_size, max_size=max_size)


@pytest.fixture(scope="session")
def acceptance_log(request):
    log = {}
    request.config._acceptance_log = log
    return log


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    log = getattr(config, "_acceptance_log", None)
    if not log:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(log):
        checks = log[key]
        ok = all(passed for _, passed, _ in checks)
        details = "; ".join(f"{name}: {'ok' if passed else 'FAILED'} ({info})" for name, passed, info in checks)
        terminalreporter.write_line(f"criterion {key}: {'PASS' if ok else 'FAIL'} | {details}")
