import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("ci", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("ci")


@pytest.fixture
def z():
    from flagbethe.poly import MPoly

    return lambda s: MPoly.var(f"z.{s}")


# criterion number -> (passed, summary); filled by test_acceptance.py
ACCEPTANCE: dict = {}


@pytest.fixture
def criterion():
    def record(k: int, passed: bool, summary: str = "") -> bool:
        ok = ACCEPTANCE.get(k, (True, ""))[0] and passed
        prev = ACCEPTANCE.get(k, (True, ""))[1]
        ACCEPTANCE[k] = (ok, "; ".join(x for x in (prev, summary) if x))
        print(f"CRITERION {k}: {'PASS' if passed else 'FAIL'} {summary}")
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, summary = ACCEPTANCE[k]
        terminalreporter.write_line(f"CRITERION {k}: {'PASS' if ok else 'FAIL'}  {summary}")
