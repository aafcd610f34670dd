import os

from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def pytest_terminal_summary(terminalreporter):
    from tests import test_acceptance as acc  # noqa: PLC0415

    if acc.RESULTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(acc.RESULTS):
            terminalreporter.write_line(acc.RESULTS[number])
