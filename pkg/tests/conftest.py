import hypothesis

# every property test is reproducible: fixed derandomised search, no deadlines
hypothesis.settings.register_profile(
    "repo",
    derandomize=True,
    deadline=None,
    print_blob=True,
)
hypothesis.settings.load_profile("repo")

import pytest

_ACCEPTANCE: list[str] = []


@pytest.fixture
def criterion():
    """record(tag, description, ok, seconds, limit) -> ok; one line per acceptance criterion."""

    def record(tag: str, what: str, ok: bool, seconds: float | None = None,
               limit: float | None = None) -> bool:
        timing = ""
        if seconds is not None:
            timing = f" [{seconds:.2f}s" + (f" / limit {limit:g}s]" if limit else "]")
        line = f"{'PASS' if ok else 'FAIL'} criterion {tag}: {what}{timing}"
        _ACCEPTANCE.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)
