import pytest

from gsacms import _backend, gsa_builder, matching_stats, suffix_kernels

BACKENDS = _backend.available_backends()

_ACCEPTANCE_KEY = pytest.StashKey[list]()


@pytest.fixture(params=sorted(BACKENDS))
def backend(request, monkeypatch):
    """Run the test once per kernel implementation."""
    mod = BACKENDS[request.param]
    for m in (suffix_kernels, matching_stats, gsa_builder):
        monkeypatch.setattr(m, "kernels", mod)
    return mod


@pytest.fixture
def acceptance(request):
    """Record one criterion outcome; printed in the terminal summary."""
    lines = request.config.stash.setdefault(_ACCEPTANCE_KEY, [])

    def record(name: str, ok: bool, detail: str = ""):
        lines.append(f"{'PASS' if ok else 'FAIL'}  {name}" + (f"  ({detail})" if detail else ""))
        return ok

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_ACCEPTANCE_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
