import pytest

from charmorph.fields import QQ, cyclotomic, prime

acceptance_key = pytest.StashKey[dict]()

FIELDS = {
    "rational": QQ,
    "gf7": prime(7),
    "cyclotomic5": cyclotomic(5),
}


@pytest.fixture(params=list(FIELDS), ids=list(FIELDS))
def field(request):
    return FIELDS[request.param]


@pytest.fixture
def acceptance_log(request):
    return request.config.stash.setdefault(acceptance_key, {})


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    log = config.stash.get(acceptance_key, None)
    if not log:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(log):
        ok, text = log[num]
        terminalreporter.write_line(f"criterion {num:>2}: {'PASS' if ok else 'FAIL'}  {text}")
