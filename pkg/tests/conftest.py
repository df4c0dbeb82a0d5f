import random

import pytest

from catalgebra import fincat

acceptance_key = pytest.StashKey[dict]()


def pytest_configure(config):
    config.stash[acceptance_key] = {}


@pytest.fixture
def record_criterion(request):
    """Log one pass/fail line per acceptance criterion."""
    log = request.config.stash[acceptance_key]

    def record(number, title, checks):
        passed = all(ok for _, ok in checks)
        failed = [name for name, ok in checks if not ok]
        log[number] = (title, passed, failed)
        print(f"CRITERION {number} {'PASS' if passed else 'FAIL'}: {title}")
        return passed, failed

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    log = config.stash[acceptance_key]
    if not log:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(log):
        title, passed, failed = log[number]
        line = f"criterion {number}: {'PASS' if passed else 'FAIL'}  {title}"
        if failed:
            line += f"  (failed: {', '.join(failed)})"
        terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return random.Random(20240601)


def standard_categories():
    return {
        "discrete(3)": fincat.discrete(3),
        "indiscrete(3)": fincat.indiscrete(3),
        "S3": fincat.symmetric_group(3),
        "chain(3)": fincat.chain(3),
        "divisors(12)": fincat.divisor_poset(12),
        "A3": fincat.free_on_acyclic_quiver(3, [(0, 1, "a"), (1, 2, "b")], name="A3"),
    }


@pytest.fixture(scope="session")
def categories():
    return standard_categories()
