import os
import random
import re
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from helpers import random_prime  # noqa: E402


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def prime_of_bits(rng):
    return lambda bits: random_prime(rng, bits)


def pytest_terminal_summary(terminalreporter):
    """One pass/fail line per acceptance criterion."""
    lines = {}
    for status in ("passed", "failed", "error", "skipped"):
        for rep in terminalreporter.stats.get(status, []):
            nodeid = getattr(rep, "nodeid", "")
            match = re.search(r"test_acceptance\.py::test_criterion_(\d+)", nodeid)
            if not match:
                continue
            if status == "passed" and rep.when != "call":
                continue
            detail = dict(getattr(rep, "user_properties", [])).get("detail", "")
            word = "PASS" if status == "passed" else "FAIL"
            lines[int(match.group(1))] = f"criterion {match.group(1)}: {word} {detail}".rstrip()
    if lines:
        terminalreporter.section("acceptance criteria")
        for key in sorted(lines):
            terminalreporter.write_line(lines[key])
