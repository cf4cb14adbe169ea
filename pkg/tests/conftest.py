import numpy as np
import pytest

from boundedtype.catalog import FUNCTIONS


@pytest.fixture(params=sorted(FUNCTIONS))
def catalog_entry(request):
    f, kappa = FUNCTIONS[request.param]
    return request.param, f, kappa


def random_upper(rng, n, lo=0.2, hi=3.0):
    return rng.uniform(-3, 3, n) + 1j * rng.uniform(lo, hi, n)


ACCEPTANCE_LINES: list[str] = []


def record(label: str, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] {label}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
