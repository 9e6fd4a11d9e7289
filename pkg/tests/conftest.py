import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from orlicz_lorentz.rearrangement import StepFn
from orlicz_lorentz.young import cap_at, exp_minus_one, piecewise, power, power_log

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def stock_families():
    """The five stock families used by the involution and sandwich checks."""
    return {
        "power2": power(2.0),
        "power3.5": power(3.5),
        "powlog": power_log(2.0, 1.0),
        "exp": exp_minus_one(),
        "piecewise": piecewise([(0, 0), (1, 1), (3, 2), (4, 5)]),
    }


@pytest.fixture(scope="session")
def families():
    return stock_families()


@pytest.fixture(scope="session")
def all_families():
    fams = dict(stock_families())
    fams["cap"] = cap_at(1.5)
    fams["linear"] = power(1.0)
    return fams


values = st.floats(min_value=1e-3, max_value=1e3, allow_nan=False, allow_infinity=False)
weights = st.floats(min_value=1e-3, max_value=1.0, allow_nan=False, allow_infinity=False)


@st.composite
def stepfns(draw, max_atoms=12):
    atoms = draw(st.lists(st.tuples(values, weights), min_size=1, max_size=max_atoms))
    total = sum(w for _, w in atoms)
    slack = draw(st.floats(min_value=1.0, max_value=3.0))
    return StepFn(tuple(atoms), total * slack)


def rng(seed=0):
    return np.random.default_rng(seed)


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance_log():
    def record(number: int, ok: bool, detail: str):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
