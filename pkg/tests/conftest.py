import json
from pathlib import Path

import pytest
from hypothesis import strategies as st

from carpet_lab.core import CarpetSpec, carpet

SAMPLES = Path(__file__).resolve().parent.parent / "samples"


def load_sample(name: str) -> CarpetSpec:
    return CarpetSpec.from_json(json.loads((SAMPLES / name).read_text()))


E = load_sample("carpet_e.json")
F = load_sample("carpet_f.json")
# equal end rows: the uniform measure is doubling
D = carpet(3, 2, [(0, 0), (2, 0), (1, 1), (2, 1)])


@pytest.fixture
def spec_e() -> CarpetSpec:
    return E


@pytest.fixture
def spec_f() -> CarpetSpec:
    return F


@pytest.fixture
def spec_d() -> CarpetSpec:
    return D


@st.composite
def specs(draw, max_n: int = 9, non_doubling: bool | None = None):
    """Random valid carpets; ``non_doubling`` restricts to one doubling type."""
    from carpet_lab.core import is_non_doubling

    m = draw(st.integers(2, 4))
    n = draw(st.integers(m + 1, max_n))
    cells = [(i, j) for j in range(m) for i in range(n)]
    digits = draw(st.lists(st.sampled_from(cells), min_size=2, max_size=min(len(cells), 14), unique=True))
    spec = carpet(n, m, digits)
    if non_doubling is not None:
        from hypothesis import assume

        assume(is_non_doubling(spec).non_doubling == non_doubling)
    return spec


@st.composite
def codings(draw, spec: CarpetSpec, max_prefix: int = 6, max_period: int = 4):
    from carpet_lab.coding import Coding

    letters = st.sampled_from(spec.digits)
    prefix = draw(st.lists(letters, max_size=max_prefix))
    period = draw(st.lists(letters, min_size=1, max_size=max_period))
    return Coding(tuple(prefix), tuple(period))


@st.composite
def spec_and_coding(draw, **kw):
    spec = draw(specs(**kw))
    return spec, draw(codings(spec))


# one summary line per acceptance criterion
_CRITERIA: dict[int, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    name = report.nodeid.rsplit("::", 1)[-1]
    if "test_acceptance.py" not in report.nodeid or not name.startswith("test_criterion_"):
        return
    number = int(name.split("_")[2])
    if report.when == "call" or report.outcome != "passed":
        previous = _CRITERIA.get(number)
        if previous is None or previous[0] == "passed":
            _CRITERIA[number] = (report.outcome, name.split("[")[0])


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        outcome, name = _CRITERIA[number]
        word = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {number:2d}: {word}  ({name})")
