from importlib import resources

import pytest

from speechtrees.augment import DecisionSource
from speechtrees.treebank import parse_tree, parse_trees

WORKED_INPUT = (
    "(S (NP-SBJ (DT The) (NN percentage) (NN change)) "
    "(VP (VBZ is) (PP-PRD (IN since) (NP (NN year-end)))) (. .))"
)
# Expected output of the scripted walkthrough, brackets balanced.
WORKED_OUTPUT = (
    "(S (EDITED_REP (DT The=) (NN percentage=) (, ,)) "
    "(NP-SBJ (DT The) (UH um) (NN percentage) (PT chan-) (NN change)) "
    "(VP (UH uh) (VBZ 's) (EDITED_REP (IN since) (NN year-end=)) "
    "(PP-PRD (IN since) (NP (NN year-end)))) (. .))"
)
HERTZ_FIRST = (
    "(S (NP-SBJ (DT The) (ADJP (RB closely) (VBN held)) (NNP Hertz) (NNP Corp.)) "
    "(VP (VBD had) (NP (NP (JJ annual) (NN revenue)))) (. .))"
)
HERTZ_SECOND = (
    "(S (NP-SBJ (NNP Hertz) (NNP Equipment)) "
    "(VP (VBZ is) (NP-PRD (DT a) (JJ major) (NN supplier))) (. .))"
)

HIT, MISS, MID = 0.0, 0.99, 0.5

# Draws that turn WORKED_INPUT into WORKED_OUTPUT, pass by pass.
WORKED_DRAWS = [
    # repetition: NP-SBJ hit, L=2, The (eq hit, comma miss), percentage (eq hit, comma hit)
    HIT, MID, HIT, MISS, HIT, HIT,
    MISS,  # VP
    # PP-PRD hit, L=2, since (eq miss, comma miss), year-end (eq hit, comma miss)
    HIT, MID, MISS, MISS, HIT, MISS,
    MISS,  # NP over year-end
    HIT,  # vbz: is -> 's
    # partial: The, percentage, change (hit, 4 chars), since, year-end
    MISS, MISS, HIT, 0.7, MISS, MISS,
    # filler: The, percentage (hit, um), change, 's (hit, uh), since, year-end
    MISS, HIT, 0.3, MISS, HIT, 0.0, MISS, MISS,
]


class Constant(DecisionSource):
    """Always the same draw; counts how many were taken."""

    def __init__(self, u):
        self.u = u
        self.taken = 0

    def random(self):
        self.taken += 1
        return self.u


def load_fixture():
    text = resources.files("speechtrees").joinpath("data/fixture.mrg").read_text(encoding="utf-8")
    return parse_trees(text)


@pytest.fixture(scope="session")
def fixture_text():
    return resources.files("speechtrees").joinpath("data/fixture.mrg").read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def corpus():
    return load_fixture()


@pytest.fixture
def worked_tree():
    return parse_tree(WORKED_INPUT)


@pytest.fixture
def hertz_pair():
    return parse_tree(HERTZ_FIRST), parse_tree(HERTZ_SECOND)


_acceptance = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if rep.when == "call" or rep.failed:
        key = marker.args[0]
        prev = _acceptance.get(key, (True, marker.args[1]))
        _acceptance[key] = (prev[0] and rep.passed, marker.args[1])


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_acceptance):
        ok, title = _acceptance[key]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {key:>2}. {title}")
