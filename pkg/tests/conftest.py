import pytest

from crystalproj.groups import Isometry, SpaceGroup
from crystalproj.presets import preset_lattice
from crystalproj.scalar import S


def iso(translation, linear):
    return Isometry(tuple(S(x) for x in translation), tuple(tuple(S(x) for x in row) for row in linear))


ROT60 = (("1/2", "-r3/2"), ("r3/2", "1/2"))
MINUS_ROT60 = (("-1/2", "r3/2"), ("-r3/2", "-1/2"))
ROT120 = (("-1/2", "-r3/2"), ("r3/2", "-1/2"))
MIRROR_X = ((-1, 0), (0, 1))
# depths of the cubic reference panels
DEPTHS = {"quarter": "r6/12", "one": "r6/6", "two": "r6/3", "three": "r6/2"}


@pytest.fixture(scope="session")
def cubic_p1():
    return SpaceGroup.holohedral(preset_lattice("cubic-p1"))


@pytest.fixture(scope="session")
def cubic():
    return SpaceGroup.holohedral(preset_lattice("cubic"))


# acceptance reporting: one PASS/FAIL line per criterion in the terminal summary
_CRITERIA: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or report.when not in ("setup", "call"):
        return
    number, title = mark.args
    if report.when == "call" or report.failed:
        passed = report.passed and _CRITERIA.get(number, (title, True))[1]
        _CRITERIA[number] = (title, passed)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for number in sorted(_CRITERIA):
        title, passed = _CRITERIA[number]
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  criterion {number:>2}: {title}")
