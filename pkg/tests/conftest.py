from functools import lru_cache

import pytest

from wonderbraid.arrangement import braid_arrangement, r_braid_arrangement
from wonderbraid.building import maximal_building_set, minimal_building_set
from wonderbraid.lattice import intersection_lattice

RBRAID_FIXTURES = [(2, 2), (3, 2), (2, 3), (3, 3), (2, 4)]
SMALL_RBRAID = [(2, 2), (3, 2), (2, 3)]
BRAID_FIXTURES = [2, 3, 4]


@lru_cache(maxsize=None)
def rlat(r, n):
    return intersection_lattice(r_braid_arrangement(r, n))


@lru_cache(maxsize=None)
def blat(n):
    return intersection_lattice(braid_arrangement(n))


@lru_cache(maxsize=None)
def rgmin(r, n):
    return minimal_building_set(rlat(r, n))


@lru_cache(maxsize=None)
def bgmin(n):
    return minimal_building_set(blat(n))


@lru_cache(maxsize=None)
def rgmax(r, n):
    return maximal_building_set(rlat(r, n))


def all_fixture_lattices():
    return [rlat(r, n) for r, n in RBRAID_FIXTURES] + [blat(n) for n in BRAID_FIXTURES]


FIXTURE_IDS = [f"rbraid{r}{n}" for r, n in RBRAID_FIXTURES] + [f"braid{n}" for n in BRAID_FIXTURES]


@pytest.fixture(params=range(len(FIXTURE_IDS)), ids=FIXTURE_IDS)
def any_lattice(request):
    return all_fixture_lattices()[request.param]


# acceptance criteria report: one line per criterion at the end of the run
ACCEPTANCE_RESULTS: dict[int, tuple[str, bool]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE_RESULTS):
        title, ok = ACCEPTANCE_RESULTS[num]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {num}. {title}")
