import pytest

from cartiercodes.cartier import tower_for
from cartiercodes.cli import KLEIN_POLY, klein_setup
from cartiercodes.curve import Divisor, ProjectiveLine, mk_curve
from cartiercodes.ff import mk_field, mk_tower

CRITERIA = {
    1: "Klein quartic reproduction",
    2: "Goppa doubling identity",
    3: "genus-0 cross-oracles",
    4: "Cartier property suite",
    5: "geometry self-consistency",
    6: "bound suite",
}

# criterion number -> list of (test name, passed, note)
_results = {}

# every AgInstance built during the session, for the bound sweep
CONSTRUCTED = []
# filled in by the sweep: instance, check and skipped-distance counts
SWEEP = {}


def _record_instances():
    from cartiercodes.agc import AgInstance
    init = AgInstance.__post_init__

    def post_init(self):
        init(self)
        CONSTRUCTED.append(self)
    AgInstance.__post_init__ = post_init


_record_instances()


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion this test belongs to")
    config.addinivalue_line("markers", "run_last: run after every other test")


def pytest_collection_modifyitems(items):
    items.sort(key=lambda it: it.get_closest_marker("run_last") is not None)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    n = mark.args[0]
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        if hasattr(rep, "wasxfail"):
            _results.setdefault(n, []).append((item.name, False, "expected failure: " + rep.wasxfail))
        else:
            _results.setdefault(n, []).append((item.name, rep.outcome == "passed", ""))


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(CRITERIA):
        rows = _results.get(n)
        if not rows:
            continue
        ok = all(r[1] for r in rows)
        bad = [r for r in rows if not r[1]]
        line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {CRITERIA[n]} ({len(rows) - len(bad)}/{len(rows)} checks)"
        tr.write_line(line)
        for name, _, note in bad:
            tr.write_line(f"     red: {name}" + (f" ({note})" if note else ""))
    if SWEEP:
        tr.write_line(f"bound sweep: {SWEEP['instances']} distinct instances, {SWEEP['checks']} checks, "
                      f"{SWEEP['beyond_budget']} codes with distance beyond the enumeration budget")


# -- shared objects --------------------------------------------------------------

@pytest.fixture(scope="session")
def F2():
    return mk_field(2)


@pytest.fixture(scope="session")
def F4():
    return mk_field(2, 2)


@pytest.fixture(scope="session")
def F8():
    return mk_field(2, 3)


@pytest.fixture(scope="session")
def F9():
    return mk_field(3, 2)


@pytest.fixture(scope="session")
def tower_2_4(F2, F4):
    return mk_tower(F2, F4)


@pytest.fixture(scope="session")
def tower_2_8(F2, F8):
    return mk_tower(F2, F8)


@pytest.fixture(scope="session")
def line4(F4):
    return ProjectiveLine(F4)


@pytest.fixture(scope="session")
def line8(F8):
    return ProjectiveLine(F8)


@pytest.fixture(scope="session")
def klein(F8):
    return mk_curve(F8, KLEIN_POLY, "Klein")


class KleinSetup:
    def __init__(self, curve):
        self.curve = curve
        self.G0, self.Gm, self.D = klein_setup(curve)
        self.tower = tower_for(curve, 2)


@pytest.fixture(scope="session")
def ks(klein):
    return KleinSetup(klein)


@pytest.fixture(scope="session")
def klein_instances(ks):
    from cartiercodes.agc import AgInstance
    return (AgInstance(ks.curve, ks.D, ks.G0 - ks.Gm, ks.tower),
            AgInstance(ks.curve, ks.D, 2 * ks.G0 - ks.Gm, ks.tower))


@pytest.fixture(scope="session")
def hermitian(F9):
    return mk_curve(F9, "x^4 - y^3*z - y*z^3", "Hermitian")


@pytest.fixture(scope="session")
def empty_divisor():
    return Divisor()
