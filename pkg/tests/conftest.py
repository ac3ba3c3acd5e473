import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from charcoh.jetring import DiffPoly, FTower, GaussScalar, Param, PotentialModel, U, Uj, UjBar, Z, ZBAR

settings.register_profile(
    "repo",
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")

BETA = DiffPoly.var(Param("b"))

small_fracs = st.fractions(min_value=-4, max_value=4, max_denominator=4)
gauss = st.builds(GaussScalar, small_fracs, small_fracs)

JET_VARS = [Uj(j) for j in range(4)] + [UjBar(j) for j in range(4)]
ALL_VARS = JET_VARS + [Z, ZBAR, U, FTower(0), FTower(1)]


def monomials(vars_):
    return st.lists(
        st.tuples(st.sampled_from(vars_), st.integers(1, 2)), min_size=0, max_size=3
    ).map(_mono)


def _mono(pairs):
    acc = {}
    for v, e in pairs:
        acc[v] = acc.get(v, 0) + e
    return tuple(sorted(acc.items()))


def polys(vars_=ALL_VARS, max_terms=4):
    return st.dictionaries(monomials(vars_), gauss, max_size=max_terms).map(DiffPoly)


@pytest.fixture
def beta_model():
    return PotentialModel.beta(BETA)


@pytest.fixture
def generic_model():
    return PotentialModel.generic()


@pytest.fixture
def tz_model():
    return PotentialModel.rule(-1, 2)


# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
