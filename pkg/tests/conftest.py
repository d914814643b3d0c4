import sys
from pathlib import Path

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from quatnss import NCPoly, Poly, QPoly, Quaternion
from quatnss.poly import monomials_up_to

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

ROOT = Path(__file__).resolve().parents[1]
INSTANCES = ROOT / "instances"

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)


rationals = st.fractions(min_value=-4, max_value=4, max_denominator=3)
quaternions = st.builds(Quaternion, rationals, rationals, rationals, rationals)
nonzero_quaternions = quaternions.filter(lambda q: not q.is_zero())


def polys(nvars: int, degree: int = 2, terms: int = 3):
    monos = monomials_up_to(nvars, degree)
    return st.dictionaries(st.sampled_from(monos), rationals, max_size=terms).map(lambda t: Poly(nvars, t))


def qpolys(nvars: int, degree: int = 2, terms: int = 2):
    return st.lists(polys(nvars, degree, terms), min_size=4, max_size=4).map(QPoly)


def words(nvars: int, degree: int):
    def build(parts):
        u0, rest = parts
        w = [u0]
        for v, u in rest:
            w += [v, u]
        return tuple(w)
    pair = st.tuples(st.integers(0, nvars - 1), st.integers(0, 3))
    return st.tuples(st.integers(0, 3), st.lists(pair, max_size=degree)).map(build)


def ncpolys(nvars: int, degree: int = 2, terms: int = 3):
    return st.dictionaries(words(nvars, degree), rationals, max_size=terms).map(lambda t: NCPoly(nvars, t))


def points(nvars: int):
    return st.lists(quaternions, min_size=nvars, max_size=nvars).map(tuple)
