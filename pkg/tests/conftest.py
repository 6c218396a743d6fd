from itertools import combinations

import pytest
from hypothesis import strategies as st

from hs3 import Hypergraph

ACCEPTANCE_LINES: list[str] = []


@st.composite
def hypergraphs(draw, max_n=8, max_edges=12, sizes=(1, 2, 3)):
    n = draw(st.integers(1, max_n))
    pool = [e for s in sizes if s <= n for e in combinations(range(1, n + 1), s)]
    edges = draw(st.lists(st.sampled_from(pool), max_size=max_edges)) if pool else []
    return Hypergraph.from_edges(edges, range(1, n + 1))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


# --- hand-built hypergraphs that make specific rules fire at the root -------

B1_EDGES = [
    (1, 2), (1, 4), (2, 3), (3, 4), (1, 8, 10), (2, 5, 6), (2, 7, 8), (3, 5, 6),
    (3, 5, 9), (3, 6, 9), (3, 9, 10), (4, 6, 10), (5, 6, 7), (5, 8, 10), (7, 8, 9),
]

# x, y, z, v, w = 1..5 and a..h = 6..13; e1 = {x,y,z}, e2 = {x,v,w}
_x, _y, _z, _v, _w = 1, 2, 3, 4, 5
_a, _b, _c, _d, _e, _f, _g, _h = range(6, 14)
_B5_PAD = [(_a, _c, _g), (_b, _e, _h), (_d, _f, _a)]


def _b5(core):
    return [(_x, _y, _z), (_x, _v, _w)] + core + _B5_PAD


B5_TWO_CYCLES = _b5([
    (_y, _a, _b), (_y, _c, _d), (_v, _a, _b), (_v, _c, _d),
    (_z, _e, _f), (_z, _g, _h), (_w, _e, _f), (_w, _g, _h),
])
B5_SAME_SIDE = _b5([
    (_y, _a, _b), (_y, _c, _d), (_z, _a, _b), (_z, _c, _d),
    (_v, _e, _f), (_v, _g, _h), (_w, _e, _f), (_w, _g, _h),
])
B5_EIGHT_CYCLE = _b5([
    (_y, _a, _b), (_y, _c, _d), (_v, _c, _d), (_v, _e, _f),
    (_z, _e, _f), (_z, _g, _h), (_w, _g, _h), (_w, _a, _b),
])

# 3-regular, 3-uniform, minimum hitting set 5
CUBIC12 = [
    (2, 9, 12), (6, 8, 9), (3, 4, 8), (3, 6, 10), (1, 4, 11), (6, 10, 11),
    (5, 7, 10), (4, 5, 7), (3, 5, 8), (2, 7, 11), (1, 2, 12), (1, 9, 12),
]
TWO_CUBIC12 = CUBIC12 + [tuple(v + 12 for v in e) for e in CUBIC12]


@pytest.fixture
def g():
    """Shorthand constructor."""
    def make(*edges, vertices=()):
        return Hypergraph.from_edges(edges, vertices)
    return make

B4_EDGES = [
    (1, 4, 5), (1, 4, 8), (1, 4, 9), (1, 5, 8), (2, 3, 7), (2, 4, 12), (3, 5, 9),
    (3, 7, 11), (3, 8, 9), (5, 10, 12), (7, 10, 11), (7, 10, 12), (8, 10, 11),
]
B6_EDGES = [
    (1, 4, 8), (1, 11, 14), (3, 7, 9), (3, 11, 12), (4, 5, 14), (4, 7, 11),
    (5, 9, 12), (8, 11, 13), (12, 13, 14),
]
R6_EDGES = [(5, 12), (7, 8), (8, 9), (9, 11), (12, 13), (5, 7, 13), (5, 11, 13)]
