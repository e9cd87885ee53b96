import itertools
from pathlib import Path

import pytest
from hypothesis import settings, strategies as st

from etendue.fincat import FiniteCategory
from etendue.fixtures import arrow, interval, interval_groupoid, terminal, z2
from etendue.ogpd import OrderedGroupoid

settings.register_profile("etendue", max_examples=30, deadline=None)
settings.load_profile("etendue")

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def poset_category(n, relation) -> FiniteCategory:
    """The thin category of the reflexive-transitive closure of ``relation`` on ``0..n-1``."""
    le = {(i, i) for i in range(n)} | set(relation)
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in itertools.product(list(le), repeat=2):
            if b == c and (a, d) not in le:
                le.add((a, d))
                changed = True
    name = {p: f"{p[0]}<{p[1]}" for p in le}
    arrows = {name[p]: (f"p{p[0]}", f"p{p[1]}") for p in le}
    comp = {(name[(b, c)], name[(a, b)]): name[(a, c)] for (a, b) in le for (b2, c) in le if b == b2}
    return FiniteCategory(tuple(f"p{i}" for i in range(n)), arrows, {f"p{i}": name[(i, i)] for i in range(n)}, comp,
                          f"poset{n}")


def cyclic_group(n) -> FiniteCategory:
    arrows = {f"g{i}": ("*", "*") for i in range(n)}
    comp = {(f"g{i}", f"g{j}"): f"g{(i + j) % n}" for i in range(n) for j in range(n)}
    return FiniteCategory(("*",), arrows, {"*": "g0"}, comp, f"Z{n}")


def group_chain(n, m) -> OrderedGroupoid:
    """Z/n acting at each point of the chain ``c0 <= ... <= c{m-1}``, arrows ordered along the chain."""
    objects = [f"c{i}" for i in range(m)]
    harrows = {f"g{k}@{i}": (f"c{i}", f"c{i}") for k in range(n) for i in range(m)}
    comp = [(f"g{k}@{i}", f"g{j}@{i}", f"g{(k + j) % n}@{i}") for k in range(n) for j in range(n) for i in range(m)]
    obj_order = [(f"c{i}", f"c{j}") for i in range(m) for j in range(i + 1, m)]
    arr_order = [(f"g{k}@{i}", f"g{k}@{j}") for k in range(n) for i in range(m) for j in range(i + 1, m)]
    return OrderedGroupoid.from_tables(objects, harrows, {o: f"g0@{o[1:]}" for o in objects}, comp,
                                       obj_order, arr_order, f"Z{n}x{m}")


@st.composite
def posets(draw, max_n=4):
    n = draw(st.integers(1, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    rel = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return poset_category(n, rel)


def small_categories(max_n=3):
    return st.one_of(posets(max_n), st.integers(1, 4).map(cyclic_group))


def small_groupoids():
    return st.builds(group_chain, st.integers(1, 3), st.integers(1, 3))


@pytest.fixture
def fixture_dir():
    return FIXTURES


@pytest.fixture(params=["terminal", "Z2", "arrow"])
def lc_category(request):
    return {"terminal": terminal, "Z2": z2, "arrow": arrow}[request.param]()


@pytest.fixture(params=["interval", "zinterval"])
def groupoid(request):
    return {"interval": interval, "zinterval": interval_groupoid}[request.param]()
