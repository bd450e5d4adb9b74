import random
from itertools import product

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from linpowers import Graph, Monomial, MonomialIdeal, VarContext
from linpowers.splitting import random_cochordal_ideal, random_linres_quadratic

settings.register_profile(
    "default",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def ctx_of(n: int) -> VarContext:
    return VarContext.standard(n)


def ideal(text: str, n: int | None = None) -> MonomialIdeal:
    from linpowers.cli import parse_ideal

    return parse_ideal(text, ctx=ctx_of(n) if n else None)


@st.composite
def monomials(draw, n=4, max_exp=3):
    ctx = ctx_of(n)
    return Monomial.from_dense(ctx, draw(st.lists(st.integers(0, max_exp), min_size=n, max_size=n)))


@st.composite
def ideals(draw, n=4, max_exp=2, max_gens=6, degree=None):
    ctx = ctx_of(n)
    if degree is None:
        vecs = st.lists(st.integers(0, max_exp), min_size=n, max_size=n)
    else:
        vecs = st.sampled_from([v for v in product(range(degree + 1), repeat=n) if sum(v) == degree])
    gens = draw(st.lists(vecs, max_size=max_gens))
    return MonomialIdeal.from_dense(ctx, gens)


@st.composite
def quadratic_ideals(draw, n=4, squarefree=False):
    ctx = ctx_of(n)
    pairs = [(a, b) for a in range(n) for b in range(a if not squarefree else a + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), min_size=1, unique=True))
    gens = []
    for a, b in chosen:
        d = [0] * n
        d[a] += 1
        d[b] += 1
        gens.append(d)
    return MonomialIdeal.from_dense(ctx, gens)


@st.composite
def graphs(draw, min_n=1, max_n=7):
    n = draw(st.integers(min_n, max_n))
    mask = draw(st.integers(0, (1 << (n * (n - 1) // 2)) - 1))
    return Graph.from_mask(n, mask)


@st.composite
def linres_ideals(draw, max_n=5):
    """Quadratic ideals with linear resolution from the seeded samplers."""
    seed = draw(st.integers(0, 10**6))
    rng = random.Random(seed)
    n = rng.randint(2, max_n)
    if rng.random() < 0.5:
        return random_cochordal_ideal(rng, n)
    return random_linres_quadratic(rng, n)


@pytest.fixture
def product_counterexample():
    return ideal("a^2*b, a*b*c, b*c*d, c*d^2")
