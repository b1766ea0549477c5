import pytest

from gral.coeffring import ModularRing, ProductRing
from gral.graphs import Graph
from gral.pathalg import AlgebraElement, reduced_monomials


def graph_a1():
    return Graph(["v"], [])


def graph_vw():
    return Graph(["v", "w"], [("f", "v", "w")])


def graph_vwu():
    return Graph(["v", "w", "u"], [("f", "v", "w"), ("g", "w", "u")])


def graph_loop():
    return Graph(["v"], [("e", "v", "v")])


def graph_2cycle():
    return Graph(["v", "w"], [("e", "v", "w"), ("f", "w", "v")])


def graph_rose2():
    return Graph(["v"], [("e", "v", "v"), ("f", "v", "v")])


def graph_toeplitz():
    # loop with an exit edge into a sink
    return Graph(["u", "w"], [("e", "u", "u"), ("f", "u", "w")])


def graph_null():
    return Graph([], [])


SIX_GRAPHS = {
    "A1": graph_a1,
    "vw": graph_vw,
    "loop": graph_loop,
    "2cycle": graph_2cycle,
    "rose2": graph_rose2,
    "toeplitz": graph_toeplitz,
}


@pytest.fixture
def z2():
    return ModularRing(2)


@pytest.fixture
def z3():
    return ModularRing(3)


@pytest.fixture
def z4():
    return ModularRing(4)


@pytest.fixture
def z6():
    return ModularRing(6)


@pytest.fixture
def z2xz2():
    return ProductRing([ModularRing(2), ModularRing(2)])


def random_element(spec, rng, degree=None, max_len=2, max_terms=3):
    """Seeded random combination of bounded reduced monomials; may be zero."""
    pool = reduced_monomials(spec, degree=degree, max_len=max_len)
    if not pool:
        return AlgebraElement.zero(spec)
    k = rng.randint(1, min(max_terms, len(pool)))
    monos = rng.sample(pool, k)
    coeffs = [c for c in spec.ring.elements() if c != spec.ring.zero]
    return AlgebraElement.make(spec, {m: rng.choice(coeffs) for m in monos})


def random_word(spec, rng, max_len=6):
    g = spec.graph
    symbols = list(g.vertices) + [e.name for e in g.edges] + \
        [e.name + "*" for e in g.edges]
    n = rng.randint(1, max_len)
    return [rng.choice(symbols) for _ in range(n)]
