"""Shared random inputs for the test suite."""
import numpy as np
from hypothesis import strategies as st

from netavg.network import build_network
from netavg.unitfunc import UnitFunction


def random_network(rng, max_vertices=12, c_range=(0.1, 10.0), min_vertices=2, p_extra=None):
    """Connected simple graph: random tree plus random extra edges."""
    n = int(rng.integers(min_vertices, max_vertices + 1))
    edges = set()
    for v in range(1, n):
        edges.add((int(rng.integers(0, v)), v))
    p = rng.uniform(0.0, 0.6) if p_extra is None else p_extra
    for a in range(n):
        for b in range(a + 1, n):
            if (a, b) not in edges and rng.random() < p:
                edges.add((a, b))
    lo, hi = c_range
    return build_network([(str(a), str(b), float(rng.uniform(lo, hi))) for a, b in sorted(edges)])


coef = st.floats(-3.0, 3.0, allow_nan=False, allow_infinity=False)
freq = st.floats(0.1, 15.0, allow_nan=False, allow_infinity=False)


@st.composite
def unit_functions(draw, max_poly=4, max_trig=3):
    poly = draw(st.lists(coef, min_size=1, max_size=max_poly))
    trig = draw(st.dictionaries(freq, st.tuples(coef, coef), max_size=max_trig))
    return UnitFunction.make(poly, trig)


lambdas = st.floats(-0.99, 0.99, allow_nan=False)


@st.composite
def networks(draw, max_vertices=6):
    seed = draw(st.integers(0, 2**32 - 1))
    return random_network(np.random.default_rng(seed), max_vertices=max_vertices)


@st.composite
def vertex_functions(draw, net):
    vals = draw(st.lists(coef, min_size=net.n_vertices, max_size=net.n_vertices))
    return np.array(vals)
