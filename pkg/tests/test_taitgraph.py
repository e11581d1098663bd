from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qalink import diagram as dg
from qalink import notation as nt
from qalink import taitgraph as tg
from qalink.polynomials import jones, jones_at_minus_one


def link(text):
    return dg.compile_link(text)


def brute_trees(G):
    """Spanning-tree census by direct subset enumeration (independent oracle)."""
    edges = [(u, v, s) for u, v, s, _ in G.edges if u != v]
    n = G.n_vertices
    out = {}
    for sub in combinations(edges, n - 1):
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                x = parent[x]
            return x

        ok = True
        for u, v, _ in sub:
            a, b = find(u), find(v)
            if a == b:
                ok = False
                break
            parent[a] = b
        if ok:
            k = sum(1 for e in sub if e[2] > 0)
            out[k] = out.get(k, 0) + 1
    return out


@pytest.mark.parametrize("text,det", [
    ("n(3)", 3), ("n(2)", 2), ("n([2,2])", 5), ("n(13/4)", 13), ("d(13/4)", 4),
    ("n(1)", 1), ("n(0)", 0), ("d(0)", 1), ("n(-1+3)", 2), ("n(1/3+1/3)", 6),
    ("d(1/3+1/3)", 9),
])
def test_known_determinants(text, det):
    D = link(text)
    assert tg.determinant(D, "both") == det


def test_trefoil_tree_counts():
    G = tg.tait_graph(link("n(3)"))
    c = tg.spanning_tree_counts(G)
    assert c.total == 3
    assert abs(c.signed_sum()) == 3
    assert c.s == brute_trees(G)


def test_both_shadings_agree():
    D = link("n(2/3+2/5+-1)")
    a = tg.spanning_tree_counts(tg.tait_graph(D, 0))
    b = tg.spanning_tree_counts(tg.tait_graph(D, 1))
    assert abs(a.signed_sum()) == abs(b.signed_sum())


def test_dual_is_other_shading():
    D = link("n(2/3+1/2)")
    G = tg.tait_graph(D, 0)
    H = tg.dual(G)
    assert H.n_edges == G.n_edges
    assert H.n_vertices == tg.tait_graph(D, 1).n_vertices
    assert tg.spanning_tree_counts(H).total == tg.spanning_tree_counts(G).total


def test_budget_enforced():
    D = link("n([3,4,5])")
    with pytest.raises(tg.BudgetExceeded):
        tg.determinant(D, "enumerate", budget=5)


def test_graph_properties_nugatory():
    props = tg.graph_properties(tg.tait_graph(link("n(3)")))
    assert props["connected"] and props["nonseparable"]
    props = tg.graph_properties(tg.tait_graph(link("n((1/2+1/2)*1)"), 0))
    props1 = tg.graph_properties(tg.tait_graph(link("n((1/2+1/2)*1)"), 1))
    assert props["bridges"] or props["loops"] or props1["bridges"] or props1["loops"]


def test_dump_graph_lines():
    G = tg.tait_graph(link("n(3)"))
    lines = tg.dump_graph(G).splitlines()
    assert len(lines) == 3
    assert all(line.split()[2] in "+-" for line in lines)


@given(st.lists(st.lists(st.integers(-4, 4), min_size=4, max_size=4), min_size=4, max_size=4))
def test_bareiss_matches_float(M):
    assert tg.bareiss_determinant(M) == round(np.linalg.det(np.array(M, dtype=float)))


cf_terms = st.lists(st.integers(1, 4), min_size=1, max_size=4)


@settings(max_examples=60, deadline=None)
@given(cf_terms)
def test_rational_closures_match_fraction(terms):
    f = nt.cf_to_fraction(terms)
    T = dg.compile_tangle(nt.Rational(tuple(terms)))
    assert tg.determinant(dg.closure(T, "numerator"), "both") == abs(f.numerator)
    assert tg.determinant(dg.closure(T, "denominator"), "both") == abs(f.denominator)


small_terms = st.lists(st.integers(1, 3), min_size=1, max_size=3)


@settings(max_examples=40, deadline=None)
@given(small_terms, small_terms, st.integers(-2, 2))
def test_three_routes_agree(a, b, k):
    t = nt.Sum(nt.Sum(nt.Rational(tuple(a)), nt.Rational(tuple(b))), nt.Integer(k))
    D = dg.compile_link(nt.LinkExpr("n", t))
    G = tg.tait_graph(D)
    if G.n_edges <= 12:
        assert tg.spanning_tree_counts(G).s == brute_trees(G)
    det = tg.determinant(D, "both")
    assert det == jones_at_minus_one(jones(D, budget=None))
    fa, fb = nt.cf_to_fraction(a), nt.cf_to_fraction(b)
    # det N(p/q + u/v + k) = |pv + qu + kqv|
    p, q, u, v = fa.numerator, fa.denominator, fb.numerator, fb.denominator
    assert det == abs(p * v + q * u + k * q * v)
