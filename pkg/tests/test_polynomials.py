import pytest
from hypothesis import given, settings, strategies as st

from qalink import diagram as dg
from qalink import notation as nt
from qalink import polynomials as P
from qalink.laurent import LaurentPoly, LaurentPoly2
from qalink.taitgraph import BudgetExceeded, determinant


def link(text):
    return dg.compile_link(text)


def lp(text, var="A"):
    return LaurentPoly.from_string(text, var)


def bracket_from_lambda(L: LaurentPoly2, shift: int) -> LaurentPoly:
    """Lambda(a = -A^3, z = A + A^-1) times (A + A^-1)^shift."""
    zpoly = LaurentPoly({1: 1, -1: 1})
    out = LaurentPoly()
    for (i, j), v in L.terms.items():
        term = LaurentPoly.monomial(3 * i, v * (-1) ** (i % 2)) * zpoly ** (j + shift)
        out = out + term
    return out


# -- oracles --------------------------------------------------------------------

def test_trefoil():
    D = link("n(3)")
    assert P.kauffman_bracket(D) == lp("-1*A^-5 + -1*A^3 + 1*A^7")
    # left-handed trefoil: -t^-4 + t^-3 + t^-1
    assert P.jones(D) == lp("-1*s^-8 + 1*s^-6 + 1*s^-2", "s")
    mirror = dg.transform(D, "mirror")
    assert P.jones(mirror) == lp("-1*s^8 + 1*s^6 + 1*s^2", "s")


def test_figure_eight():
    D = link("n([2,2])")
    assert P.jones(D) == lp("1*s^-4 + -1*s^-2 + 1*s^0 + -1*s^2 + 1*s^4", "s")
    # writhe zero diagram, so Lambda is the Kauffman polynomial F
    F = LaurentPoly2.from_string(
        "-1*a^-2*z^0 + -1*a^0*z^0 + -1*a^2*z^0 + -1*a^-1*z^1 + -1*a^1*z^1"
        " + 1*a^-2*z^2 + 2*a^0*z^2 + 1*a^2*z^2 + 1*a^-1*z^3 + 1*a^1*z^3")
    assert P.kauffman_lambda(D) == F


def test_hopf_orientations():
    D = link("n(2)")
    assert P.jones(D) == lp("-1*s^-5 + -1*s^-1", "s")
    assert P.jones(D, reverse=(0,)) == lp("-1*s^5 + -1*s^1", "s")
    assert abs(P.writhe(D)) == 2


def test_unknot_and_curl():
    assert P.kauffman_bracket(link("d(0)")) == LaurentPoly.constant(1)
    assert P.kauffman_lambda(link("d(0)")) == LaurentPoly2.constant(1)
    curl = link("n(1)")
    assert P.jones(curl) == LaurentPoly.constant(1)
    assert P.kauffman_lambda(curl) in (LaurentPoly2.monomial(1, 0), LaurentPoly2.monomial(-1, 0))


def test_split_unknots():
    D = link("n(0)")
    assert P.kauffman_bracket(D) == P.LOOP_A
    assert P.kauffman_lambda(D) == P.DELTA


def test_budget():
    with pytest.raises(BudgetExceeded):
        P.kauffman_bracket(link("n([3,4,5])"), budget=8)


def test_jones_alternation_report():
    r = P.jones_alternation_report(link("n(2/3+2/3)"))
    assert r["sign_alternating"] and r["holds"]
    r = P.jones_alternation_report(link("n(7)"))
    assert r["exempt_torus_2n"]


def test_poly_stats():
    s = P.poly_stats(lp("1*s^-4 + -1*s^-2 + 1*s^0", "s"), step=2)
    assert s["breadth"] == 4 and s["coefficients"] == [1, -1, 1] and s["sign_alternating"]
    assert not P.poly_stats(lp("1*s^-4 + 1*s^0", "s"), step=2)["sign_alternating"]


# -- properties -----------------------------------------------------------------

cf_terms = st.lists(st.integers(1, 3), min_size=1, max_size=2)


def sum_link(a, b, k):
    t = nt.Sum(nt.Sum(nt.Rational(tuple(a)), nt.Rational(tuple(b))), nt.Integer(k))
    return dg.compile_link(nt.LinkExpr("n", t))


@settings(max_examples=40, deadline=None)
@given(cf_terms, cf_terms, st.integers(-1, 1))
def test_bracket_routes_agree(a, b, k):
    D = sum_link(a, b, k)
    assert P.kauffman_bracket(D, "both") == P.bracket_skein(D)
    assert P.bracket_states(D, use_numba=False) == P.bracket_states(D, use_numba=True)


small_terms = st.lists(st.integers(1, 3), min_size=1, max_size=2)


@settings(max_examples=30, deadline=None)
@given(small_terms, small_terms, st.integers(-1, 1))
def test_lambda_specializes_to_bracket(a, b, k):
    D = sum_link(a, b, k)
    L = P.kauffman_lambda(D)
    shift = max(0, -L.min_z())
    br = P.kauffman_bracket(D) * LaurentPoly({1: 1, -1: 1}) ** shift
    assert bracket_from_lambda(L, shift) == br


@settings(max_examples=30, deadline=None)
@given(cf_terms, cf_terms, st.integers(-1, 1))
def test_jones_at_minus_one_is_determinant(a, b, k):
    D = sum_link(a, b, k)
    assert P.jones_at_minus_one(P.jones(D)) == determinant(D)


@settings(max_examples=30, deadline=None)
@given(cf_terms, cf_terms)
def test_reduced_alternating_breadths(a, b):
    D = sum_link(a, b, 0)
    c = D.crossing_number
    if not dg.classify(D).reduced:
        return
    assert P.kauffman_bracket(D).breadth() == 4 * c
    assert P.kauffman_lambda(D).deg_z() == c - 1


@settings(max_examples=20, deadline=None)
@given(cf_terms, cf_terms)
def test_mirror_inverts_jones(a, b):
    D = sum_link(a, b, 0)
    V, W = P.jones(D), P.jones(dg.transform(D, "mirror"))
    assert W == LaurentPoly({-k: v for k, v in V.terms.items()})
