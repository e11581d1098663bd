from hypothesis import given, strategies as st

from qalink.laurent import LaurentPoly, LaurentPoly2

polys = st.dictionaries(st.integers(-6, 6), st.integers(-5, 5), max_size=5).map(LaurentPoly)
polys2 = st.dictionaries(st.tuples(st.integers(-3, 3), st.integers(-2, 3)),
                         st.integers(-4, 4), max_size=5).map(LaurentPoly2)


@given(polys, polys, polys)
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == LaurentPoly()


@given(polys2, polys2, polys2)
def test_ring_axioms_two_variables(p, q, r):
    assert p * q == q * p
    assert p * (q + r) == p * q + p * r
    assert (p - q) + q == p


@given(polys)
def test_string_round_trip(p):
    assert LaurentPoly.from_string(p.to_string("A"), "A") == p
    assert LaurentPoly.from_string(p.to_string("s"), "s") == p


@given(polys2)
def test_string_round_trip_two_variables(p):
    assert LaurentPoly2.from_string(p.to_string()) == p


@given(polys)
def test_evaluation_at_i(p):
    re, im = p.evaluate_at_i()
    z = p.evaluate(1j)
    assert abs(z.real - re) < 1e-9 and abs(z.imag - im) < 1e-9


def test_powers_and_degrees():
    d = LaurentPoly({2: -1, -2: -1})
    assert d ** 2 == LaurentPoly({4: 1, 0: 2, -4: 1})
    assert (d ** 3).breadth() == 12
    x = LaurentPoly.monomial(3, -2)
    assert x.min_exp() == x.max_exp() == 3
    assert LaurentPoly({-1: 1, 1: 1}).coefficients() == [1, 0, 1]
    assert LaurentPoly({-1: 1, 1: 1}).coefficients(2) == [1, 1]
