"""Conway fractions, continued fractions and the tangle grammar."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qalink import notation as nt


def test_continued_fraction_values():
    assert nt.cf_to_fraction([3, 4]) == Fraction(13, 4)
    assert nt.cf_to_fraction([0, 1, 10, 1, 6]) == Fraction(76, 83)
    assert nt.cf_to_fraction([5]) == Fraction(5)
    assert nt.fraction_to_cf(Fraction(13, 4)) == [3, 4]
    assert nt.fraction_to_cf(Fraction(76, 83)) == [0, 1, 10, 1, 6]
    assert nt.fraction_to_cf(Fraction(0)) == [0]


def test_vanishing_inner_value_gives_infinity():
    assert nt.cf_to_fraction([0, 0]) is nt.INF


@given(st.integers(-500, 500), st.integers(1, 500))
def test_fraction_roundtrip(p, q):
    f = Fraction(p, q)
    terms = nt.fraction_to_cf(f)
    assert nt.cf_to_fraction(terms) == f
    tail = terms[1:]
    assert all(a != 0 for a in tail)
    assert all(a > 0 for a in tail) or all(a < 0 for a in tail)


@pytest.mark.parametrize("text", ["[3,4]", "-1+1/2", "(S+1)*(T+1)", "rot(rot([3,4]))",
                                  "-(1/3+1/3)", "1/2@x", "hflip(rotcc([0,1,2]))", "inf", "0"])
def test_printer_roundtrip(text):
    t = nt.parse_tangle(text)
    assert nt.format_tangle(t) == text
    assert nt.parse_tangle(nt.format_tangle(t)) == t


def test_parse_shapes():
    t = nt.parse_tangle("-1 + 1/2")
    assert isinstance(t, nt.Sum)
    assert t.left == nt.Integer(-1) and t.right == nt.Vertical(2)
    assert isinstance(nt.parse_tangle("(S+1)*(T+1)"), nt.Star)


def test_parse_errors_carry_position():
    with pytest.raises(nt.NotationError) as info:
        nt.parse_tangle("1/0")
    assert info.value.position == 2
    with pytest.raises(nt.NotationError):
        nt.parse_tangle("[3,")
    with pytest.raises(nt.NotationError):
        nt.parse_tangle("1+")


def test_rational_identities():
    ev = lambda s: nt.eval_fraction(nt.parse_tangle(s))
    assert ev("-1+1/2") == Fraction(-1, 2) == ev("-1/2")
    assert ev("(2/3*1)") == Fraction(2, 5)
    assert ev("rot(rot([3,4]))") == Fraction(13, 4)
    assert ev("rot([3,4])") == Fraction(4, 13) == ev("rotcc([3,4])")
    assert ev("-[3,4]") == Fraction(-13, 4)
    # t * 1/p = 1/(p + 1/t) and 1/p * t * 1/q = t * 1/(p+q)
    assert ev("[3,4]*1/5") == 1 / (5 + 1 / Fraction(13, 4))
    assert ev("1/2*[3,4]*1/3") == ev("[3,4]*1/5")
    # p + t + q = t + p + q
    assert ev("2+[3,4]+5") == ev("[3,4]+2+5")


def test_non_rational_sum_is_refused_by_strict_eval():
    with pytest.raises(nt.NonRationalError):
        nt.eval_fraction(nt.parse_tangle("1/3+1/3"))
    assert nt.tangle_fraction(nt.parse_tangle("1/3+1/3")) == Fraction(2, 3)


def _vertical(n):
    return f"1/{n}" if n > 0 else f"-(1/{-n})"


def _random_rational(rng, depth):
    """Random rational expression and its fraction as a vector (p, q) computed independently."""
    if depth == 0 or rng.random() < 0.25:
        n = rng.choice([k for k in range(-4, 5) if k])
        if rng.random() < 0.5:
            return str(n), (n, 1)
        return _vertical(n), (1, n)
    text, (p, q) = _random_rational(rng, depth - 1)
    move = rng.randrange(4)
    n = rng.choice([k for k in range(-3, 4) if k])
    if move == 0:  # add an integer on either side
        return (f"({text}+{n})" if rng.random() < 0.5 else f"({n}+{text})"), (p + n * q, q)
    if move == 1:  # star with a vertical twist: x * 1/n = 1/(1/x + n)
        return (f"({text}*{_vertical(n)})" if rng.random() < 0.5 else f"({_vertical(n)}*{text})"), (p, q + n * p)
    if move == 2:
        return f"rot({text})", (q, p)
    return f"-({text})", (-p, q)


def test_random_rational_expressions_match_vector_oracle():
    rng = random.Random(11)
    for _ in range(200):
        text, (p, q) = _random_rational(rng, 6)
        got = nt.eval_fraction(nt.parse_tangle(text))
        if q == 0:
            assert got is nt.INF
        else:
            assert got == Fraction(p, q), text


@settings(max_examples=60)
@given(st.integers(-40, 40), st.integers(1, 40))
def test_mirror_and_rotation_properties(p, q):
    f = Fraction(p, q)
    text = nt.format_fraction(f)
    assert nt.eval_fraction(nt.parse_tangle(f"-({text})")) == -f
    assert nt.eval_fraction(nt.parse_tangle(f"rot(rot({text}))")) == f
