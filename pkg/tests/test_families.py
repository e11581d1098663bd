import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qalink import diagram as dg
from qalink import families as fa
from qalink import qa
from qalink.taitgraph import determinant

F = Fraction
BASES = ["2/3+2/3", "3/4+2/3", "2/3+2/3+1/3"]
PAIRS = [("(2/3+2/3)", "-(1/3+1/3)"), ("(1/3+1/3)", "-(2/5+1/3)"), ("(1/3+1/2)", "-(1/3+1/3)")]


# -- ladder ------------------------------------------------------------------------

@pytest.mark.parametrize("T", BASES + ["1/3+1/3", "[2,2]+1/3"])
def test_ladder_recurrences(T):
    r = fa.ladder_report(T, 4)
    assert r["holds"], r
    assert fa.ladder_expr(T, 2) == f"1/2+1/2+({T})"


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_ladder_random_bases(seed):
    T = fa.random_strong_tangle(random.Random(seed))
    assert fa.ladder_report(T, 3)["holds"]


# -- seeds and the sum family ------------------------------------------------------

def test_seed_conditions():
    c = fa.seed_conditions("2/3+2/3")
    assert c["strongly_alternating"] and c["numerator_prime"]
    assert (c["det_n"], c["det_d"]) == (12, 9)
    assert c["seed_verdict"] == "Certified"


@pytest.mark.parametrize("T,params", [
    ("2/3+2/3", (F(1, 2),)),
    ("2/3+2/3", (F(1, 3), F(2, 5))),
    ("3/4+2/3", (F(1, 2),)),
    ("2/3+2/3+1/3", (F(2, 3),)),
])
def test_sum_family(T, params):
    g = fa.generate_sum_family(T, params)
    assert g.verdict == "Certified"
    assert all(v is True for k, v in g.checks.items() if isinstance(v, bool))
    assert qa.verify_certificate(g.certificate).accepted
    D = dg.compile_link(g.expr)
    assert dg.canonical_code(D) == dg.canonical_code(g.diagram)
    assert g.det == determinant(D)
    assert dg.dealternators(D) == [g.dealternator]


@pytest.mark.parametrize("T,reason", [
    ("1/3+1/3", "det_inequality"),
    ("2+2", "not_strongly_alternating"),
])
def test_sum_family_refusals(T, reason):
    with pytest.raises(fa.FamilyError) as exc:
        fa.generate_sum_family(T, (F(1, 2),))
    assert exc.value.reason == reason


def test_spec_validation():
    with pytest.raises(ValueError):
        fa.FamilySpec("sum", "2/3+2/3", (F(3, 2),))
    with pytest.raises(ValueError):
        fa.FamilySpec("unknown", "2/3+2/3", (F(1, 2),))
    s = fa.FamilySpec.from_dict({"variant": "sum", "T": "2/3+2/3", "params": ["1/2"]})
    assert fa.FamilySpec.from_dict(s.as_dict()) == s


def test_rotated_family():
    g = fa.generate_rotated_family("3/2*3/2", (F(1, 2),))
    assert g.verdict == "Certified"
    assert g.checks["rotation_swaps_closures"]
    with pytest.raises(fa.FamilyError):
        fa.generate_rotated_family("2/3+2/3", (F(1, 2),))


# -- star construction --------------------------------------------------------------

@pytest.mark.parametrize("T,terms", [("3", [0, 1, 1]), ("2/3+2/3", [0, 1, 2]), ("[2,2]", [0, 2, 1])])
def test_star_construction(T, terms):
    r = fa.star_construction(T, terms)
    assert r["same_determinant"] and r["strongly_alternating"]
    assert r["numerator_prime"] and r["det_inequality"]


def test_star_generation():
    g = fa.generate(fa.FamilySpec("star", "3", (F(1, 2),), star=(0, 1, 1)))
    assert g.verdict == "Certified"
    assert qa.verify_certificate(g.certificate).accepted


@pytest.mark.parametrize("terms", [[1, 1, 1], [0, 1], [0, 1, -1]])
def test_star_rejects_bad_fraction(terms):
    with pytest.raises(fa.FamilyError):
        fa.star_expr("3", terms)


# -- counterexample ----------------------------------------------------------------

@pytest.mark.parametrize("T,S", PAIRS)
def test_semi_alternating_counterexample(T, S):
    r = fa.semi_alternating_counterexample(T, S)
    assert r["passed"], r["checks"]
    assert r["verdict_D"] == "Certified"
    assert r["crossing"] in r["tangle"]
    assert dg.semi_alternating_witness(dg.compile_link(r["semi_alternating"])) is not None


def test_counterexample_type_check():
    with pytest.raises(fa.FamilyError):
        fa.semi_alternating_counterexample("-(1/3+1/3)", "(2/3+2/3)")


# -- reports and sweeps ------------------------------------------------------------

def test_suspected_inequality_reports_failures():
    rows = {r["T"]: r for r in fa.suspected_inequality(["1/3+1/3", "1/2+1/2", "2/3+2/3"])}
    assert rows["1/3+1/3"]["holds"] is False
    assert rows["1/2+1/2"]["holds"] is False
    assert rows["2/3+2/3"]["holds"] is True


def test_sweep_deterministic_and_refusals():
    manifest = [
        {"variant": "sum", "T": "3/4+2/3", "params": ["1/2"]},
        {"variant": "sum", "T": "2/3+2/3", "params": ["1/2"]},
        {"variant": "sum", "T": "1/3+1/3", "params": ["1/2"]},
        {"T": "2/3+2/3"},
    ]
    a = fa.sweep(manifest, jobs=1)
    b = fa.sweep(list(reversed(manifest)), jobs=2)
    strip = [{k: v for k, v in r.items()} for r in a]
    assert strip == b
    status = sorted(r["status"] for r in a)
    assert status == ["ok", "ok", "refused", "refused"]


def test_corpus_is_seeded_and_almost_alternating():
    a = fa.almost_alternating_corpus(8, seed=3)
    assert a == fa.almost_alternating_corpus(8, seed=3)
    for expr in a:
        D = dg.compile_link(expr)
        assert D.crossing_number <= 14
        assert len(dg.dealternators(D)) == 1


def test_ratio_experiment_finds_no_contradiction():
    r = fa.ratio_experiment(8, seed=1)
    assert r == fa.ratio_experiment(8, seed=1)
    assert r["contradictions"] == []
    for row in r["rows"]:
        t = F(row["t"])
        assert 0 < t < 1
        assert row["obstructed"] == (row["det_n"] <= t * row["det_d"])
        if row["obstructed"]:
            assert row["verdict"] != "Certified"
