from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qalink import diagram as dg
from qalink import montesinos as mt
from qalink import qa
from qalink.taitgraph import determinant

F = Fraction


def test_reduce_examples():
    R = mt.reduce(mt.parse_montesinos("-1;2,3,3"))
    assert R.epsilon == -1 and R.hats == (2, 3, 3)
    R = mt.reduce(mt.MontesinosLink(0, (F(-2), F(3))))
    assert R.epsilon == -1 and R.hats == (2, 3)


def test_fop():
    assert mt.fop(F(3)) == F(-3, 2)
    assert mt.fop(F(-2, 5)) == F(-2, 3)
    with pytest.raises(ValueError):
        mt.fop(F(0))


def test_parameter_validation():
    with pytest.raises(ValueError):
        mt.MontesinosLink(0, (F(1),))
    with pytest.raises(Exception):
        mt.parse_montesinos("1;2,x")


@pytest.mark.parametrize("text,qa_,clause", [
    ("-1;2,3,3", False, None),
    ("-1;5/4,2,2", True, 2),
    ("1;2,2,2", True, 1),
    ("-4;2,2,2,2", True, 3),
    ("1;-5/4,-2,-2", True, 4),
])
def test_classification(text, qa_, clause):
    v = mt.classify_qa(text)
    assert v.qa is qa_
    if clause is not None:
        assert v.clause_index == clause


def test_non_qa_clause_text():
    assert mt.classify_qa("-1;2,3,3").clause == "eps=-1, no witness pair"


@pytest.mark.parametrize("text,det", [("-1;2,2", 0), ("-1;2,3,3", 3), ("0;2,2", 4)])
def test_closed_form_determinants(text, det):
    M = mt.parse_montesinos(text)
    assert mt.determinant_closed_form(M) == det
    assert determinant(mt.compile_montesinos(M)) == det


params = st.lists(st.sampled_from([F(2), F(3), F(-2), F(5, 2), F(-3, 2), F(4, 3), F(5), F(-5, 3)]),
                  min_size=2, max_size=4)


@settings(max_examples=50, deadline=None)
@given(st.integers(-3, 2), params)
def test_reduction_invariants(e, ps):
    M = mt.MontesinosLink(e, tuple(ps))
    R = mt.reduce(M)
    assert all(h > 1 for h in R.hats)
    assert R.epsilon == e + sum(int(Fraction(1) // p) for p in ps)
    # reduction does not change the link: same determinant both ways
    assert determinant(mt.compile_montesinos(M)) == mt.determinant_closed_form(M)
    if len(R.hats) >= 1:
        Rl = mt.MontesinosLink(R.epsilon, R.hats)
        assert mt.determinant_closed_form(Rl) == mt.determinant_closed_form(M)


@settings(max_examples=30, deadline=None)
@given(st.integers(-3, 2), params)
def test_mirror_symmetry_of_classification(e, ps):
    M = mt.MontesinosLink(e, tuple(ps))
    assert mt.classify_qa(M).qa == mt.classify_qa(M.mirror()).qa


# -- constructive pipeline ----------------------------------------------------------

def test_build_one_loop():
    M = mt.parse_montesinos("-1;5/4,2,2")
    D, log = mt.build_by_extensions(M, (0, 1))
    loop = [s for s in log if s.rule != "seed"]
    assert len(loop) == 4
    assert [s.rule for s in loop] == ["flype", "dealternator_extension", "rewrite", "rational_extension"]
    assert determinant(D) == mt.determinant_closed_form(M)
    for s in log:
        assert s.det == determinant(s.diagram)


def test_two_parameter_input_is_just_seed():
    D, log = mt.build_by_extensions("-1;5/4,2")
    assert [s.rule for s in log] == ["seed"]


def test_bad_pair_rejected():
    with pytest.raises(qa.QAError):
        mt.build_by_extensions("-1;5/4,2,2", (1, 2))
    with pytest.raises(qa.QAError):
        mt.build_by_extensions("-1;2,3,3")


@pytest.mark.parametrize("text", ["-1;5/4,2,2", "-1;2,5/4,2", "1;-5/4,-2,-2", "-1;5/4,3/2,7/3"])
def test_build_certificates_verify(text):
    D, log = mt.build_by_extensions(text)
    cert = mt.build_certificate(log)
    assert cert.diagram.crossings == D.crossings or dg.canonical_code(cert.diagram) == dg.canonical_code(D)
    assert qa.verify_certificate(cert).accepted


def test_tampered_extension_fraction_rejected():
    from dataclasses import replace
    _, log = mt.build_by_extensions("-1;5/4,2,2")
    cert = mt.build_certificate(log)
    c, ids, f = cert.extension
    bad = replace(cert, extension=(c, ids, f + 1))
    assert not qa.verify_certificate(bad).accepted


def test_log_json():
    import json
    _, log = mt.build_by_extensions("-1;5/4,2,2")
    rows = json.loads(mt.log_to_json(log))
    assert rows[-1]["rule"] == "rational_extension" and "fraction" in rows[-1]
