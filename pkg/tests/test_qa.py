import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qalink import diagram as dg
from qalink import notation as nt
from qalink import qa
from qalink.taitgraph import determinant


def link(text):
    return dg.compile_link(text)


def certified(expr):
    r = qa.certify(link(expr), expr=expr)
    assert r.verdict == "Certified", (expr, r)
    return r.certificate


# -- search -----------------------------------------------------------------------

def test_alternating_base_case():
    r = qa.certify(link("n(3)"))
    assert r.verdict == "Certified"
    assert r.certificate.base == qa.ALTERNATING


def test_zero_determinant():
    assert qa.certify(link("n(2+-2)")).verdict == "RefutedZeroDet"


def test_disconnected_refused():
    with pytest.raises(qa.QAError):
        qa.certify(link("n(0)"))


@pytest.mark.parametrize("expr", [
    "n(-1+1/3+1/3)", "n(-1+1/3+1/4)", "n(-1+4/5+1/2)", "n(-1+[2,2]+1/3)", "n(-1+(2/3+2/3))",
])
def test_certificates_verify(expr):
    cert = certified(expr)
    assert qa.verify_certificate(cert).accepted
    assert qa.verify_certificate(qa.mirror_certificate(cert)).accepted


def test_montesinos_refutation():
    r = qa.certify(link("n(-1/2+1/3+1/3)"), expr="n(-1/2+1/3+1/3)")
    assert r.verdict == "RefutedObstruction"


def test_memo_does_not_change_verdict():
    expr = "n(-1+1/3+1/4)"
    a = qa.certify(link(expr), expr=expr, use_memo=True)
    b = qa.certify(link(expr), expr=expr, use_memo=False)
    assert a.verdict == b.verdict == "Certified"


def test_restricted_root_crossing():
    expr = "n(-1/2@d+(2/3+2/3))"
    E = link(expr)
    c = E.mark("d")[0]
    r = qa.certify(E, crossings=[c], expr=expr)
    assert r.verdict == "Certified"
    assert r.certificate.crossing == c


# -- certificates -----------------------------------------------------------------

def test_json_round_trip():
    cert = certified("n(-1+[2,2]+1/3)")
    text = qa.certificate_to_json(cert)
    back = qa.certificate_from_json(text)
    assert back == cert
    assert qa.certificate_to_json(back) == text


def _walk(node):
    yield node
    for ch in node.get("children", []):
        yield from _walk(ch)


def test_tampered_determinant_rejected():
    cert = certified("n(-1/2+(2/3+2/3))")
    d = json.loads(qa.certificate_to_json(cert))
    node = next(n for n in _walk(d) if n.get("crossing") is not None)
    node["det"] += 1
    assert not qa.verify_certificate(qa.certificate_from_json(json.dumps(d))).accepted


def test_tampered_crossing_rejected():
    cert = certified("n(-1/2+(3/4+2/3))")
    d = json.loads(qa.certificate_to_json(cert))
    node = next(n for n in _walk(d) if n.get("crossing") is not None)
    node["crossing"] = 10 ** 6
    assert not qa.verify_certificate(qa.certificate_from_json(json.dumps(d))).accepted


def test_smoothing_nodes_additive():
    cert = certified("n(-1/2+(3/4+2/3))")
    assert cert.crossings_used()

    def nodes(c):
        yield c
        for ch in c.children:
            yield from nodes(ch)

    for node in nodes(cert):
        if node.crossing is not None and not node.extension:
            assert node.det == node.det0 + node.detinf
            assert node.det0 > 0 and node.detinf > 0


# -- dealternator extension -------------------------------------------------------

def test_dealternator_extension_choice():
    D = link("n(-1+(2/3+2/3))")
    E, t, c = qa.dealternator_extension(D)
    assert t == Fraction(-1, 2)
    assert qa.additive_at(E, c)
    other = dg.rational_extension(qa._negative_frame(D, c), c, Fraction(-2))
    assert not qa.additive_at(other, c)


def test_equal_smoothings_refused():
    with pytest.raises(qa.QAError):
        qa.dealternator_extension(link("n(-1+(1/2+1/2))"))


# -- closed forms -----------------------------------------------------------------

def test_dealternator_formula():
    D = link("n(-1+(2/3+2/3))")
    c = dg.dealternators(D)[0]
    d, d0, di = qa.smoothing_dets(D, c)
    assert d == qa.det_at_dealternator(d0, di) == 3


TYPE1 = ["2/3+2/3", "3/4+2/3", "1/3+1/3", "2/5+1/3"]


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 9), st.integers(1, 9), st.sampled_from(TYPE1), st.sampled_from([1, -1]))
def test_rational_sum_formula(a, b, T, sign):
    f = Fraction(a, b)
    alpha, beta = f.numerator, f.denominator
    Td = dg.compile_tangle(nt.parse_tangle(T))
    assert dg.tangle_type(Td) == 1
    dn = determinant(dg.closure(Td, "numerator"))
    dd = determinant(dg.closure(Td, "denominator"))
    term = nt.format_fraction(f)
    expr = f"n({term}+({T}))" if sign > 0 else f"n(-({term})+({T}))"
    assert determinant(link(expr)) == qa.det_rational_sum(alpha, beta, dn, dd, sign)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
@pytest.mark.parametrize("T", TYPE1)
def test_replacement_formulas(n, T):
    D = link(f"n(-1+({T}))")
    _, d0, di = qa.smoothing_dets(D, dg.dealternators(D)[0])
    assert determinant(link(f"n(-(1/{n})+({T}))")) == qa.det_dealternator_replacement(n, d0, di)
    assert determinant(link(f"n(-{n}+({T}))")) == qa.det_dealternator_replacement(n, d0, di, "integer")
    assert qa.det_formulas("replacement", n=n, det0=d0, detinf=di) == abs(n * d0 - di)


# -- obstructions and conjecture rows ---------------------------------------------

def test_ratio_obstruction():
    assert qa.ratio_obstruction(Fraction(1, 2), 6, 9) is False
    assert qa.ratio_obstruction(Fraction(2, 3), 6, 9) is True
    with pytest.raises(ValueError):
        qa.ratio_obstruction(2, 6, 9)


def test_obstruction_levels():
    T = dg.compile_tangle(nt.parse_tangle("2/3+2/3"))
    obs = {o.name: o for o in qa.obstructions(link("n(-1+(2/3+2/3))"), t=Fraction(1, 2), T=T)}
    assert not obs["zero-determinant"].fired
    assert not obs["semi-alternating"].fired
    assert obs["dealternator-not-additive"].level == "crossing"
    assert not obs["determinant-ratio"].fired
    semi = qa.obstructions(link("n((2/3+2/3)+-(1/3+1/3))"))
    assert any(o.name == "semi-alternating" and o.fired for o in semi)


def test_conjecture_row_uses_isotopy_bound():
    row = qa.conjecture_check(link("n(-1+1/3+1/3)"), expr="n(-1+1/3+1/3)")
    assert row["crossings"] == 3 and row["det"] == 3 and row["c_le_det"]
    assert row["crossings_exact"]
    assert row["jones_holds"]
