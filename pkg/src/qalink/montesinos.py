"""Montesinos links: reduced form, quasi-alternating classification, determinants,
and the constructive pipeline that builds the non-alternating quasi-alternating
ones from a two-tangle seed by dealternator and rational extensions."""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from qalink import diagram as dg
from qalink import notation as nt
from qalink import qa
from qalink.taitgraph import determinant

__all__ = [
    "MontesinosLink", "ReducedForm", "MontesinosVerdict", "ConstructionStep",
    "parse_montesinos", "reduce", "fop", "classify_qa", "witness_pairs",
    "determinant_closed_form", "to_expr", "compile_montesinos", "build_by_extensions",
    "log_to_json", "build_certificate",
]


@dataclass(frozen=True)
class MontesinosLink:
    """``M(e; t_1, ..., t_n) = N(e + 1/t_1 + ... + 1/t_n)``."""

    e: int
    params: tuple

    def __post_init__(self):
        ps = tuple(Fraction(p) for p in self.params)
        if not ps:
            raise ValueError("a Montesinos link needs at least one parameter")
        for p in ps:
            if p == 0 or abs(p) == 1:
                raise ValueError(f"parameter {p} is 0 or +-1")
        object.__setattr__(self, "params", ps)
        object.__setattr__(self, "e", int(self.e))

    @property
    def n(self) -> int:
        return len(self.params)

    def mirror(self) -> "MontesinosLink":
        return MontesinosLink(-self.e, tuple(-p for p in self.params))

    def __str__(self) -> str:
        return f"{self.e};" + ",".join(nt.format_fraction(p) for p in self.params)


def parse_montesinos(text: str) -> MontesinosLink:
    """Parse ``"e;a1/b1,a2/b2,..."``."""
    try:
        e, rest = text.split(";")
        params = [Fraction(x.strip()) for x in rest.split(",") if x.strip()]
        return MontesinosLink(int(e.strip()), tuple(params))
    except (ValueError, ZeroDivisionError) as exc:
        raise nt.NotationError(f"bad Montesinos parameters {text!r}: {exc}", 0) from exc


def fop(t: Fraction) -> Fraction:
    """``a/(b-a)`` for positive ``t = a/b`` and ``a/(b+a)`` for negative ``t``."""
    t = Fraction(t)
    a, b = t.numerator, t.denominator
    if t > 0:
        return Fraction(a, b - a)
    if t < 0:
        return Fraction(a, b + a)
    raise ValueError("fop of zero")


@dataclass(frozen=True)
class ReducedForm:
    epsilon: int
    hats: tuple
    fops: tuple = field(default=())

    def __post_init__(self):
        hats = tuple(Fraction(h) for h in self.hats)
        object.__setattr__(self, "hats", hats)
        if len(self.fops) != len(hats):
            object.__setattr__(self, "fops", tuple(abs(fop(h)) for h in hats))

    @property
    def n(self) -> int:
        return len(self.hats)

    def link(self) -> MontesinosLink:
        return MontesinosLink(self.epsilon, self.hats)


def reduce(M: MontesinosLink) -> ReducedForm:
    """``epsilon = e + sum floor(1/t_i)`` and hats ``1/{1/t_i}``, each > 1.

    A parameter whose inverse is an integer is absorbed into ``epsilon``
    and dropped.
    """
    eps = M.e
    hats = []
    for t in M.params:
        inv = 1 / t
        fl = math.floor(inv)
        eps += fl
        frac = inv - fl
        if frac:
            hats.append(1 / frac)
    return ReducedForm(eps, tuple(hats))


def witness_pairs(R: ReducedForm, greater: bool = True) -> list:
    """Index pairs ``(i, j)``, ``i != j``, with ``|hat_i^f| > hat_j`` (or ``<``)."""
    out = []
    for i, fi in enumerate(R.fops):
        for j, hj in enumerate(R.hats):
            if i != j and ((fi > hj) if greater else (fi < hj)):
                out.append((i, j))
    return out


@dataclass(frozen=True)
class MontesinosVerdict:
    qa: bool
    clause: str
    clause_index: Optional[int] = None
    witness: Optional[tuple] = None

    def as_dict(self) -> dict:
        return {"qa": self.qa, "clause": self.clause}


def classify_qa(M) -> MontesinosVerdict:
    """Quasi-alternating classification of Montesinos links from the reduced form."""
    if isinstance(M, str):
        M = parse_montesinos(M)
    R = reduce(M) if isinstance(M, MontesinosLink) else M
    n, eps = R.n, R.epsilon
    if eps > -1:
        return MontesinosVerdict(True, "eps>-1", 1)
    if eps == -1:
        w = witness_pairs(R, True)
        if w:
            return MontesinosVerdict(True, f"eps=-1, witness pair {w[0]}", 2, w[0])
    if eps < 1 - n:
        return MontesinosVerdict(True, "eps<1-n", 3)
    if eps == 1 - n:
        w = witness_pairs(R, False)
        if w:
            return MontesinosVerdict(True, f"eps=1-n, witness pair {w[0]}", 4, w[0])
    if eps == -1:
        return MontesinosVerdict(False, "eps=-1, no witness pair")
    if eps == 1 - n:
        return MontesinosVerdict(False, "eps=1-n, no witness pair")
    return MontesinosVerdict(False, "1-n<eps<-1")


def determinant_closed_form(M: MontesinosLink) -> int:
    """``|prod a_i * (e + sum b_i/a_i)|`` for ``t_i = a_i/b_i``."""
    prod = 1
    total = Fraction(M.e)
    for t in M.params:
        prod *= t.numerator
        total += Fraction(t.denominator, t.numerator)
    val = prod * total
    assert val.denominator == 1
    return abs(int(val))


def _term(x: Fraction) -> str:
    return nt.format_fraction(x)


def to_expr(M: MontesinosLink) -> str:
    """Link notation ``n(e + 1/t_1 + ...)``; a zero ``e`` is omitted."""
    parts = ([str(M.e)] if M.e else []) + [_term(1 / t) for t in M.params]
    return "n(" + "+".join(parts) + ")"


def compile_montesinos(M: MontesinosLink) -> dg.Diagram:
    return dg.compile_link(to_expr(M))


# -- constructive pipeline -------------------------------------------------------------

@dataclass(frozen=True)
class ConstructionStep:
    step: int
    rule: str
    expr: str
    det: int
    det0: Optional[int] = None
    detinf: Optional[int] = None
    diagram: Optional[dg.Diagram] = field(default=None, compare=False, repr=False)
    fraction: Optional[Fraction] = None

    def as_dict(self) -> dict:
        out = {"step": self.step, "rule": self.rule, "expr": self.expr, "det": self.det,
               "det0": self.det0, "detinf": self.detinf}
        if self.fraction is not None:
            out["fraction"] = nt.format_fraction(self.fraction)
        return out


def log_to_json(log: list) -> str:
    return json.dumps([s.as_dict() for s in log], separators=(",", ":"))


def _link_expr(items: list) -> str:
    return "n(" + "+".join(items) + ")"


def _build_clause2(R: ReducedForm, pair: tuple) -> tuple:
    i, j = sorted(pair)
    hats = R.hats
    inv = {k: _term(1 / hats[k]) for k in range(R.n)}
    placed = [i, j]
    items = ["-1", inv[i], inv[j]]
    D = dg.compile_link(_link_expr(items))
    log = [ConstructionStep(0, "seed", _link_expr(items), determinant(D), diagram=D)]
    step = 1
    for k in range(R.n):
        if k in placed:
            continue
        # flype: slide the dealternator to where the k-th tangle belongs
        pos = sum(1 for p in placed if p < k)
        rest = [inv[p] for p in sorted(placed)]
        items = rest[:pos] + ["-1@d"] + rest[pos:]
        D2 = dg.compile_link(_link_expr(items))
        c = D2.mark("d")[0]
        if dg.dealternators(D2) != [c]:
            raise AssertionError("slid diagram does not have the expected dealternator")
        d, d0, di = qa.smoothing_dets(D2, c)
        if d != log[-1].det:
            raise AssertionError("flype changed the determinant")
        log.append(ConstructionStep(step, "flype", _link_expr(items), d, d0, di, D2))
        # dealternator extension: the smoothing determinants force -1/2
        D3, t, c = qa.dealternator_extension(D2)
        if t != Fraction(-1, 2) or not d0 > di:
            raise AssertionError("dealternator extension did not choose -1/2")
        items = rest[:pos] + ["-1/2"] + rest[pos:]
        d3, e0, ei = qa.smoothing_dets(D3, c)
        log.append(ConstructionStep(step + 1, "dealternator_extension", _link_expr(items), d3, e0, ei, D3))
        # rewrite -1/2 as -1 + 1/2
        items = rest[:pos] + ["-1", "1/2@tau"] + rest[pos:]
        D4 = dg.compile_link(_link_expr(items))
        tau1 = D4.mark("tau")[0]
        d4, f0, fi = qa.smoothing_dets(D4, tau1)
        if d4 != d3:
            raise AssertionError("rewriting -1/2 as -1+1/2 changed the determinant")
        log.append(ConstructionStep(step + 2, "rewrite", _link_expr(items), d4, f0, fi, D4))
        # rational extension of the top crossing of 1/2 by t/(1-t); (t/(1-t))*1 = t
        tk = 1 / hats[k]
        ext = tk / (1 - tk)
        D5 = dg.rational_extension(D4, tau1, ext, mark=f"tangle{k}")
        placed.append(k)
        items = [inv[p] for p in sorted(placed)]
        items.insert(pos, "-1")
        d5, g0, gi = qa.smoothing_dets(D5, tau1)
        if d5 != determinant(dg.compile_link(_link_expr(items))):
            raise AssertionError("inserted tangle does not give the expected link")
        log.append(ConstructionStep(step + 3, "rational_extension", _link_expr(items), d5, g0, gi, D5, ext))
        D = D5
        step += 4
    return D, log


def build_by_extensions(M, pair: Optional[tuple] = None) -> tuple:
    """Build a non-alternating quasi-alternating Montesinos link from a two-tangle seed.

    Starts from ``n(-1 + 1/hat_i + 1/hat_j)`` for a witness pair and inserts
    each remaining tangle by a flype, a dealternator extension by ``-1/2``,
    the rewrite ``-1/2 = -1 + 1/2`` and a rational extension of the top
    crossing of ``1/2``.  Targets of the mirror clause are built mirrored.
    Returns ``(diagram, log)``; the last log entry carries the final diagram.
    """
    if isinstance(M, str):
        M = parse_montesinos(M)
    v = classify_qa(M)
    if v.clause_index not in (2, 4):
        raise qa.QAError(f"target is not in the non-alternating quasi-alternating band ({v.clause})")
    mirrored = v.clause_index == 4
    R = reduce(M.mirror() if mirrored else M)
    pairs = witness_pairs(R, True)
    if not pairs or R.epsilon != -1:
        raise qa.QAError("witness pair missing")
    if pair is not None and tuple(pair) not in pairs:
        raise qa.QAError(f"{tuple(pair)} is not a witness pair")
    D, log = _build_clause2(R, tuple(pair) if pair is not None else pairs[0])
    if mirrored:
        D = dg.transform(D, "mirror")
        last = log[-1]
        log.append(ConstructionStep(last.step + 1, "mirror", f"n(-({last.expr[2:-1]}))", determinant(D), diagram=D))
    if determinant(D) != determinant_closed_form(M):
        raise AssertionError("built diagram does not have the closed-form determinant")
    return D, log


def build_certificate(log: list, depth_budget: Optional[int] = None) -> qa.QACertificate:
    """Certificate for the diagram at the end of a construction log.

    The last rational extension becomes an extension node whose child is
    certified by smoothing the extended crossing; a final mirror step
    mirrors the whole certificate.
    """
    steps = list(log)
    mirrored = steps[-1].rule == "mirror"
    if mirrored:
        steps.pop()
    last = steps[-1]
    if last.rule == "seed":
        v = qa.certify(last.diagram, depth_budget, expr=last.expr)
        if not isinstance(v, qa.Certified):
            raise qa.QAError(f"seed was not certified: {v.verdict}")
        cert = v.certificate
    else:
        if last.rule != "rational_extension" or steps[-2].rule != "rewrite":
            raise qa.QAError("log does not end with a rational extension")
        before = steps[-2]
        D4, D5 = before.diagram, last.diagram
        tau1 = D4.mark("tau")[0]
        name = next(k for k, _ in D5.marks if k.startswith("tangle"))
        ids = D5.mark(name)
        expr = re.sub(r"@[A-Za-z_]\w*", "", before.expr)
        v = qa.certify(D4, depth_budget, crossings=[tau1], expr=expr)
        if not isinstance(v, qa.Certified):
            raise qa.QAError(f"rewritten diagram was not certified at the extended crossing: {v.verdict}")
        cert = qa.QACertificate(D5, extension=(tau1, tuple(ids), last.fraction), children=(v.certificate,))
    return qa.mirror_certificate(cert) if mirrored else cert
