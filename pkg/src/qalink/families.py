"""Generators for infinite families of almost alternating quasi-alternating links.

* the ladder ``T_k = 1/2 + ... + 1/2 + T`` and its determinant recurrences;
* the sum family ``N(-1 + t_1 + ... + t_k + T)``, built from ``n(-1 + T_k)``
  by extending the top crossing of each ``1/2`` by ``t_i/(1 - t_i)``;
* the rotated family, which runs the sum family on the rotated tangle;
* the star construction ``T * t`` giving a seed ``n(-1 + S)`` for any
  alternating tangle;
* the semi-alternating counterexamples: a diagram quasi-alternating at a
  crossing of an embedded rational tangle whose collapse to that one
  crossing is non-quasi-alternating.

Generators refuse (raise :class:`FamilyError`) when a precondition fails.
"""

from __future__ import annotations

import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from qalink import diagram as dg
from qalink import notation as nt
from qalink import polynomials as pl
from qalink import qa
from qalink import taitgraph as tg
from qalink.taitgraph import determinant

__all__ = [
    "FamilyError", "FamilySpec", "GeneratedLink", "VARIANTS",
    "ladder_expr", "ladder_report", "seed_conditions", "rotate_expr",
    "generate_sum_family", "generate_rotated_family", "star_expr", "star_construction",
    "semi_alternating_counterexample", "suspected_inequality", "ratio_experiment", "generate", "sweep",
    "random_positive_fraction", "random_strong_tangle", "almost_alternating_corpus",
]

VARIANTS = ("sum", "rotated", "star", "counterexample")


class FamilyError(ValueError):
    """A generator precondition failed; ``reason`` is machine readable."""

    def __init__(self, reason: str, detail: str = ""):
        super().__init__(f"{reason}: {detail}" if detail else reason)
        self.reason = reason
        self.detail = detail


@dataclass(frozen=True)
class FamilySpec:
    """One family instance: ``variant`` with base tangle ``T`` and fractions ``params``.

    ``star`` holds the continued fraction ``[0, a_1, ..., a_k]`` of the star
    variant and ``S`` the second tangle of the counterexample variant.
    """

    variant: str
    T: str
    params: tuple = ()
    star: tuple = ()
    S: Optional[str] = None

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise FamilyError("unknown_variant", self.variant)
        ps = tuple(Fraction(p) for p in self.params)
        for p in ps:
            if not 0 < p < 1:
                raise FamilyError("parameter_out_of_range", f"{p} is not strictly between 0 and 1")
        object.__setattr__(self, "params", ps)
        object.__setattr__(self, "star", tuple(int(a) for a in self.star))

    @classmethod
    def from_dict(cls, d: dict) -> "FamilySpec":
        return cls(d["variant"], d["T"], tuple(Fraction(p) for p in d.get("params", ())),
                   tuple(d.get("star", ())), d.get("S"))

    def as_dict(self) -> dict:
        out = {"variant": self.variant, "T": self.T,
               "params": [nt.format_fraction(p) for p in self.params]}
        if self.star:
            out["star"] = list(self.star)
        if self.S is not None:
            out["S"] = self.S
        return out

    def key(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True)


@dataclass(frozen=True)
class GeneratedLink:
    """A generated diagram with its certificate, dealternator and build log."""

    expr: str
    diagram: dg.Diagram = field(repr=False)
    certificate: Optional[qa.QACertificate] = field(default=None, repr=False)
    verdict: str = "Unknown"
    dealternator: Optional[int] = None
    det: int = 0
    crossing_number: int = 0
    log: tuple = ()
    checks: dict = field(default_factory=dict)

    def as_dict(self, with_certificate: bool = False) -> dict:
        out = {"expr": self.expr, "verdict": self.verdict, "dealternator": self.dealternator,
               "det": self.det, "crossing_number": self.crossing_number,
               "log": list(self.log), "checks": self.checks,
               "diagram": json.loads(dg.to_json(self.diagram))}
        if with_certificate and self.certificate is not None:
            out["certificate"] = json.loads(qa.certificate_to_json(self.certificate))
        return out


# -- helpers -----------------------------------------------------------------------------

def _tangle(T) -> dg.Diagram:
    return T if isinstance(T, dg.Diagram) else dg.compile_tangle(nt.parse_tangle(T))


def _closure_dets(T) -> tuple:
    D = _tangle(T)
    return determinant(dg.closure(D, "numerator")), determinant(dg.closure(D, "denominator"))


def _wrap(T: str) -> str:
    return T if T.startswith("(") and T.endswith(")") else f"({T})"


def _frac(x: Fraction) -> str:
    return nt.format_fraction(x)


def _dealternator_check(D: dg.Diagram) -> tuple:
    """``(c, holds)``: the unique dealternator and ``det = |det0 - det_inf|`` there."""
    deal = dg.dealternators(D)
    if len(deal) != 1:
        raise FamilyError("dealternator_count", f"expected one dealternator, found {len(deal)}")
    d, d0, di = qa.smoothing_dets(D, deal[0])
    return deal[0], d == qa.det_at_dealternator(d0, di)


def _prime_numerator(T) -> bool:
    return tg.graph_properties(tg.tait_graph(dg.closure(_tangle(T), "numerator")))["nonseparable"]


# -- ladder ----------------------------------------------------------------------------------

def ladder_expr(T: str, k: int) -> str:
    """``T_k = 1/2 + ... + 1/2 + T`` with ``k`` copies of ``1/2``."""
    if k < 0:
        raise FamilyError("negative_ladder", str(k))
    return "+".join(["1/2"] * k + [_wrap(T)])


def ladder_report(T: str, k: int) -> dict:
    """Closure determinants of ``T_k`` against ``2^k det d(T)`` and ``2^k det n(T) + k 2^(k-1) det d(T)``."""
    dn, dd = _closure_dets(T)
    rows = []
    for j in range(k + 1):
        n_j, d_j = _closure_dets(ladder_expr(T, j))
        pred_n = 2 ** j * dn + (j * 2 ** (j - 1) * dd if j else 0)
        pred_d = 2 ** j * dd
        rows.append({"k": j, "det_n": n_j, "det_d": d_j, "closed_n": pred_n, "closed_d": pred_d,
                     "holds": n_j == pred_n and d_j == pred_d})
    return {"T": T, "det_n": dn, "det_d": dd, "rows": rows, "holds": all(r["holds"] for r in rows)}


# -- seed conditions ---------------------------------------------------------------------------

def seed_conditions(T: str, *, depth_budget: Optional[int] = None) -> dict:
    """Preconditions of the sum family for ``T``; nothing here is assumed."""
    D = _tangle(T)
    dn, dd = _closure_dets(D)
    seed = f"n(-1+{_wrap(T)})"
    v = qa.certify(dg.compile_link(seed), depth_budget, expr=seed)
    return {
        "strongly_alternating": dg.classify(D).strongly_alternating,
        "numerator_prime": _prime_numerator(D),
        "det_n": dn, "det_d": dd,
        "det_inequality": dn > dd,
        "seed": seed, "seed_verdict": v.verdict,
        "seed_certificate": v.certificate if isinstance(v, qa.Certified) else None,
    }


def _require_seed(T: str, depth_budget: Optional[int]) -> dict:
    cond = seed_conditions(T, depth_budget=depth_budget)
    if not cond["strongly_alternating"]:
        raise FamilyError("not_strongly_alternating", T)
    if not cond["numerator_prime"]:
        raise FamilyError("numerator_not_prime", T)
    if not cond["det_inequality"]:
        raise FamilyError("det_inequality", f"det n(T) = {cond['det_n']} is not above det d(T) = {cond['det_d']}")
    if cond["seed_verdict"] != "Certified":
        raise FamilyError("seed_not_certified", f"{cond['seed']} gave {cond['seed_verdict']}")
    return cond


# -- sum family -------------------------------------------------------------------------------

def _sum_expr(T: str, params: tuple, done: int, tag: Optional[int] = None) -> str:
    parts = ["-1"]
    for i, t in enumerate(params):
        if i < done:
            parts.append(f"({_frac(t / (1 - t))}*1)")
        else:
            parts.append(f"1/2@h{i}" if i == tag else "1/2")
    parts.append(_wrap(T))
    return "n(" + "+".join(parts) + ")"


def _closed_form_det(T: str, params: tuple) -> int:
    """Determinant of ``N(-(1 - t_1) + t_2 + ... + T)`` from the closures of the alternating part."""
    if not params:
        return determinant(dg.compile_link(f"n(-1+{_wrap(T)})"))
    rest = "+".join([_frac(t) for t in params[1:]] + [_wrap(T)])
    dn, dd = _closure_dets(rest)
    x = 1 - params[0]
    return qa.det_rational_sum(x.numerator, x.denominator, dn, dd, sign=-1)


def generate_sum_family(T: str, params, *, depth_budget: Optional[int] = None) -> GeneratedLink:
    """Build ``N(-1 + t_1 + ... + t_k + T)`` by rational extensions of ``n(-1 + T_k)``.

    Loop ``i`` extends the top crossing of the ``i``-th ``1/2`` by
    ``t_i/(1 - t_i)``; ``(t/(1-t)) * 1 = t``.  The certificate's root is an
    extension node over the last loop's input, certified at that crossing.
    """
    params = tuple(Fraction(p) for p in params)
    for p in params:
        if not 0 < p < 1:
            raise FamilyError("parameter_out_of_range", f"{p} is not strictly between 0 and 1")
    cond = _require_seed(T, depth_budget)
    log = [{"step": 0, "rule": "seed", "expr": cond["seed"]}]
    if not params:
        D = dg.compile_link(cond["seed"])
        cert = cond["seed_certificate"]
        expr = cond["seed"]
    else:
        D, cert = None, None
        for i, t in enumerate(params):
            before = _sum_expr(T, params, i, tag=i)
            base = dg.compile_link(before)
            tau = base.mark(f"h{i}")[0]
            s = t / (1 - t)
            D = dg.rational_extension(base, tau, s, mark=f"tangle{i}")
            expr = _sum_expr(T, params, i + 1)
            if dg.canonical_code(D) != dg.canonical_code(dg.compile_link(expr)):
                raise AssertionError("extended diagram is not the diagram of the next expression")
            log.append({"step": i + 1, "rule": "rational_extension", "crossing": tau,
                        "fraction": _frac(s), "expr": expr, "det": determinant(D)})
            if i == len(params) - 1:
                v = qa.certify(base, depth_budget, crossings=[tau], expr=before)
                if not isinstance(v, qa.Certified):
                    raise FamilyError("extension_not_certified", f"{before} at crossing {tau}: {v.verdict}")
                cert = qa.QACertificate(D, extension=(tau, D.mark(f"tangle{i}"), s), children=(v.certificate,))
    c, additive = _dealternator_check(D)
    det = determinant(D)
    checks = {
        "certificate_verifies": bool(qa.verify_certificate(cert)),
        "dealternator_determinant": additive,
        "closed_form_det": _closed_form_det(T, params) == det,
        "det_n": cond["det_n"], "det_d": cond["det_d"],
    }
    return GeneratedLink(expr, D, cert, "Certified", c, det, D.crossing_number, tuple(log), checks)


# -- rotated family ---------------------------------------------------------------------------

def _rot(t: nt.TangleExpr) -> str:
    if isinstance(t, nt.Sum):
        return f"({_rot(t.left)}*{_rot(t.right)})"
    if isinstance(t, nt.Star):
        return f"({_rot(t.left)}+{_rot(t.right)})"
    try:
        f = nt.eval_fraction(t)
    except nt.NonRationalError:
        return f"rotcc({nt.format_tangle(t)})"
    return "0" if f is nt.INF else ("inf" if f == 0 else _frac(1 / f))


def rotate_expr(T: str) -> str:
    """Expression for the rotated tangle, whose numerator closure is the denominator closure of ``T``."""
    return _rot(nt.resolve(nt.parse_tangle(T)))


def generate_rotated_family(T: str, params, *, depth_budget: Optional[int] = None) -> GeneratedLink:
    """``N(-1 + t_1 + ... + t_k + 1/T)`` for ``T`` with ``det d(T) > det n(T)`` and ``d(T)`` prime."""
    D = _tangle(T)
    dn, dd = _closure_dets(D)
    if not dd > dn:
        raise FamilyError("det_inequality", f"det d(T) = {dd} is not above det n(T) = {dn}")
    if not tg.graph_properties(tg.tait_graph(dg.closure(D, "denominator")))["nonseparable"]:
        raise FamilyError("denominator_not_prime", T)
    R = rotate_expr(T)
    rn, _ = _closure_dets(R)
    if rn != dd:
        raise AssertionError("rotation did not swap the closure determinants")
    g = generate_sum_family(R, params, depth_budget=depth_budget)
    checks = dict(g.checks, rotated=R, rotation_swaps_closures=True)
    log = ({"step": -1, "rule": "rotate", "expr": R},) + g.log
    return GeneratedLink(g.expr, g.diagram, g.certificate, g.verdict, g.dealternator, g.det,
                         g.crossing_number, log, checks)


# -- star construction ------------------------------------------------------------------------

def star_expr(T: str, terms) -> str:
    """``T * t`` for ``t = [0, a_1, ..., a_k]``: the twist tower of ``t`` with ``T`` at its core."""
    terms = [int(a) for a in terms]
    if len(terms) < 3 or terms[0] != 0 or (len(terms) - 1) % 2:
        raise FamilyError("bad_star_fraction", f"{terms} is not [0, a_1, ..., a_k] with k >= 2 even")
    if any(a <= 0 for a in terms[1:]):
        raise FamilyError("bad_star_fraction", f"{terms} has a non-positive term")
    a = terms[1:]
    e = f"({a[-1]}+{_wrap(T)})"
    for i in range(len(a) - 2, -1, -1):
        e = f"(1/{a[i]}*{e})" if i % 2 == 0 else f"({a[i]}+{e})"
    return e


def star_construction(T: str, terms) -> dict:
    """Seed data for an alternating tangle ``T``: ``S = ((1-t)/t * 1) + T * t``.

    Checks that ``n(-t + T * t)`` has the determinant of ``n(T)``, that ``S``
    is strongly alternating with prime numerator closure, and that
    ``det n(S) > det d(S)``.  Returns the checks and the seed ``n(-1 + S)``.
    """
    D = _tangle(T)
    P = dg.classify(D)
    if not (P.alternating and P.connected and P.reduced):
        raise FamilyError("not_reduced_alternating", T)
    Ts = star_expr(T, terms)
    t = nt.cf_to_fraction(terms)
    back = f"n(-{_frac(t)}+{Ts})"
    det_back = determinant(dg.compile_link(back))
    det_T = determinant(dg.closure(D, "numerator"))
    S = f"({_frac((1 - t) / t)}*1)+{Ts}"
    Sd = _tangle(S)
    dn, dd = _closure_dets(Sd)
    out = {
        "T": T, "t": _frac(t), "star": Ts, "S": S, "seed": f"n(-1+{_wrap(S)})",
        "equivalent": back, "det_equivalent": det_back, "det_n_T": det_T,
        "same_determinant": det_back == det_T,
        "strongly_alternating": dg.classify(Sd).strongly_alternating,
        "numerator_prime": _prime_numerator(Sd),
        "det_n": dn, "det_d": dd, "det_inequality": dn > dd,
    }
    if not out["same_determinant"]:
        raise AssertionError(f"det {back} = {det_back} differs from det n(T) = {det_T}")
    if not (out["strongly_alternating"] and out["numerator_prime"] and out["det_inequality"]):
        raise AssertionError(f"star seed conditions failed for {T} and {terms}: {out}")
    return out


# -- semi-alternating counterexample -----------------------------------------------------------

def _bracket_match(A: dg.Diagram, B: dg.Diagram, budget: int) -> Optional[bool]:
    try:
        return pl._same_up_to_unit(pl.kauffman_bracket(A, budget=budget), pl.kauffman_bracket(B, budget=budget))
    except tg.BudgetExceeded:
        return None


def semi_alternating_counterexample(T: str, S: str, *, skein_budget: int = 24,
                                    depth_budget: Optional[int] = None) -> dict:
    """Quasi-alternating ``D`` whose embedded ``-1/3`` collapses to a non-quasi-alternating ``d``.

    With ``S' = hflip(rotcc(-S))``: ``d = n(-1 + (S'+1)*(T+1))`` is the
    semi-alternating link ``N(T + S)`` and ``D`` replaces the dealternator of
    ``d`` by ``-1/3``.  Link identities are cross-checked by determinants
    and Kauffman brackets up to a unit (``None`` when over the skein budget).
    """
    PT, PS = dg.classify(_tangle(T)), dg.classify(_tangle(S))
    if not (PT.strongly_alternating and PT.alternating_type == 1):
        raise FamilyError("T_not_type1", f"{T} must be strongly alternating of type 1")
    if not (PS.strongly_alternating and PS.alternating_type == 2):
        raise FamilyError("S_not_type2", f"{S} must be strongly alternating of type 2")
    Sp = f"hflip(rotcc(-{_wrap(S)}))"
    core = f"({Sp}+1)*({T}+1)"
    d = dg.compile_link(f"n(-1@c+{core})")
    c = d.mark("c")[0]
    Pd = dg.classify(d)
    semi = dg.compile_link(f"n({_wrap(T)}+{_wrap(S)})")
    half = dg.rational_extension(d, c, Fraction(-1, 2))
    alt = dg.compile_link(f"n({_wrap(T)}+(1/2*{Sp}))")
    Palt = dg.classify(alt)
    D = dg.rational_extension(d, c, Fraction(-1, 3), mark="tangle")
    ids = D.mark("tangle")
    v = qa.certify(D, depth_budget, crossings=[ids[0]])
    cert = v.certificate if isinstance(v, qa.Certified) else None
    checks = {
        "d_almost_alternating": Pd.almost_alternating and list(Pd.dealternators) == [c],
        "d_dealternator_reduced_connected": Pd.dealternator_reduced and Pd.dealternator_connected,
        "half_extension_alternating": (Palt.alternating and Palt.connected and Palt.reduced
                                       and determinant(alt) == determinant(half)),
        "half_extension_bracket": _bracket_match(half, alt, skein_budget),
        "D_certified_at_tangle": cert is not None and bool(qa.verify_certificate(cert)),
        "d_semi_alternating": (dg.semi_alternating_witness(semi) is not None
                               and determinant(semi) == determinant(d)),
        "d_bracket": _bracket_match(d, semi, skein_budget),
    }
    passed = all(x is not False for x in checks.values())
    return {
        "T": T, "S": S, "S_prime": Sp,
        "d": f"n(-1+{core})", "D": f"n(-1/3+{core})", "semi_alternating": f"n({_wrap(T)}+{_wrap(S)})",
        "half_extension": f"n({_wrap(T)}+(1/2*{Sp}))",
        "dealternator": c, "tangle": list(ids), "crossing": cert.crossing if cert else None,
        "det_D": determinant(D), "det_d": determinant(d), "verdict_D": v.verdict,
        "checks": checks, "passed": passed,
        "diagram_D": D, "diagram_d": d, "certificate": cert,
    }


# -- experiments and sweeps ---------------------------------------------------------------------

def suspected_inequality(tangles) -> list:
    """``det n(T) > det d(T)`` over strongly alternating ``T`` with prime ``n(T)``; reports, never assumes."""
    rows = []
    for T in tangles:
        D = _tangle(T)
        if not dg.classify(D).strongly_alternating or not _prime_numerator(D):
            continue
        dn, dd = _closure_dets(D)
        rows.append({"T": T, "det_n": dn, "det_d": dd, "holds": dn > dd})
    return rows


def ratio_experiment(count: int, seed: int = 0, max_crossings: int = 14,
                     depth_budget: Optional[int] = None) -> dict:
    """Compare the determinant-ratio test with certification on random ``N(-t + T)``.

    The ratio test (``det n(T)/det d(T) <= t`` obstructs) is a theorem, so a
    certified row it obstructs would be a bug.  Rows it leaves open but
    that are refuted answer the question whether ``t`` and the ratio alone
    decide quasi-alternateness; ``Unknown`` rows stay undecided.
    """
    rng = random.Random(seed)
    rows, seen = [], set()
    tries = 0
    while len(rows) < count and tries < 50 * count:
        tries += 1
        T = random_strong_tangle(rng, rng.choice((2, 2, 3)))
        t = random_positive_fraction(rng, 5)
        expr = f"n(-{_frac(t)}+{T})"
        if expr in seen:
            continue
        seen.add(expr)
        D = dg.compile_link(expr)
        if D.crossing_number > max_crossings or not dg.is_connected(D):
            continue
        dn, dd = _closure_dets(T)
        obstructed = qa.ratio_obstruction(t, dn, dd)
        v = qa.certify(D, depth_budget, expr=expr)
        rows.append({"expr": expr, "t": _frac(t), "T": T, "det_n": dn, "det_d": dd,
                     "ratio": _frac(Fraction(dn, dd)), "obstructed": obstructed, "verdict": v.verdict})
    open_refuted = [r["expr"] for r in rows if not r["obstructed"] and r["verdict"].startswith("Refuted")]
    contradictions = [r["expr"] for r in rows if r["obstructed"] and r["verdict"] == "Certified"]
    return {"rows": rows, "contradictions": contradictions, "ratio_insufficient": open_refuted,
            "undecided": sum(1 for r in rows if r["verdict"] == "Unknown")}


def generate(spec: FamilySpec, *, depth_budget: Optional[int] = None) -> GeneratedLink:
    if spec.variant == "sum":
        return generate_sum_family(spec.T, spec.params, depth_budget=depth_budget)
    if spec.variant == "rotated":
        return generate_rotated_family(spec.T, spec.params, depth_budget=depth_budget)
    if spec.variant == "star":
        seed = star_construction(spec.T, spec.star)
        g = generate_sum_family(seed["S"], spec.params, depth_budget=depth_budget)
        checks = dict(g.checks, star={k: v for k, v in seed.items() if isinstance(v, (bool, int, str))})
        return GeneratedLink(g.expr, g.diagram, g.certificate, g.verdict, g.dealternator, g.det,
                             g.crossing_number, g.log, checks)
    if spec.S is None:
        raise FamilyError("missing_S", "the counterexample variant needs S")
    r = semi_alternating_counterexample(spec.T, spec.S, depth_budget=depth_budget)
    D = r["diagram_D"]
    checks = {k: v for k, v in r["checks"].items()}
    return GeneratedLink(r["D"], D, r["certificate"], r["verdict_D"], None, r["det_D"],
                         D.crossing_number, (), checks)


def _sweep_one(item: dict) -> dict:
    try:
        spec = FamilySpec.from_dict(item)
    except (KeyError, ValueError, TypeError) as exc:
        reason = exc.reason if isinstance(exc, FamilyError) else "malformed_entry"
        return {"key": json.dumps(item, sort_keys=True), "status": "refused", "reason": reason, "detail": str(exc)}
    budgets = item.get("budgets", {})
    row = {"key": spec.key(), "spec": spec.as_dict()}
    try:
        g = generate(spec, depth_budget=budgets.get("depth"))
    except FamilyError as exc:
        row.update(status="refused", reason=exc.reason, detail=exc.detail)
        return row
    row.update(status="ok", link=g.as_dict(with_certificate=item.get("certificate", False)))
    return row


def sweep(manifest, jobs: int = 1) -> list:
    """Run every manifest entry; rows are sorted by instance key whatever the scheduling."""
    items = manifest if isinstance(manifest, list) else manifest.get("instances", [])
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_sweep_one, items))
    else:
        rows = [_sweep_one(it) for it in items]
    return sorted(rows, key=lambda r: r["key"])


# -- random corpora -------------------------------------------------------------------------------

def random_positive_fraction(rng: random.Random, max_den: int = 7) -> Fraction:
    """A fraction strictly between 0 and 1."""
    q = rng.randint(2, max_den)
    p = rng.randint(1, q - 1)
    return Fraction(p, q)


def random_strong_tangle(rng: random.Random, pieces: int = 2, max_den: int = 5) -> str:
    """A sum of rational tangles in ``(0, 1)``: alternating of type 1, and strongly alternating."""
    return "(" + "+".join(_frac(random_positive_fraction(rng, max_den)) for _ in range(pieces)) + ")"


def almost_alternating_corpus(count: int, seed: int = 0, max_crossings: int = 14) -> list:
    """Expressions ``n(-t + T)`` with one dealternator, ``0 < t < 1`` and ``T`` strongly alternating."""
    rng = random.Random(seed)
    out, seen = [], set()
    while len(out) < count:
        T = random_strong_tangle(rng, rng.choice((2, 2, 3)))
        t = random_positive_fraction(rng, 5)
        expr = f"n(-1+{_frac(1 - t)}+{T})" if rng.random() < 0.5 else f"n(-{_frac(t)}+{T})"
        if expr in seen:
            continue
        seen.add(expr)
        D = dg.compile_link(expr)
        if D.crossing_number > max_crossings or len(dg.dealternators(D)) != 1:
            continue
        out.append(expr)
    return out
