"""Quasi-alternating certification, determinant formulas and obstructions.

A certificate is a tree.  Internal nodes record a crossing at which the
determinant is additive over the two smoothings, and carry certificates
for both smoothings.  Leaves are base cases whose predicate can be
re-checked from the diagram alone.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional

from qalink import diagram as dg
from qalink import isotopy as iso
from qalink import notation as nt
from qalink.taitgraph import determinant

__all__ = [
    "UNKNOT", "ALTERNATING", "CONNECT_SUM", "SIMPLIFY", "ISOTOPY", "EXTENSION",
    "QAError", "QACertificate", "Certified", "RefutedZeroDet", "RefutedObstruction", "Unknown",
    "certify", "verify_certificate", "certificate_to_json", "certificate_from_json",
    "det_at_dealternator", "det_rational_sum", "det_dealternator_replacement", "det_formulas",
    "dealternator_extension", "Obstruction", "obstructions", "ratio_obstruction",
    "conjecture_check", "crossing_bounds", "additive_at", "smoothing_dets", "Verification",
]

UNKNOT = "Unknot"
ALTERNATING = "ConnectedReducedAlternating"
CONNECT_SUM = "ConnectSumOfCertified"
SIMPLIFY = "Simplify"
ISOTOPY = "Isotopy"
EXTENSION = "RationalExtension"
BASE_TAGS = (UNKNOT, ALTERNATING, CONNECT_SUM)


class QAError(ValueError):
    """Precondition failure (disconnected input, bad dealternator, ...)."""


@dataclass(frozen=True)
class QACertificate:
    """Node of a certificate tree.

    ``base`` is set on leaves (and on connected-sum nodes, whose children
    certify the summands); ``crossing`` is set on smoothing nodes.  A node
    with ``removed`` set records a simplification by untwisting nugatory
    crossings and undoing removable bigons (``removed`` moves); its one
    child certifies the simplified diagram.  ``isotopy`` holds two link
    expressions with equal isotopy keys, the first drawing this diagram and
    the second the child's.  ``extension`` holds ``(crossing, ids,
    fraction)``: this diagram is the rational extension of the child's at
    that crossing, and the child is certified by smoothing that crossing.
    """

    diagram: dg.Diagram
    crossing: Optional[int] = None
    det: int = 0
    det0: int = 0
    detinf: int = 0
    children: tuple = ()
    base: Optional[str] = None
    removed: int = 0
    isotopy: tuple = ()
    extension: tuple = ()

    def size(self) -> int:
        return 1 + sum(c.size() for c in self.children)

    def depth(self) -> int:
        return 1 + max((c.depth() for c in self.children), default=0)

    def crossings_used(self) -> list:
        """Crossing ids smoothed at the root and its descendants (root first)."""
        out = [self.crossing] if self.crossing is not None else []
        for c in self.children:
            out += c.crossings_used()
        return out


@dataclass(frozen=True)
class Certified:
    certificate: QACertificate
    verdict: str = "Certified"


@dataclass(frozen=True)
class RefutedZeroDet:
    verdict: str = "RefutedZeroDet"
    reason: str = "determinant is zero"


@dataclass(frozen=True)
class RefutedObstruction:
    reason: str
    verdict: str = "RefutedObstruction"


@dataclass(frozen=True)
class Unknown:
    reason: str = "depth_exhausted"
    verdict: str = "Unknown"


# -- certificate serialization ------------------------------------------------------

def _cert_dict(cert: QACertificate) -> dict:
    d = json.loads(dg.to_json(cert.diagram))
    if cert.base is not None:
        out = {"base": cert.base, "diagram": d}
        if cert.children:
            out["children"] = [_cert_dict(c) for c in cert.children]
        return out
    if cert.isotopy:
        return {"isotopy": list(cert.isotopy), "diagram": d,
                "children": [_cert_dict(c) for c in cert.children]}
    if cert.extension:
        c, ids, t = cert.extension
        return {"extension": {"crossing": c, "ids": list(ids), "fraction": nt.format_fraction(t)},
                "diagram": d, "children": [_cert_dict(c) for c in cert.children]}
    if cert.removed:
        return {"simplify": cert.removed, "diagram": d,
                "children": [_cert_dict(c) for c in cert.children]}
    return {"diagram": d, "crossing": cert.crossing, "det": cert.det, "det0": cert.det0,
            "detinf": cert.detinf, "children": [_cert_dict(c) for c in cert.children]}


def certificate_to_json(cert: QACertificate) -> str:
    return json.dumps(_cert_dict(cert), sort_keys=True, separators=(",", ":"))


def _cert_from(d: dict) -> QACertificate:
    D = dg.from_json(d["diagram"])
    kids = tuple(_cert_from(c) for c in d.get("children", ()))
    if "base" in d:
        return QACertificate(D, base=d["base"], children=kids)
    if "isotopy" in d:
        return QACertificate(D, isotopy=tuple(d["isotopy"]), children=kids)
    if "extension" in d:
        x = d["extension"]
        ext = (int(x["crossing"]), tuple(x["ids"]), Fraction(nt.parse_fraction(x["fraction"])))
        return QACertificate(D, extension=ext, children=kids)
    if "simplify" in d:
        return QACertificate(D, removed=int(d["simplify"]), children=kids)
    return QACertificate(D, crossing=d["crossing"], det=d["det"], det0=d["det0"],
                         detinf=d["detinf"], children=kids)


def certificate_from_json(text) -> QACertificate:
    return _cert_from(json.loads(text) if isinstance(text, str) else text)


# -- verification ----------------------------------------------------------------------

@dataclass(frozen=True)
class Verification:
    accepted: bool
    reasons: tuple = ()

    def __bool__(self):
        return self.accepted


def smoothing_dets(D: dg.Diagram, cid: int) -> tuple:
    """``(det D, det D_0, det D_inf)`` at one crossing."""
    return (determinant(D), determinant(dg.smooth(D, cid, 0)),
            determinant(dg.smooth(D, cid, "inf")))


def additive_at(D: dg.Diagram, cid: int) -> bool:
    """Determinant additivity with both smoothings non-split."""
    d, d0, di = smoothing_dets(D, cid)
    return d0 > 0 and di > 0 and d == d0 + di


def _same(a: dg.Diagram, b: dg.Diagram) -> bool:
    return dg.canonical_code(a) == dg.canonical_code(b)


def _check(cert: QACertificate, path: str, out: list) -> None:
    D = cert.diagram
    if D.is_tangle:
        out.append(f"{path}: diagram is a tangle")
        return
    if cert.base == UNKNOT:
        if D.crossings or D.loops != 1 or cert.children:
            out.append(f"{path}: not the crossingless unknot")
        return
    if cert.base == ALTERNATING:
        if cert.children or not D.crossings:
            out.append(f"{path}: malformed alternating leaf")
        elif not (dg.is_alternating(D) and dg.is_connected(D)):
            out.append(f"{path}: diagram is not connected and alternating")
        elif determinant(D) == 0:
            out.append(f"{path}: alternating leaf with zero determinant")
        return
    if cert.base == CONNECT_SUM:
        split = dg.connected_sum_split(D)
        if split is None or len(cert.children) != 2:
            out.append(f"{path}: no connected-sum decomposition")
            return
        a, b = (c.diagram for c in cert.children)
        if not ((_same(a, split[0]) and _same(b, split[1])) or (_same(a, split[1]) and _same(b, split[0]))):
            out.append(f"{path}: summands do not match the decomposition")
            return
        for k, c in enumerate(cert.children):
            _check(c, f"{path}.{k}", out)
        return
    if cert.base is not None:
        out.append(f"{path}: unknown base tag {cert.base!r}")
        return
    if cert.isotopy:
        _check_isotopy(cert, path, out)
        return
    if cert.extension:
        _check_extension(cert, path, out)
        return
    if cert.removed:
        cur, moves = dg.simplify(D)
        if not moves or len(cert.children) != 1 or not _same(cur, cert.children[0].diagram):
            out.append(f"{path}: simplified diagram does not match its child")
            return
        _check(cert.children[0], f"{path}.0", out)
        return
    if cert.crossing is None or len(cert.children) != 2:
        out.append(f"{path}: malformed node")
        return
    if not dg.is_connected(D):
        out.append(f"{path}: diagram is not connected")
        return
    try:
        d, d0, di = smoothing_dets(D, cert.crossing)
    except dg.DiagramError as exc:
        out.append(f"{path}: {exc}")
        return
    if (d, d0, di) != (cert.det, cert.det0, cert.detinf):
        out.append(f"{path}: recorded determinants {(cert.det, cert.det0, cert.detinf)} "
                   f"differ from recomputed {(d, d0, di)}")
    if not (d0 > 0 and di > 0 and d == d0 + di):
        out.append(f"{path}: determinant is not additive at crossing {cert.crossing}")
    for k, mode in enumerate((0, "inf")):
        if not _same(dg.smooth(D, cert.crossing, mode), cert.children[k].diagram):
            out.append(f"{path}: child {k} is not the {mode} smoothing")
    for k, c in enumerate(cert.children):
        _check(c, f"{path}.{k}", out)


def _check_isotopy(cert: QACertificate, path: str, out: list) -> None:
    a, b = cert.isotopy
    if len(cert.children) != 1:
        out.append(f"{path}: isotopy node needs one child")
        return
    try:
        ka, kb = iso.link_key(a), iso.link_key(b)
        da, db = dg.compile_link(a), dg.compile_link(b)
    except (ValueError, dg.DiagramError) as exc:
        out.append(f"{path}: {exc}")
        return
    if ka is None or ka != kb:
        out.append(f"{path}: expressions {a!r} and {b!r} do not have equal isotopy keys")
    if not _same(da, cert.diagram):
        out.append(f"{path}: diagram is not drawn by {a!r}")
    if not _same(db, cert.children[0].diagram):
        out.append(f"{path}: child diagram is not drawn by {b!r}")
    _check(cert.children[0], f"{path}.0", out)


def _check_extension(cert: QACertificate, path: str, out: list) -> None:
    c, ids, t = cert.extension
    if len(cert.children) != 1:
        out.append(f"{path}: extension node needs one child")
        return
    child = cert.children[0]
    if child.crossing != c or child.base is not None or not ids or ids[0] != c:
        out.append(f"{path}: child is not certified at the extended crossing {c}")
        return
    try:
        back = dg.rational_extension(child.diagram, c, t, check=True)
    except dg.DiagramError as exc:
        out.append(f"{path}: {exc}")
        return
    if back.crossings != cert.diagram.crossings or back.loops != cert.diagram.loops:
        out.append(f"{path}: diagram is not the extension of its child")
    if tuple(back.mark(f"ext{c}")) != tuple(ids):
        out.append(f"{path}: recorded tangle crossings {tuple(ids)} do not match")
    _check(child, f"{path}.0", out)


def verify_certificate(cert) -> Verification:
    """Recompute every determinant and re-check every base predicate."""
    if isinstance(cert, (str, dict)):
        try:
            cert = certificate_from_json(cert)
        except (KeyError, ValueError, TypeError) as exc:
            return Verification(False, (f"unreadable certificate: {exc}",))
    out: list = []
    _check(cert, "root", out)
    return Verification(not out, tuple(out))


def _mirror_text(expr: str) -> str:
    tree = expr if "@c" in expr else iso.expand_link(expr)
    return re.sub(r"(-?)1@c", lambda m: ("1@c" if m.group(1) else "-1@c"), tree)


def mirror_certificate(cert: QACertificate) -> QACertificate:
    """Certificate of the mirror diagram: every node mirrored, smoothings unchanged."""
    kids = tuple(mirror_certificate(c) for c in cert.children)
    D = dg.transform(cert.diagram, "mirror")
    iso_pair = tuple(_mirror_text(e) for e in cert.isotopy)
    ext = cert.extension
    if ext:
        ext = (ext[0], ext[1], -ext[2])
    return replace(cert, diagram=D, children=kids, isotopy=iso_pair, extension=ext)


# -- search ------------------------------------------------------------------------------

DEFAULT_NODE_BUDGET = 20000


class _NodeBudget(Exception):
    pass


def _base_leaf(D: dg.Diagram) -> Optional[QACertificate]:
    if not D.crossings:
        return QACertificate(D, base=UNKNOT) if D.loops == 1 else None
    if dg.is_alternating(D) and dg.is_connected(D):
        return QACertificate(D, base=ALTERNATING)
    return None


class _Search:
    def __init__(self, memo: Optional[dict], max_nodes: int):
        self.memo = memo
        self.max_nodes = max_nodes
        self.nodes = 0

    def run(self, D: dg.Diagram, det: int, depth: int, roots=None, tree=None) -> Optional[QACertificate]:
        self.nodes += 1
        if self.nodes > self.max_nodes:
            raise _NodeBudget
        leaf = _base_leaf(D) if roots is None else None
        if leaf is not None:
            return leaf
        if not D.crossings or not dg.is_connected(D):
            return None
        if tree is not None and roots is None:
            leaf = self._redraw(D, det, depth, tree)
            if leaf is not None:
                return leaf
        key = None
        if self.memo is not None and roots is None:
            key = (dg.canonical_code(D), tree is not None)
            hit = self.memo.get(key)
            if isinstance(hit, QACertificate):
                return hit
            if hit is not None and hit >= depth:
                return None
        cert = self._expand(D, det, depth, roots, tree)
        if key is not None:
            self.memo[key] = cert if cert is not None else max(depth, self.memo.get(key) or 0)
        return cert

    def _redraw(self, D, det, depth, tree) -> Optional[QACertificate]:
        """Certify ``D`` through a standard diagram of the same link, if one is known."""
        try:
            form = iso.standard_form(iso.link_key(tree))
            if form is None:
                return None
            R = dg.compile_link(form)
            if dg.canonical_code(R) == dg.canonical_code(D) or R.crossing_number > D.crossing_number:
                return None
            if not _same(dg.compile_link(tree), D):
                return None
        except (ValueError, dg.DiagramError):
            return None
        sub = self.run(R, det, depth, tree=iso.expand_link(form))
        if sub is None:
            return None
        return QACertificate(D, isotopy=(tree, form), children=(sub,))

    def _expand(self, D, det, depth, roots, tree):
        if roots is None:
            U, moves = dg.simplify(D)
            if moves:
                sub = self.run(U, det, depth)
                return None if sub is None else QACertificate(D, removed=moves, children=(sub,))
            split = dg.connected_sum_split(D)
            if split is not None:
                kids = []
                for P in split:
                    dp = determinant(P)
                    c = self.run(P, dp, depth) if dp else None
                    if c is None:
                        break
                    kids.append(c)
                else:
                    return QACertificate(D, base=CONNECT_SUM, children=tuple(kids))
            if dg.semi_alternating_witness(D) is not None:
                return None
        if depth <= 0:
            return None
        cands = []
        for c in D.crossings:
            if roots is not None and c.id not in roots:
                continue
            D0, Di = dg.smooth(D, c.id, 0), dg.smooth(D, c.id, "inf")
            d0, di = determinant(D0), determinant(Di)
            if d0 == 0 or di == 0 or d0 + di != det:
                continue
            t0 = ti = None
            if tree is not None:
                t0, ti = iso.smoothed(tree, c.id, 0), iso.smoothed(tree, c.id, "inf")
            easy = sum(_base_leaf(X) is not None or (t is not None and iso.representative(iso.link_key(t)) is not None)
                       for X, t in ((D0, t0), (Di, ti)))
            cands.append((-easy, len(cands), c.id, D0, Di, d0, di, t0, ti))
        cands.sort(key=lambda x: x[:2])
        for _, _, cid, D0, Di, d0, di, t0, ti in cands:
            c0 = self.run(D0, d0, depth - 1, tree=t0)
            if c0 is None:
                continue
            ci = self.run(Di, di, depth - 1, tree=ti)
            if ci is None:
                continue
            return QACertificate(D, crossing=cid, det=det, det0=d0, detinf=di, children=(c0, ci))
        return None


def _crossing_tree(D: dg.Diagram, expr) -> Optional[str]:
    """Crossing-level expression of ``expr`` if it draws ``D`` with the same crossing ids."""
    try:
        tree = iso.expand_link(expr)
        if tree is None or dg.compile_link(tree).crossings != D.crossings:
            return None
    except (ValueError, dg.DiagramError):
        return None
    return tree


def _link_obstruction(D: dg.Diagram, hints: Optional[dict]) -> Optional[str]:
    if dg.semi_alternating_witness(D) is not None:
        return "semi-alternating diagram"
    hints = hints or {}
    m = hints.get("montesinos")
    if m is not None:
        from qalink import montesinos

        verdict = montesinos.classify_qa(m)
        if not verdict.qa:
            return f"montesinos classification: {verdict.clause}"
    if "ratio" in hints:
        t, dn, dd = hints["ratio"]
        if ratio_obstruction(t, dn, dd):
            return f"determinant ratio {dn}/{dd} does not exceed {nt.format_fraction(Fraction(t))}"
    if hints.get("almost_alternating_link"):
        deal = dg.dealternators(D)
        if len(deal) == 1:
            _, d0, di = smoothing_dets(D, deal[0])
            if abs(d0 - di) < 8:
                return "almost alternating link with smoothing determinant gap below 8"
    return None


def certify(D: dg.Diagram, depth_budget: Optional[int] = None, *, hints: Optional[dict] = None,
            memo: Optional[dict] = None, use_memo: bool = True, crossings=None,
            max_nodes: int = DEFAULT_NODE_BUDGET, expr=None, classify_montesinos: bool = True):
    """Search for a quasi-alternating certificate of a connected link diagram.

    Returns ``Certified``, ``RefutedZeroDet``, ``RefutedObstruction`` (only
    for link-level obstructions) or ``Unknown``.  ``crossings`` restricts the
    crossings tried at the root; base cases are then skipped there so the
    certificate really smooths one of them.  ``hints`` may carry
    ``montesinos`` (parameters of the link), ``ratio`` ``(t, det n(T),
    det d(T))`` for a link ``N(-t+T)``, and ``almost_alternating_link``.

    ``expr`` is a link expression drawing ``D`` (with the same crossing
    ids, as from :func:`diagram.compile_link`).  When it is a closure of
    rational tangles the search may replace a subdiagram's link by an
    alternating diagram with the same isotopy key.  With
    ``classify_montesinos`` a Montesinos key outside the quasi-alternating
    classes refutes.
    """
    if D.is_tangle:
        raise QAError("certify needs a link diagram")
    if not dg.is_connected(D):
        raise QAError("certify needs a connected diagram")
    det = determinant(D)
    if det == 0:
        return RefutedZeroDet()
    why = _link_obstruction(D, hints)
    if why is not None:
        return RefutedObstruction(why)
    tree = None if expr is None else _crossing_tree(D, expr)
    if tree is not None and classify_montesinos:
        key = iso.link_key(tree)
        if key and key[0] == "M":
            from qalink import montesinos

            verdict = montesinos.classify_qa(montesinos.ReducedForm(key[1], key[2]))
            if not verdict.qa:
                return RefutedObstruction(f"montesinos classification: {verdict.clause}")
    depth = D.crossing_number if depth_budget is None else depth_budget
    if use_memo and memo is None:
        memo = {}
    search = _Search(memo if use_memo else None, max_nodes)
    roots = None if crossings is None else set(crossings)
    try:
        cert = search.run(D, det, depth, roots, tree)
    except _NodeBudget:
        return Unknown("node budget exhausted")
    if cert is None:
        return Unknown("depth_exhausted" if roots is None else "no certified crossing among those given")
    return Certified(cert)


# -- determinant formulas ---------------------------------------------------------------

def det_at_dealternator(det0: int, detinf: int) -> int:
    """Determinant of an almost alternating diagram from its dealternator smoothings."""
    return abs(det0 - detinf)


def det_rational_sum(alpha: int, beta: int, det_n: int, det_d: int, sign: int = 1) -> int:
    """``det n(+-alpha/beta + T)`` for an alternating type 1 tangle ``T``."""
    if alpha <= 0 or beta <= 0:
        raise ValueError("alpha/beta must be positive")
    if sign > 0:
        return beta * det_n + alpha * det_d
    return abs(beta * det_n - alpha * det_d)


def det_dealternator_replacement(n: int, det0: int, detinf: int, kind: str = "vertical") -> int:
    """Determinant after replacing a negative dealternator by ``-1/n`` (vertical) or ``-n`` (integer)."""
    if kind == "vertical":
        return abs(n * det0 - detinf)
    if kind == "integer":
        return abs(n * detinf - det0)
    raise ValueError(f"unknown replacement kind {kind!r}")


def det_formulas(name: str, **kw) -> int:
    """Dispatch by name: ``dealternator``, ``rational_sum``, ``replacement``."""
    table = {"dealternator": det_at_dealternator, "rational_sum": det_rational_sum,
             "replacement": det_dealternator_replacement}
    if name not in table:
        raise ValueError(f"unknown formula {name!r}")
    return table[name](**kw)


def _negative_frame(D: dg.Diagram, cid: int) -> dg.Diagram:
    return dg.reframe(D, cid, 1) if D.crossing(cid).sign > 0 else D


def dealternator_extension(D: dg.Diagram) -> tuple:
    """Replace the dealternator by ``-1/2`` or ``-2``, whichever keeps additivity.

    The dealternator is first framed as a negative crossing.  Returns
    ``(diagram, fraction, crossing id)``; the crossing keeps its id and
    the output is asserted additive there.
    """
    deal = dg.dealternators(D)
    if len(deal) != 1:
        raise QAError(f"expected a unique dealternator, found {len(deal)}")
    c = deal[0]
    D = _negative_frame(D, c)
    _, d0, di = smoothing_dets(D, c)
    if d0 == di:
        raise QAError(f"equal smoothing determinants ({d0}) at the dealternator: the link is not quasi-alternating")
    t = Fraction(-1, 2) if d0 > di else Fraction(-2)
    out = dg.rational_extension(D, c, t, mark="dealternator_extension")
    if not additive_at(out, c):
        raise AssertionError("dealternator extension is not additive at the dealternator")
    return out, t, c


# -- obstructions --------------------------------------------------------------------------

@dataclass(frozen=True)
class Obstruction:
    name: str
    fired: bool
    level: str
    detail: str = ""

    def as_dict(self) -> dict:
        return {"name": self.name, "fired": self.fired, "level": self.level, "detail": self.detail}


def ratio_obstruction(t, det_n: int, det_d: int) -> bool:
    """True when ``N(-t+T)`` cannot be quasi-alternating: ``det n(T)/det d(T) <= t``.

    ``T`` strongly alternating and ``0 < t < 1``.
    """
    t = Fraction(t)
    if not 0 < t < 1:
        raise ValueError("t must lie strictly between 0 and 1")
    return Fraction(det_n) <= t * det_d


def obstructions(D: Optional[dg.Diagram] = None, *, t=None, T: Optional[dg.Diagram] = None,
                 det_n: Optional[int] = None, det_d: Optional[int] = None,
                 almost_alternating_link: bool = False) -> list:
    """Evaluate each applicable obstruction independently.

    Link-level obstructions refute the link; crossing-level ones only rule
    out a crossing.
    """
    out = []
    if D is not None:
        det = determinant(D)
        out.append(Obstruction("zero-determinant", det == 0, "link", f"det = {det}"))
        w = dg.semi_alternating_witness(D)
        out.append(Obstruction("semi-alternating", w is not None, "link",
                               "witness found" if w else "no witness"))
        deal = dg.dealternators(D)
        if len(deal) == 1:
            _, d0, di = smoothing_dets(D, deal[0])
            out.append(Obstruction("dealternator-not-additive", not (d0 and di and det == d0 + di),
                                   "crossing", f"crossing {deal[0]}: det {det}, smoothings {d0}, {di}"))
            out.append(Obstruction("equal-smoothing-determinants", d0 == di, "link",
                                   f"smoothings {d0}, {di}"))
            if almost_alternating_link:
                out.append(Obstruction("almost-alternating-gap", abs(d0 - di) < 8, "link",
                                       f"|{d0} - {di}| = {abs(d0 - di)}"))
    if t is not None:
        if T is not None:
            det_n = determinant(dg.closure(T, "numerator"))
            det_d = determinant(dg.closure(T, "denominator"))
        if det_n is None or det_d is None:
            raise ValueError("ratio test needs T or both closure determinants")
        fired = ratio_obstruction(t, det_n, det_d)
        out.append(Obstruction("determinant-ratio", fired, "link",
                               f"{det_n}/{det_d} vs {nt.format_fraction(Fraction(t))}"))
    return out


# -- conjecture checks ------------------------------------------------------------------------

def crossing_bounds(D: dg.Diagram, expr=None, V=None) -> tuple:
    """``(lower, upper)`` bounds on the crossing number of the link of ``D``.

    The upper bound is the smaller of the simplified diagram's crossings and
    those of an alternating diagram with the same isotopy key (when ``expr``
    has one).  The lower bound is the span of the Jones polynomial in ``t``,
    or None when ``V`` is not given.
    """
    U, _ = dg.simplify(D)
    upper = U.crossing_number
    if expr is not None:
        rep = iso.representative(iso.link_key(expr))
        if rep is not None:
            upper = min(upper, dg.simplify(dg.compile_link(rep))[0].crossing_number)
    lower = None if V is None else V.breadth() // 2
    return lower, upper


def conjecture_check(D: dg.Diagram, certificate=None, budget: Optional[int] = None, expr=None) -> dict:
    """Crossing number against determinant, plus the Jones sign-alternation flag.

    ``crossings`` is an upper bound for the crossing number (see
    :func:`crossing_bounds`), so ``c_le_det`` can only err towards failing.
    """
    from qalink.polynomials import DEFAULT_SKEIN_BUDGET, jones_alternation_report
    from qalink.taitgraph import BudgetExceeded

    U, _ = dg.simplify(D)
    det = determinant(D)
    _, upper = crossing_bounds(D, expr)
    row = {"crossings": upper, "det": det, "c_le_det": upper <= det,
           "vacuous": certificate is None}
    try:
        rep = jones_alternation_report(U, DEFAULT_SKEIN_BUDGET if budget is None else budget)
        lower = rep["breadth"] // 2
        row.update(jones_alternating=rep["sign_alternating"], torus_exempt=rep["exempt_torus_2n"],
                   jones_holds=rep["holds"], crossings_lower=lower, crossings_exact=lower == upper)
    except (BudgetExceeded, ValueError) as exc:
        row.update(jones_alternating=None, torus_exempt=None, jones_holds=None, skipped=str(exc))
    return row
