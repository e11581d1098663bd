"""Planar diagrams of links and four-ended tangles.

A crossing lists the edges at its four arms counterclockwise starting from
the NW arm of its own frame: ``slots = (NW, SW, SE, NE)``.  ``over`` names
the antipodal slot pair carried by the overstrand.  In its frame a crossing
is the rational tangle ``[+1]`` when the overstrand runs SW to NE and
``[-1]`` otherwise; that is its Conway sign.

A tangle diagram has ``boundary = (NW, NE, SE, SW)`` edge ids.  Edges are
integers; every edge id occurs exactly twice among all slots and boundary
points.  Closed components without crossings are counted in ``loops``.

Every diagram is renumbered canonically after each operation, so two
diagrams with the same crossings and connections compare equal.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Optional

from qalink import notation as nt

__all__ = [
    "Crossing", "Diagram", "DiagramError", "DiagramProperties",
    "NW", "NE", "SE", "SW", "BOUNDARY_LABELS",
    "compile_tangle", "compile_link", "closure", "smooth", "crossing_change",
    "rational_extension", "extends", "reframe", "transform", "classify",
    "faces", "planarity_ok", "components", "unknot", "crossing_tangle",
    "tangle_sum", "tangle_star", "to_json", "from_json",
    "untwist", "nugatory_crossings", "connected_sum_split", "canonical_code",
    "is_alternating", "non_alternating_edges", "dealternators", "tangle_type",
    "split_pieces", "semi_alternating_witness", "collapse",
]

NW, NE, SE, SW = 0, 1, 2, 3
BOUNDARY_LABELS = ("NW", "NE", "SE", "SW")

# boundary position (index into ``boundary``) -> crossing frame slot
_FRAME_SLOT = {NW: 0, SW: 1, SE: 2, NE: 3}


class DiagramError(ValueError):
    """Invalid diagram operation (unknown crossing, link passed as tangle...)."""


@dataclass(frozen=True)
class Crossing:
    id: int
    slots: tuple
    over: tuple

    @property
    def sign(self) -> int:
        """Conway sign: +1 when the overstrand runs SW to NE in the frame."""
        return 1 if self.over == (1, 3) else -1

    def is_over(self, s: int) -> bool:
        return s % 2 == self.over[0] % 2


def _toggle(over: tuple) -> tuple:
    return (1, 3) if over == (0, 2) else (0, 2)


@dataclass(frozen=True)
class Diagram:
    crossings: tuple
    boundary: Optional[tuple] = None
    loops: int = 0
    marks: tuple = ()

    # -- basic accessors ----------------------------------------------------
    @property
    def is_tangle(self) -> bool:
        return self.boundary is not None

    @property
    def crossing_number(self) -> int:
        return len(self.crossings)

    @property
    def ids(self) -> list:
        return [c.id for c in self.crossings]

    @cached_property
    def _by_id(self) -> dict:
        return {c.id: c for c in self.crossings}

    def crossing(self, cid: int) -> Crossing:
        try:
            return self._by_id[cid]
        except KeyError:
            raise DiagramError(f"unknown crossing id {cid}") from None

    def mark(self, name: str) -> tuple:
        for k, v in self.marks:
            if k == name:
                return v
        raise KeyError(name)

    @cached_property
    def endpoints(self) -> dict:
        """edge id -> list of two endpoints ``(crossing id, slot)`` or ``("B", pos)``."""
        ends: dict = {}
        for c in self.crossings:
            for s, e in enumerate(c.slots):
                ends.setdefault(e, []).append((c.id, s))
        if self.boundary is not None:
            for p, e in enumerate(self.boundary):
                ends.setdefault(e, []).append(("B", p))
        return ends

    def other_end(self, end: tuple) -> tuple:
        v, s = end
        e = self.boundary[s] if v == "B" else self._by_id[v].slots[s]
        a, b = self.endpoints[e]
        if a == end:
            return b
        return a

    def edge_at(self, end: tuple) -> int:
        v, s = end
        return self.boundary[s] if v == "B" else self._by_id[v].slots[s]

    def validate(self) -> None:
        for e, ends in self.endpoints.items():
            if len(ends) != 2:
                raise DiagramError(f"edge {e} has {len(ends)} endpoints")
        for c in self.crossings:
            if c.over not in ((0, 2), (1, 3)):
                raise DiagramError(f"crossing {c.id} has bad over pair {c.over}")
        if not planarity_ok(self):
            raise DiagramError("rotation system is not planar")

    def __str__(self) -> str:
        kind = "tangle" if self.is_tangle else "link"
        return f"<{kind} diagram: {self.crossing_number} crossings>"


# -- construction -------------------------------------------------------------

class _UF:
    def __init__(self):
        self.parent: dict = {}

    def find(self, x):
        p = self.parent.setdefault(x, x)
        if p != x:
            p = self.parent[x] = self.find(p)
        return p

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb


def _build(crossings: Iterable, boundary, joins=(), loops: int = 0, marks=()) -> Diagram:
    """Assemble a diagram from raw parts.

    ``crossings`` is an iterable of ``(id, slots, over)`` with arbitrary
    hashable edge labels; ``joins`` lists label pairs to identify.  A joined
    class with no remaining occurrence became a closed loop.
    """
    crossings = sorted(((cid, tuple(sl), tuple(ov)) for cid, sl, ov in crossings), key=lambda x: x[0])
    uf = _UF()
    for a, b in joins:
        uf.union(a, b)
    used = set()
    for _, sl, _ in crossings:
        used.update(uf.find(e) for e in sl)
    if boundary is not None:
        used.update(uf.find(e) for e in boundary)
    loops += len({uf.find(e) for pair in joins for e in pair} - used)

    relabel: dict = {}

    def lab(e):
        r = uf.find(e)
        if r not in relabel:
            relabel[r] = len(relabel)
        return relabel[r]

    out = tuple(Crossing(cid, tuple(lab(e) for e in sl), ov) for cid, sl, ov in crossings)
    bnd = None if boundary is None else tuple(lab(e) for e in boundary)
    ids = {c.id for c in out}
    kept = tuple(sorted((k, tuple(i for i in v if i in ids)) for k, v in dict(marks).items()))
    return Diagram(out, bnd, loops, kept)


def _raw(D: Diagram, ctag=None, etag=None):
    """Crossings of D as raw tuples with (optionally) retagged ids and edges."""
    cf = (lambda i: i) if ctag is None else ctag
    ef = (lambda e: e) if etag is None else etag
    return [(cf(c.id), tuple(ef(e) for e in c.slots), c.over) for c in D.crossings]


def unknot() -> Diagram:
    """The crossingless unknot."""
    return Diagram((), None, 1, ())


def crossing_tangle(sign: int = 1, cid: int = 0) -> Diagram:
    """The one-crossing tangle ``[+1]`` or ``[-1]``."""
    over = (1, 3) if sign > 0 else (0, 2)
    # slots NW, SW, SE, NE carry edges 0, 3, 2, 1 (boundary NW, NE, SE, SW = 0, 1, 2, 3)
    return _build([(cid, (0, 3, 2, 1), over)], (0, 1, 2, 3))


def _zero_tangle() -> Diagram:
    return Diagram((), (0, 0, 1, 1), 0, ())


def _infinity_tangle() -> Diagram:
    return Diagram((), (0, 1, 1, 0), 0, ())


def _shifted(D: Diagram, coff: int):
    cmap = lambda i: i + coff  # noqa: E731
    return _raw(D, cmap, lambda e: ("r", e)), [("r", e) for e in D.boundary], \
        {k: tuple(i + coff for i in v) for k, v in D.marks}


def _next_id(D: Diagram) -> int:
    return max(D.ids, default=-1) + 1


def _require_tangle(D: Diagram) -> None:
    if not D.is_tangle:
        raise DiagramError("operation needs a tangle diagram")


def tangle_sum(T: Diagram, S: Diagram) -> Diagram:
    """``T + S``: T's NE and SE arms join S's NW and SW arms."""
    _require_tangle(T)
    _require_tangle(S)
    rc, rb, rm = _shifted(S, _next_id(T))
    left = _raw(T, None, lambda e: ("l", e))
    lb = [("l", e) for e in T.boundary]
    joins = [(lb[NE], rb[NW]), (lb[SE], rb[SW])]
    marks = dict(T.marks)
    marks.update(rm)
    return _build(left + rc, (lb[NW], rb[NE], rb[SE], lb[SW]), joins, T.loops + S.loops, marks)


def tangle_star(T: Diagram, S: Diagram) -> Diagram:
    """``T * S``: T sits above S; T's SW and SE arms join S's NW and NE arms."""
    _require_tangle(T)
    _require_tangle(S)
    rc, rb, rm = _shifted(S, _next_id(T))
    top = _raw(T, None, lambda e: ("l", e))
    tb = [("l", e) for e in T.boundary]
    joins = [(tb[SW], rb[NW]), (tb[SE], rb[NE])]
    marks = dict(T.marks)
    marks.update(rm)
    return _build(top + rc, (tb[NW], tb[NE], rb[SE], rb[SW]), joins, T.loops + S.loops, marks)


def _twist(n: int, op) -> Diagram:
    if n == 0:
        return _zero_tangle() if op is tangle_sum else _infinity_tangle()
    s = 1 if n > 0 else -1
    D = crossing_tangle(s)
    for _ in range(abs(n) - 1):
        D = op(D, crossing_tangle(s))
    return D


def _integer(n: int) -> Diagram:
    return _twist(n, tangle_sum)


def _vertical(n: int) -> Diagram:
    return _twist(n, tangle_star)


def _standard_rational(terms) -> Diagram:
    """Standard alternating diagram of ``[a1, ..., an]`` (canonical terms)."""
    terms = list(terms)
    if len(terms) == 1:
        return _integer(terms[0])
    u = _integer(terms[-1])
    w = _vertical(terms[-1])
    for a in reversed(terms[:-1]):
        # u has fraction [a_k..], w has fraction 1/[a_k..]
        nu = w if a == 0 else tangle_sum(_integer(a), w)
        nw = tangle_star(u, _vertical(a)) if a != 0 else None
        u, w = nu, nw
    return u


def _rational_diagram(value) -> Diagram:
    if value is nt.INF:
        return _infinity_tangle()
    return _standard_rational(nt.fraction_to_cf(value))


def _with_tag(D: Diagram, tag: Optional[str]) -> Diagram:
    if tag is None:
        return D
    marks = dict(D.marks)
    marks[tag] = tuple(D.ids)
    return Diagram(D.crossings, D.boundary, D.loops, tuple(sorted(marks.items())))


def compile_tangle(t, env=None) -> Diagram:
    """Compile a tangle expression (or notation string) to a tangle diagram.

    Rational leaves become standard diagrams of their canonical continued
    fraction.  ``rot``/``rotcc`` build the inverse tangle ``1/T`` (rotation
    followed by mirror); ``hflip`` is the flip about the horizontal axis.
    """
    if isinstance(t, str):
        t = nt.parse_tangle(t)
    t = nt.resolve(t, env)
    if isinstance(t, nt.Zero):
        return _with_tag(_zero_tangle(), t.tag)
    if isinstance(t, nt.Infinity):
        return _with_tag(_infinity_tangle(), t.tag)
    if isinstance(t, nt.Integer):
        return _with_tag(_integer(t.n), t.tag)
    if isinstance(t, nt.Vertical):
        return _with_tag(_vertical(t.n), t.tag)
    if isinstance(t, nt.Rational):
        return _with_tag(_rational_diagram(nt.cf_to_fraction(t.terms)), t.tag)
    if isinstance(t, nt.Sum):
        return tangle_sum(compile_tangle(t.left), compile_tangle(t.right))
    if isinstance(t, nt.Star):
        return tangle_star(compile_tangle(t.left), compile_tangle(t.right))
    if isinstance(t, nt.RotateCW):
        return transform(transform(compile_tangle(t.inner), "rotate_cw"), "mirror")
    if isinstance(t, nt.RotateCCW):
        return transform(transform(compile_tangle(t.inner), "rotate_ccw"), "mirror")
    if isinstance(t, nt.HFlip):
        return transform(compile_tangle(t.inner), "hflip")
    if isinstance(t, nt.Mirror):
        return transform(compile_tangle(t.inner), "mirror")
    raise DiagramError(f"cannot compile {t!r}")


def compile_link(text, env=None) -> Diagram:
    """Compile ``n(expr)`` / ``d(expr)`` (string or :class:`LinkExpr`)."""
    link = nt.parse_link(text) if isinstance(text, str) else text
    mode = "numerator" if link.mode == "n" else "denominator"
    return closure(compile_tangle(link.tangle, env), mode)


def closure(T: Diagram, mode: str = "numerator") -> Diagram:
    """Numerator joins NW-NE and SW-SE; denominator joins NW-SW and NE-SE."""
    _require_tangle(T)
    b = T.boundary
    if mode in ("numerator", "n"):
        joins = [(b[NW], b[NE]), (b[SW], b[SE])]
    elif mode in ("denominator", "d"):
        joins = [(b[NW], b[SW]), (b[NE], b[SE])]
    else:
        raise DiagramError(f"unknown closure mode {mode!r}")
    return _build(_raw(T), None, joins, T.loops, T.marks)


# -- local edits ----------------------------------------------------------------

def _remove(D: Diagram, cid: int):
    c = D.crossing(cid)
    return c, [x for x in _raw(D) if x[0] != cid]


def smooth(D: Diagram, cid: int, mode) -> Diagram:
    """Smoothing at a crossing in its frame: ``0`` joins NW-NE and SW-SE,
    ``"inf"`` joins NW-SW and NE-SE."""
    c, rest = _remove(D, cid)
    e = c.slots
    if mode in (0, "0"):
        joins = [(e[0], e[3]), (e[1], e[2])]
    elif mode in ("inf", "oo", "infinity", nt.INF):
        joins = [(e[0], e[1]), (e[2], e[3])]
    else:
        raise DiagramError(f"unknown smoothing mode {mode!r}")
    return _build(rest, D.boundary, joins, D.loops, D.marks)


def crossing_change(D: Diagram, cid: int) -> Diagram:
    c = D.crossing(cid)
    new = [(x.id, x.slots, _toggle(x.over) if x.id == c.id else x.over) for x in D.crossings]
    return _build(new, D.boundary, (), D.loops, D.marks)


def reframe(D: Diagram, cid: int, quarter_turns: int = 1) -> Diagram:
    """Rotate the frame of one crossing counterclockwise by quarter turns.

    An odd number of turns flips its Conway sign and swaps its 0 and
    infinity smoothings; the diagram itself is unchanged.
    """
    c = D.crossing(cid)
    sl, ov = c.slots, c.over
    for _ in range(quarter_turns % 4):
        sl = (sl[3], sl[0], sl[1], sl[2])
        ov = _toggle(ov)
    new = [(x.id, sl if x.id == c.id else x.slots, ov if x.id == c.id else x.over) for x in D.crossings]
    return _build(new, D.boundary, (), D.loops, D.marks)


def extends(sign: int, t) -> bool:
    """Whether the rational tangle ``t`` extends a crossing of Conway sign ``sign``.

    True when every term of the canonical continued fraction of ``t`` has
    the sign of the crossing, a leading zero term being allowed.
    """
    t = Fraction(t)
    return t * sign > 0


def rational_extension(D: Diagram, cid: int, t, check: bool = True, mark: Optional[str] = None) -> Diagram:
    """Replace crossing ``cid`` by the standard diagram of the rational tangle ``t``.

    The tangle is inserted in the crossing's frame.  Its first crossing
    keeps the id ``cid``; the others get fresh ids.  With ``check`` the
    tangle must extend the crossing (see :func:`extends`).
    """
    c, rest = _remove(D, cid)
    t = nt.parse_fraction(t) if isinstance(t, str) else t
    if t is not nt.INF:
        t = Fraction(t)
    if check and (t is nt.INF or not extends(c.sign, t)):
        raise DiagramError(f"tangle {nt.format_fraction(t)} does not extend crossing {cid} (sign {c.sign})")
    T = _rational_diagram(t)
    fresh = _next_id(D)
    cmap = {x.id: (cid if k == 0 else fresh + k - 1) for k, x in enumerate(T.crossings)}
    ins = _raw(T, cmap.__getitem__, lambda e: ("t", e))
    tb = [("t", e) for e in T.boundary]
    joins = [(c.slots[_FRAME_SLOT[p]], tb[p]) for p in range(4)]
    marks = dict(D.marks)
    marks[mark or f"ext{cid}"] = tuple(cmap[x.id] for x in T.crossings)
    return _build(rest + ins, D.boundary, joins, D.loops + T.loops, marks)


def _arm_cycle(D: Diagram, inside: set) -> list:
    """Arms (edges with one end in ``inside``) in counterclockwise order.

    Traces the face of the sub-diagram that contains the arms, treating each
    arm as a dead end.  Returns ``[(endpoint, edge), ...]``.
    """
    arms = {}
    for c in D.crossings:
        if c.id in inside:
            for s, e in enumerate(c.slots):
                if D.other_end((c.id, s))[0] not in inside:
                    arms[(c.id, s)] = e
    if not arms:
        return []
    start = next(iter(arms))
    order, dart = [], start
    for _ in range(8 * len(D.crossings) + 8):
        if dart in arms:
            order.append((dart, arms[dart]))
            v, s = dart
        else:
            v, s = D.other_end(dart)
        dart = (v, (s + 1) % 4)
        if dart == start:
            break
    if len(order) != len(arms):
        raise DiagramError("arms do not lie on one face of the sub-diagram")
    return order


def collapse(D: Diagram, ids: Iterable[int], t) -> Diagram:
    """Inverse of :func:`rational_extension`.

    ``ids`` are the crossings inserted by ``rational_extension(., c, t)``
    (its mark); they are replaced by one crossing with the first id.  The
    result satisfies ``rational_extension(result, ids[0], t) == D``.
    """
    ids = list(ids)
    inside = set(ids)
    arms = _arm_cycle(D, inside)
    if len(arms) != 4:
        raise DiagramError("crossing set is not a four-ended tangle")
    rest = [x for x in _raw(D) if x[0] not in inside]
    marks = tuple(m for m in D.marks if m[1] != tuple(ids))
    sign = 1 if Fraction(t) > 0 else -1
    over = (1, 3) if sign > 0 else (0, 2)
    for r in range(4):
        slots = tuple(("x", arms[(k + r) % 4][1]) for k in range(4))
        joins = [(("x", e), e) for _, e in arms]
        cand = _build(rest + [(ids[0], slots, over)], D.boundary, joins, D.loops, marks)
        back = rational_extension(cand, ids[0], t, check=False)
        if back.crossings == D.crossings and back.boundary == D.boundary and back.loops == D.loops:
            return cand
    raise DiagramError("crossing set is not the extension tangle")


# -- whole-diagram transforms ---------------------------------------------------

def transform(D: Diagram, mode: str) -> Diagram:
    """Pure plane transforms: ``hflip``, ``rotate_cw``, ``rotate_ccw``, ``mirror``.

    ``hflip`` turns the tangle over about the horizontal axis (fraction
    preserved).  The rotations turn the picture a quarter turn without
    mirroring, so they negate and invert the fraction.  ``mirror`` toggles
    every crossing.
    """
    if mode == "mirror":
        new = [(c.id, c.slots, _toggle(c.over)) for c in D.crossings]
        return _build(new, D.boundary, (), D.loops, D.marks)
    _require_tangle(D)
    b = D.boundary
    if mode == "hflip":
        new = [(c.id, (c.slots[1], c.slots[0], c.slots[3], c.slots[2]), c.over) for c in D.crossings]
        bnd = (b[SW], b[SE], b[NE], b[NW])
    elif mode == "rotate_ccw":
        new = [(c.id, (c.slots[3], c.slots[0], c.slots[1], c.slots[2]), _toggle(c.over)) for c in D.crossings]
        bnd = (b[NE], b[SE], b[SW], b[NW])
    elif mode == "rotate_cw":
        new = [(c.id, (c.slots[1], c.slots[2], c.slots[3], c.slots[0]), _toggle(c.over)) for c in D.crossings]
        bnd = (b[SW], b[NW], b[NE], b[SE])
    else:
        raise DiagramError(f"unknown transform {mode!r}")
    return _build(new, bnd, (), D.loops, D.marks)


# -- faces and structure ----------------------------------------------------------

def faces(D: Diagram) -> list:
    """Faces as lists of corners ``(vertex, slot)``.

    Corner ``(v, s)`` is the angle between slots ``s`` and ``s + 1`` of
    vertex ``v``.  Tangles get an extra vertex ``"B"`` standing for the
    outside of the disk, with slots NW, NE, SE, SW in its rotation.
    Crossingless loops contribute no faces.
    """
    darts = [(c.id, s) for c in D.crossings for s in range(4)]
    if D.is_tangle:
        darts += [("B", p) for p in range(4)]
    seen = set()
    out = []
    for d in darts:
        if d in seen:
            continue
        face = []
        cur = d
        while cur not in seen:
            seen.add(cur)
            v, s = D.other_end(cur)
            face.append((v, s))
            cur = (v, (s + 1) % 4)
        out.append(face)
    return out


def _face_index(D: Diagram) -> dict:
    return {corner: i for i, f in enumerate(faces(D)) for corner in f}


def _vertex_components(D: Diagram, skip_edges=()) -> list:
    """Connected pieces of the graph on crossings (and ``"B"``)."""
    uf = _UF()
    verts = list(D.ids) + (["B"] if D.is_tangle else [])
    for v in verts:
        uf.find(v)
    skip = set(skip_edges)
    for e, ends in D.endpoints.items():
        if e not in skip and len(ends) == 2:
            uf.union(ends[0][0], ends[1][0])
    groups: dict = {}
    for v in verts:
        groups.setdefault(uf.find(v), []).append(v)
    return list(groups.values())


def planarity_ok(D: Diagram) -> bool:
    """Euler's formula ``V - E + F = 2`` on every connected piece."""
    fidx = faces(D)
    comp_of = {}
    pieces = _vertex_components(D)
    for k, vs in enumerate(pieces):
        for v in vs:
            comp_of[v] = k
    for k, vs in enumerate(pieces):
        vset = set(vs)
        edges = {e for e, ends in D.endpoints.items() if ends[0][0] in vset}
        nf = sum(1 for f in fidx if f[0][0] in vset)
        if len(vs) - len(edges) + nf != 2:
            return False
    return True


def strands(D: Diagram) -> list:
    """Trace the strands of D.

    Returns ``[(closed, visits)]`` where ``visits`` lists
    ``(crossing id, in slot)`` in travel order.  Open arcs of a tangle start
    at the boundary points in order NW, NE, SE, SW; closed strands start at
    the lowest unvisited slot.  Crossingless loops are not listed.
    """
    used = set()
    out = []

    def walk(cur):
        visits = []
        while cur[0] != "B" and cur not in used:
            c, s = cur
            used.add((c, s))
            used.add((c, (s + 2) % 4))
            visits.append((c, s))
            cur = D.other_end((c, (s + 2) % 4))
        return visits, cur

    if D.is_tangle:
        done_b = set()
        for p in range(4):
            if p in done_b:
                continue
            visits, end = walk(D.other_end(("B", p)))
            done_b.add(p)
            if end[0] == "B":
                done_b.add(end[1])
            out.append((False, visits))
    for c in D.crossings:
        for s in range(4):
            if (c.id, s) not in used:
                visits, _ = walk((c.id, s))
                out.append((True, visits))
    return out


def components(D: Diagram) -> int:
    """Number of closed components (crossingless loops included)."""
    return D.loops + sum(1 for closed, _ in strands(D) if closed)


def non_alternating_edges(D: Diagram) -> list:
    """Edges joining two crossing slots that are both over or both under."""
    bad = []
    for e, (a, b) in sorted(D.endpoints.items()):
        if a[0] == "B" or b[0] == "B":
            continue
        if D.crossing(a[0]).is_over(a[1]) == D.crossing(b[0]).is_over(b[1]):
            bad.append(e)
    return bad


def is_alternating(D: Diagram) -> bool:
    return not non_alternating_edges(D)


def dealternators(D: Diagram) -> list:
    """Crossings whose change makes a non-alternating diagram alternating."""
    bad = set(non_alternating_edges(D))
    if not bad:
        return []
    out = []
    for c in D.crossings:
        touching = set()
        for s, e in enumerate(c.slots):
            o = D.other_end((c.id, s))
            if o[0] != "B" and o[0] != c.id:
                touching.add(e)
        if touching == bad:
            out.append(c.id)
    return out


def nugatory_crossings(D: Diagram) -> list:
    """Crossings with two opposite corners in the same face."""
    fi = _face_index(D)
    return [c.id for c in D.crossings
            if fi[(c.id, 0)] == fi[(c.id, 2)] or fi[(c.id, 1)] == fi[(c.id, 3)]]


def is_connected(D: Diagram) -> bool:
    if not D.crossings:
        return (not D.is_tangle) and D.loops == 1
    if D.loops:
        return False
    if D.is_tangle:
        if any(ends[0][0] == "B" and ends[1][0] == "B" for ends in D.endpoints.values()):
            return False
        uf = _UF()
        for c in D.ids:
            uf.find(c)
        for ends in D.endpoints.values():
            if ends[0][0] != "B" and ends[1][0] != "B":
                uf.union(ends[0][0], ends[1][0])
        return len({uf.find(c) for c in D.ids}) == 1
    return len(_vertex_components(D)) == 1


def tangle_type(D: Diagram) -> Optional[int]:
    """Type 1 if the arc from NW passes under at its first crossing, 2 if over."""
    _require_tangle(D)
    v, s = D.other_end(("B", NW))
    if v == "B":
        return None
    return 2 if D.crossing(v).is_over(s) else 1


def untwist(D: Diagram, cid: int) -> Diagram:
    """Remove a nugatory crossing without changing the link type."""
    fi = _face_index(D)
    c = D.crossing(cid)
    for i in (0, 1):
        if fi[(cid, i)] == fi[(cid, i + 2)]:
            e = c.slots
            rest = [x for x in _raw(D) if x[0] != cid]
            joins = [(e[i], e[i + 1]), (e[i + 2], e[(i + 3) % 4])]
            return _build(rest, D.boundary, joins, D.loops, D.marks)
    raise DiagramError(f"crossing {cid} is not nugatory")


def removable_bigon(D: Diagram):
    """Two crossings joined along a bigon face by two non-alternating edges.

    Returns ``(x1, s1, t1, x2, s2, t2)``: the crossings and the slots of the
    two bigon edges at each, or None.
    """
    fi = None
    for e, (p, q) in sorted(D.endpoints.items()):
        c1, s1 = p
        c2, s2 = q
        if c1 == c2:
            continue
        x1, x2 = D.crossing(c1), D.crossing(c2)
        if x1.is_over(s1) != x2.is_over(s2):
            continue
        for d1 in (1, -1):
            t1 = (s1 + d1) % 4
            f = x1.slots[t1]
            ends = D.endpoints[f]
            other = [pt for pt in ends if pt != (c1, t1)]
            if not other or other[0][0] != c2:
                continue
            t2 = other[0][1]
            if (t2 - s2) % 4 not in (1, 3):
                continue
            if fi is None:
                fi = {corner: i for i, fc in enumerate(faces(D)) for corner in fc}
            k1 = s1 if d1 == 1 else t1
            k2 = s2 if (t2 - s2) % 4 == 1 else t2
            if fi[(c1, k1)] == fi[(c2, k2)]:
                return x1, s1, t1, x2, s2, t2
    return None


def remove_bigon(D: Diagram, bigon: tuple) -> Diagram:
    """Second Reidemeister move on a bigon found by :func:`removable_bigon`."""
    x1, s1, t1, x2, s2, t2 = bigon
    rest = [(x.id, x.slots, x.over) for x in D.crossings if x.id not in (x1.id, x2.id)]
    joins = [(x1.slots[(s1 + 2) % 4], x2.slots[(s2 + 2) % 4]),
             (x1.slots[(t1 + 2) % 4], x2.slots[(t2 + 2) % 4])]
    return _build(rest, D.boundary, joins, D.loops, D.marks)


def simplify(D: Diagram) -> tuple:
    """Untwist nugatory crossings and undo removable bigons until none remain.

    Returns ``(diagram, moves)``.  Every move preserves the link type.
    """
    moves = 0
    while True:
        nug = nugatory_crossings(D)
        if nug:
            D = untwist(D, nug[0])
            moves += 1
            continue
        b = removable_bigon(D)
        if b is None:
            return D, moves
        D = remove_bigon(D, b)
        moves += 1


def _subdiagram(D: Diagram, inside: set, boundary=None, joins=()) -> Diagram:
    raw = [x for x in _raw(D) if x[0] in inside]
    return _build(raw, boundary, joins, 0, D.marks)


def split_pieces(D: Diagram) -> list:
    """Connected pieces of a link diagram, crossingless loops included."""
    if D.is_tangle:
        raise DiagramError("split_pieces needs a link diagram")
    pieces = [_subdiagram(D, set(vs)) for vs in _vertex_components(D)] if D.crossings else []
    pieces += [unknot() for _ in range(D.loops)]
    return pieces


def connected_sum_split(D: Diagram) -> Optional[tuple]:
    """Find a circle meeting D in two points with crossings on both sides.

    Returns ``(D1, D2)`` (each the summand closed up by one arc) or None.
    """
    if D.is_tangle or D.loops or len(D.crossings) < 2:
        return None
    fi = _face_index(D)
    sides: dict = {}
    for e, (a, b) in sorted(D.endpoints.items()):
        f1, f2 = fi[a], fi[b]
        if f1 != f2:
            sides.setdefault(frozenset((f1, f2)), []).append(e)
    for group in sides.values():
        for i in range(len(group)):
            for j in range(i + 1, len(group)):
                e1, e2 = group[i], group[j]
                parts = _vertex_components(D, (e1, e2))
                if len(parts) != 2:
                    continue
                out = []
                for vs in parts:
                    out.append(_subdiagram(D, set(vs), None, [(e1, e2)]))
                return tuple(out)
    return None


def _rotations_equal(a: list, b: list) -> bool:
    return len(a) == len(b) and any(a[k:] + a[:k] == b for k in range(len(a)))


def semi_alternating_witness(D: Diagram) -> Optional[tuple]:
    """Tangles ``(T, S)`` of types 1 and 2, both strongly alternating, with D = n(T + S).

    The four non-alternating edges of such a diagram cut it into the two
    tangles; each rotation of the boundary labels is tried.
    """
    if D.is_tangle or D.loops:
        return None
    bad = non_alternating_edges(D)
    if len(bad) != 4:
        return None
    parts = _vertex_components(D, bad)
    if len(parts) != 2:
        return None
    A, B = set(parts[0]), set(parts[1])
    for e in bad:
        (a, _), (b, _) = D.endpoints[e]
        if (a in A) == (b in A):
            return None
    arms_a = [e for _, e in _arm_cycle(D, A)]
    arms_b = [e for _, e in _arm_cycle(D, B)]
    target = canonical_code(D)
    for r in range(4):
        # CCW order of a tangle's arms is NW, SW, SE, NE
        nw, sw, se, ne = (arms_a[(k + r) % 4] for k in range(4))
        T = _subdiagram(D, A, (nw, ne, se, sw))
        S = _subdiagram(D, B, (ne, nw, sw, se))
        if not _rotations_equal(arms_b, [ne, se, sw, nw]):
            continue
        if not (_strongly_alternating(T) and _strongly_alternating(S)):
            continue
        ta, tb = tangle_type(T), tangle_type(S)
        if {ta, tb} != {1, 2}:
            continue
        if canonical_code(closure(tangle_sum(T, S))) != target:
            continue
        return (T, S) if ta == 1 else (S, T)
    return None


def _strongly_alternating(T: Diagram) -> bool:
    if not (is_alternating(T) and is_connected(T)):
        return False
    for mode in ("numerator", "denominator"):
        L = closure(T, mode)
        if not (is_alternating(L) and is_connected(L) and not nugatory_crossings(L)):
            return False
    return True


@dataclass(frozen=True)
class DiagramProperties:
    connected: bool
    reduced: bool
    alternating: bool
    alternating_type: Optional[int]
    strongly_alternating: bool
    semi_alternating_witness: Optional[tuple]
    crossing_number: int
    components: int
    almost_alternating: bool = False
    dealternators: tuple = ()
    dealternator_reduced: bool = False
    dealternator_connected: bool = False

    def as_dict(self) -> dict:
        d = {k: getattr(self, k) for k in self.__dataclass_fields__}
        d["semi_alternating"] = d.pop("semi_alternating_witness") is not None
        d["dealternators"] = list(self.dealternators)
        return d


def classify(D: Diagram) -> DiagramProperties:
    """Structural flags of a link or tangle diagram."""
    alt = is_alternating(D)
    conn = is_connected(D)
    reduced = not nugatory_crossings(D)
    ttype = None
    strong = False
    witness = None
    if D.is_tangle:
        if alt and conn:
            ttype = tangle_type(D)
        strong = _strongly_alternating(D)
    else:
        witness = semi_alternating_witness(D)
    deal = tuple(dealternators(D)) if not alt else ()
    almost = bool(deal)
    d_red = d_conn = False
    if almost and len(deal) == 1:
        sm = [smooth(D, deal[0], m) for m in (0, "inf")]
        d_red = all(is_alternating(x) and not nugatory_crossings(x) for x in sm)
        d_conn = all(is_alternating(x) and is_connected(x) for x in sm)
    return DiagramProperties(
        connected=conn, reduced=reduced, alternating=alt, alternating_type=ttype,
        strongly_alternating=strong, semi_alternating_witness=witness,
        crossing_number=D.crossing_number, components=components(D),
        almost_alternating=almost, dealternators=deal,
        dealternator_reduced=d_red, dealternator_connected=d_conn,
    )


# -- canonical code -----------------------------------------------------------------

def _component_code(D: Diagram, verts: list) -> tuple:
    best = None
    for start in verts:
        for r in range(4):
            label = {start: 0}
            off = {start: r}
            order = [start]
            code = []
            k = 0
            while k < len(order):
                c = order[k]
                k += 1
                cr = D.crossing(c)
                o = off[c]
                row = [(cr.over[0] - o) % 2]
                for j in range(4):
                    v2, s2 = D.other_end((c, (o + j) % 4))
                    if v2 not in label:
                        label[v2] = len(order)
                        off[v2] = s2
                        order.append(v2)
                    row.append((label[v2], (s2 - off[v2]) % 4))
                code.append(tuple(row))
            code = tuple(code)
            if best is None or code < best:
                best = code
    return best


def canonical_code(D: Diagram) -> tuple:
    """Isomorphism-invariant code of a link diagram (as an oriented plane graph)."""
    if D.is_tangle:
        raise DiagramError("canonical_code needs a link diagram")
    parts = _vertex_components(D) if D.crossings else []
    codes = sorted(_component_code(D, vs) for vs in parts)
    return (D.loops, tuple(codes))


# -- serialization ------------------------------------------------------------------

def _end_json(end):
    v, s = end
    return BOUNDARY_LABELS[s] if v == "B" else [v, s]


def to_json(D: Diagram) -> str:
    obj = {
        "crossings": [{"id": c.id, "slots": list(c.slots), "over": list(c.over), "sign": c.sign}
                      for c in D.crossings],
        "edges": [[_end_json(a), _end_json(b)] for _, (a, b) in sorted(D.endpoints.items())],
    }
    if D.is_tangle:
        obj["boundary"] = dict(zip(BOUNDARY_LABELS, D.boundary))
    obj["loops"] = D.loops
    if D.marks:
        obj["marks"] = {k: list(v) for k, v in D.marks}
    return json.dumps(obj)


def from_json(text) -> Diagram:
    obj = json.loads(text) if isinstance(text, str) else text
    crossings = []
    for c in obj["crossings"]:
        cr = Crossing(int(c["id"]), tuple(c["slots"]), tuple(c["over"]))
        if "sign" in c and c["sign"] != cr.sign:
            raise DiagramError(f"crossing {cr.id}: sign does not match over pair")
        crossings.append(cr)
    crossings.sort(key=lambda c: c.id)
    bnd = None
    if obj.get("boundary") is not None:
        bnd = tuple(obj["boundary"][k] for k in BOUNDARY_LABELS)
    marks = tuple(sorted((k, tuple(v)) for k, v in obj.get("marks", {}).items()))
    D = Diagram(tuple(crossings), bnd, int(obj.get("loops", 0)), marks)
    D.validate()
    if "edges" in obj:
        want = sorted(sorted(json.dumps(x) for x in pair) for pair in obj["edges"])
        have = sorted(sorted(json.dumps(_end_json(x)) for x in ends) for ends in D.endpoints.values())
        if want != have:
            raise DiagramError("edge list disagrees with crossing slots")
    return D
