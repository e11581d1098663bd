"""Signed Tait graphs, spanning-tree statistics and link determinants.

Faces of a diagram are two-coloured so that the corners 0 and 2 of every
crossing share a colour.  The Tait graph of a colour class has a vertex per
face of that colour and an edge per crossing.  An edge is positive when the
shaded corners of its crossing are the A-corners, the corners swept when the
overstrand turns counterclockwise (the corners indexed by ``over``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from qalink import diagram as dg
from qalink.kernels import tree_census

__all__ = [
    "SignedPlanarGraph", "SpanningTreeCounts", "BudgetExceeded",
    "face_colours", "tait_graph", "dual", "tangle_graphs", "spanning_tree_counts",
    "determinant", "determinant_matrix_tree", "determinant_enumerated",
    "graph_properties", "dump_graph", "bareiss_determinant", "coalesce_boundary",
    "DEFAULT_TREE_BUDGET",
]

DEFAULT_TREE_BUDGET = 20


class BudgetExceeded(RuntimeError):
    """Exhaustive enumeration was asked for beyond its budget."""


@dataclass(frozen=True)
class SignedPlanarGraph:
    """Tait graph.  Edges are ``(u, v, sign, crossing id)``."""

    n_vertices: int
    edges: tuple
    boundary_vertices: Optional[tuple] = None
    source: Optional[dg.Diagram] = field(default=None, compare=False, repr=False)
    shading: Optional[int] = field(default=None, compare=False)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def signs(self) -> dict:
        return {cid: s for _, _, s, cid in self.edges}

    def positive(self) -> int:
        return sum(1 for e in self.edges if e[2] > 0)

    def negative(self) -> int:
        return sum(1 for e in self.edges if e[2] < 0)


@dataclass(frozen=True)
class SpanningTreeCounts:
    """``s[k]`` = number of spanning trees with ``k`` positive edges."""

    s: dict
    total: int

    def signed_sum(self) -> int:
        return sum((-1) ** k * v for k, v in self.s.items())


def face_colours(D: dg.Diagram) -> tuple:
    """Faces of D and a checkerboard colour (0/1) per face.

    Colour 0 is the colour of corner 0 of the lowest crossing; for a tangle
    the faces N and S (around the NW-NE and SE-SW corners of the boundary)
    get colour 0 instead, so that colour 0 gives G_n.
    """
    fs = dg.faces(D)
    fi = {corner: i for i, f in enumerate(fs) for corner in f}
    colour: dict = {}
    if D.is_tangle:
        seeds = [(fi[("B", 0)], 0), (fi[("B", 2)], 0), (fi[("B", 1)], 1), (fi[("B", 3)], 1)]
    elif D.crossings:
        seeds = [(fi[(D.crossings[0].id, 0)], 0)]
    else:
        seeds = []
    for f, c in seeds:
        if colour.setdefault(f, c) != c:
            raise ValueError("diagram faces are not two-colourable")
    changed = True
    while changed:
        changed = False
        for c in D.crossings:
            known = [(k, colour[fi[(c.id, k)]]) for k in range(4) if fi[(c.id, k)] in colour]
            if not known:
                continue
            k0, col0 = known[0]
            for k in range(4):
                want = col0 if (k - k0) % 2 == 0 else 1 - col0
                f = fi[(c.id, k)]
                if f not in colour:
                    colour[f] = want
                    changed = True
                elif colour[f] != want:
                    raise ValueError("diagram faces are not two-colourable")
    return fs, fi, colour


def _graph(D: dg.Diagram, shading: int, boundary=None) -> SignedPlanarGraph:
    fs, fi, colour = face_colours(D)
    shaded = sorted(f for f, c in colour.items() if c == shading)
    index = {f: i for i, f in enumerate(shaded)}
    edges = []
    for c in D.crossings:
        k = 0 if colour[fi[(c.id, 0)]] == shading else 1
        u, v = index[fi[(c.id, k)]], index[fi[(c.id, k + 2)]]
        sign = 1 if k == c.over[0] else -1
        edges.append((min(u, v), max(u, v), sign, c.id))
    bverts = None
    if boundary is not None:
        bverts = tuple(index[fi[("B", p)]] for p in boundary)
    return SignedPlanarGraph(len(shaded), tuple(edges), bverts, D, shading)


def tait_graph(D: dg.Diagram, shading: Optional[int] = None) -> SignedPlanarGraph:
    """Tait graph of a connected link diagram.

    Without an explicit ``shading`` the one with more positive edges is
    chosen; on a tie, the one in which a dealternator's edge is negative.
    """
    if D.is_tangle:
        raise dg.DiagramError("use tangle_graphs for tangle diagrams")
    if not dg.is_connected(D):
        raise dg.DiagramError("Tait graph needs a connected diagram")
    if shading is not None:
        return _graph(D, shading)
    g0, g1 = _graph(D, 0), _graph(D, 1)
    if g0.positive() != g1.positive():
        return g0 if g0.positive() > g1.positive() else g1
    deal = dg.dealternators(D)
    if deal:
        return g0 if g0.signs()[deal[0]] < 0 else g1
    return g0


def dual(G: SignedPlanarGraph) -> SignedPlanarGraph:
    """The Tait graph of the other shading: planar dual with every sign flipped."""
    if G.source is None or G.shading is None:
        raise ValueError("dual needs a graph built from a diagram")
    if G.source.is_tangle:
        other = 1 - G.shading
        return _graph(G.source, other, (1, 3) if other == 1 else (0, 2))
    return _graph(G.source, 1 - G.shading)


def tangle_graphs(T: dg.Diagram) -> tuple:
    """``(G_n, G_d)`` of a tangle diagram.

    G_n has the N and S faces as boundary vertices, G_d the W and E faces.
    """
    if not T.is_tangle:
        raise dg.DiagramError("tangle_graphs needs a tangle diagram")
    return _graph(T, 0, (0, 2)), _graph(T, 1, (1, 3))


def coalesce_boundary(G: SignedPlanarGraph) -> SignedPlanarGraph:
    """Identify the two boundary vertices of a tangle graph."""
    a, b = G.boundary_vertices
    if a == b:
        return SignedPlanarGraph(G.n_vertices, G.edges, None, G.source, G.shading)
    keep, drop = min(a, b), max(a, b)

    def m(x):
        x = keep if x == drop else x
        return x - 1 if x > drop else x

    edges = tuple((min(m(u), m(v)), max(m(u), m(v)), s, c) for u, v, s, c in G.edges)
    return SignedPlanarGraph(G.n_vertices - 1, edges, None, G.source, G.shading)


# -- spanning trees and determinants -------------------------------------------------

def _loopless(G: SignedPlanarGraph):
    es = [(u, v, s) for u, v, s, _ in G.edges if u != v]
    eu = np.array([e[0] for e in es], dtype=np.int64)
    ev = np.array([e[1] for e in es], dtype=np.int64)
    pos = np.array([1 if e[2] > 0 else 0 for e in es], dtype=np.int64)
    return eu, ev, pos


def _graph_connected(n: int, edges) -> bool:
    if n == 0:
        return False
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v, *_ in edges:
        parent[find(u)] = find(v)
    return len({find(x) for x in range(n)}) == 1


def spanning_tree_counts(G: SignedPlanarGraph, budget: int = DEFAULT_TREE_BUDGET) -> SpanningTreeCounts:
    """Exhaustive census of spanning trees by number of positive edges."""
    eu, ev, pos = _loopless(G)
    if len(eu) > budget:
        raise BudgetExceeded(f"{len(eu)} edges exceed the enumeration budget {budget}")
    if not _graph_connected(G.n_vertices, G.edges):
        return SpanningTreeCounts({}, 0)
    hist = tree_census(G.n_vertices, eu, ev, pos)
    s = {k: int(v) for k, v in enumerate(hist) if v}
    return SpanningTreeCounts(s, sum(s.values()))


def bareiss_determinant(M: list) -> int:
    """Exact determinant of an integer matrix by fraction-free elimination."""
    A = [list(row) for row in M]
    n = len(A)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for r in range(k + 1, n):
                if A[r][k] != 0:
                    A[k], A[r] = A[r], A[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            row_i, row_k = A[i], A[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = akk
    return sign * A[n - 1][n - 1]


def _weighted_tree_sum(G: SignedPlanarGraph) -> int:
    n = G.n_vertices
    L = [[0] * n for _ in range(n)]
    for u, v, s, _ in G.edges:
        if u == v:
            continue
        L[u][u] += s
        L[v][v] += s
        L[u][v] -= s
        L[v][u] -= s
    return bareiss_determinant([row[1:] for row in L[1:]])


def _trivial_det(D: dg.Diagram) -> Optional[int]:
    if D.is_tangle:
        raise dg.DiagramError("determinant needs a link diagram")
    if not D.crossings:
        return 1 if D.loops == 1 else 0
    if not dg.is_connected(D):
        return 0
    return None


def determinant_matrix_tree(D: dg.Diagram) -> int:
    """|sum of +-1 weighted spanning trees| via an exact reduced-Laplacian determinant."""
    t = _trivial_det(D)
    if t is not None:
        return t
    return abs(_weighted_tree_sum(tait_graph(D)))


def determinant_enumerated(D: dg.Diagram, budget: int = DEFAULT_TREE_BUDGET) -> int:
    """``|sum_k (-1)^k s_k|`` by exhaustive spanning-tree enumeration."""
    t = _trivial_det(D)
    if t is not None:
        return t
    return abs(spanning_tree_counts(tait_graph(D), budget).signed_sum())


def determinant(D: dg.Diagram, method: str = "matrix", budget: int = DEFAULT_TREE_BUDGET) -> int:
    """Link determinant of a diagram; split diagrams get 0.

    ``method`` is ``"matrix"`` (default), ``"enumerate"`` or ``"both"``;
    ``"both"`` runs the two routes and raises if they disagree.
    """
    if method == "matrix":
        return determinant_matrix_tree(D)
    if method == "enumerate":
        return determinant_enumerated(D, budget)
    if method == "both":
        a = determinant_matrix_tree(D)
        b = determinant_enumerated(D, budget)
        if a != b:
            raise AssertionError(f"determinant routes disagree: matrix-tree {a}, enumeration {b}")
        return a
    raise ValueError(f"unknown determinant method {method!r}")


# -- structure ------------------------------------------------------------------------

def graph_properties(G: SignedPlanarGraph) -> dict:
    """Connectivity, cut vertices, bridges and loops (by crossing id)."""
    n = G.n_vertices
    adj: list = [[] for _ in range(n)]
    loops = []
    for k, (u, v, _, cid) in enumerate(G.edges):
        if u == v:
            loops.append(cid)
            continue
        adj[u].append((v, k))
        adj[v].append((u, k))
    connected = _graph_connected(n, G.edges)
    disc = [-1] * n
    low = [0] * n
    cut = set()
    bridges = []
    timer = [0]

    def dfs(u, parent_edge):
        disc[u] = low[u] = timer[0]
        timer[0] += 1
        children = 0
        for v, k in adj[u]:
            if k == parent_edge:
                continue
            if disc[v] == -1:
                children += 1
                dfs(v, k)
                low[u] = min(low[u], low[v])
                if low[v] > disc[u]:
                    bridges.append(G.edges[k][3])
                if parent_edge is not None and low[v] >= disc[u]:
                    cut.add(u)
            else:
                low[u] = min(low[u], disc[v])
        if parent_edge is None and children > 1:
            cut.add(u)

    for u in range(n):
        if disc[u] == -1:
            dfs(u, None)
    single = len(G.edges) <= 1
    nonseparable = connected and not cut and (single or (not loops and not bridges))
    return {
        "connected": connected,
        "nonseparable": nonseparable,
        "cut_vertices": sorted(cut),
        "bridges": sorted(bridges),
        "loops": sorted(loops),
    }


def dump_graph(G: SignedPlanarGraph) -> str:
    """One edge per line: ``u v +|- crossing_id``."""
    return "\n".join(f"{u} {v} {'+' if s > 0 else '-'} {c}" for u, v, s, c in G.edges)
