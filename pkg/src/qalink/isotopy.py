"""Isotopy keys for links built from rational tangles.

Closures of sums (or products) of rational tangles are Montesinos links,
two-bridge links, or connected sums of two-bridge links.  Each gets a
key such that equal keys mean isotopic links:

* ``("2b", a, b)``: the two-bridge link of ``a/b``, with ``b`` normalized
  to ``min(b, b^-1 mod a)`` (two-bridge links ``a/b`` and ``a/b'`` agree
  when ``b' = b^(+-1) mod a``);
* ``("M", eps, hats)``: a Montesinos link with at least three tangles in
  reduced form, hats taken up to cyclic order and reversal;
* ``()``: the unknot.

The key is None when the expression is outside this class, splits, or is
a connected sum with more than one nontrivial summand (link connected
sums depend on the components joined).

Crossing-level expressions write every crossing as its own tagged leaf
``1@cK`` or ``-1@cK``, where ``K`` is the crossing id in the compiled
diagram; smoothing crossing ``K`` replaces its leaf by ``0`` or ``inf``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Optional

from qalink import notation as nt

__all__ = ["expand_link", "smoothed", "link_key", "representative",
           "standard_form", "two_bridge_key", "two_bridge_sum"]


# -- crossing-level expansion -----------------------------------------------------

def _twist_text(n: int, op: str) -> str:
    if n == 0:
        return "0" if op == "+" else "inf"
    s = "1" if n > 0 else "-1"
    text = f"{s}@{{}}"
    for _ in range(abs(n) - 1):
        text = f"({text}{op}{s}@{{}})"
    return text


def _rational_text(terms: list) -> str:
    # mirrors the standard diagram construction so crossing ids line up
    if len(terms) == 1:
        return _twist_text(terms[0], "+")
    u, w = _twist_text(terms[-1], "+"), _twist_text(terms[-1], "*")
    for a in reversed(terms[:-1]):
        nu = w if a == 0 else f"({_twist_text(a, '+')}+{w})"
        nw = f"({u}*{_twist_text(a, '*')})" if a != 0 else None
        u, w = nu, nw
    return u


def _expand(t: nt.TangleExpr) -> Optional[str]:
    if isinstance(t, nt.Zero):
        return "0"
    if isinstance(t, nt.Infinity):
        return "inf"
    if isinstance(t, nt.Integer):
        return _twist_text(t.n, "+")
    if isinstance(t, nt.Vertical):
        return _twist_text(t.n, "*")
    if isinstance(t, nt.Rational):
        f = nt.cf_to_fraction(t.terms)
        return "inf" if f is nt.INF else _rational_text(nt.fraction_to_cf(f))
    if isinstance(t, (nt.Sum, nt.Star)):
        a, b = _expand(t.left), _expand(t.right)
        if a is None or b is None:
            return None
        op = "+" if isinstance(t, nt.Sum) else "*"
        return f"({a}{op}{b})"
    return None


def expand_link(expr, env=None) -> Optional[str]:
    """Crossing-level form of a link expression, or None if unsupported.

    Rotations and flips of composite tangles are not expanded.
    """
    link = nt.parse_link(expr) if isinstance(expr, str) else expr
    body = _expand(nt.resolve(link.tangle, env))
    if body is None:
        return None
    counter = iter(range(10 ** 9))
    body = re.sub(r"\{\}", lambda _: f"c{next(counter)}", body)
    return f"{link.mode}({body})"


def smoothed(expr: str, cid: int, mode) -> str:
    """Replace the leaf of crossing ``cid`` by the 0 or infinity tangle."""
    leaf = "0" if mode in (0, "0") else "inf"
    out, k = re.subn(rf"-?1@c{cid}(?![0-9])", leaf, expr)
    if k != 1:
        raise ValueError(f"crossing {cid} does not occur in the expression")
    return out


# -- keys ------------------------------------------------------------------------------

def two_bridge_key(f) -> Optional[tuple]:
    """Key of ``N(f)`` for a rational tangle fraction ``f``."""
    if f is nt.INF:
        return ()
    f = Fraction(f)
    a, b = abs(f.numerator), f.denominator
    if a == 0:
        return None
    if a == 1:
        return ()
    b = (b if f.numerator > 0 else -b) % a
    return ("2b", a, min(b, pow(b, -1, a)))


def two_bridge_sum(r: Fraction, s: Fraction) -> Fraction:
    """A fraction ``F`` with ``N(r + s)`` isotopic to ``N(F)``.

    For ``r = p/q`` and ``s = u/v``: ``F = (pv + qu)/(p'v + q'u)`` with
    ``q p' - p q' = 1``.
    """
    p, q = r.numerator, r.denominator
    u, v = s.numerator, s.denominator
    # extended Euclid: p*x + q*y = 1
    x0, y0, a, b = 1, 0, p, q
    x1, y1 = 0, 1
    while b:
        k = a // b
        a, b = b, a - k * b
        x0, x1 = x1, x0 - k * x1
        y0, y1 = y1, y0 - k * y1
    if a < 0:
        x0, y0 = -x0, -y0
    pp, qq = y0, -x0
    num, den = p * v + q * u, pp * v + qq * u
    if den == 0:
        return Fraction(1, 1) if abs(num) == 1 else None
    return Fraction(num, den)


def _flatten(t: nt.TangleExpr, kind) -> list:
    if isinstance(t, kind):
        return _flatten(t.left, kind) + _flatten(t.right, kind)
    return [t]


def _fractions(parts: list) -> Optional[list]:
    out = []
    for p in parts:
        try:
            out.append(nt.eval_fraction(p))
        except nt.NonRationalError:
            return None
    return out


def _neg_inv(x):
    return nt.fneg(nt.finv(x))


def _pieces_key(fracs: list) -> Optional[tuple]:
    """Connected sum of the two-bridge links ``N(f)``: keyed only if at most one is nontrivial."""
    keys = [two_bridge_key(f) for f in fracs]
    if any(k is None for k in keys):
        return None
    nontrivial = [k for k in keys if k]
    if len(nontrivial) > 1:
        return None
    return nontrivial[0] if nontrivial else ()


def _cyclic_key(fracs: list) -> Optional[tuple]:
    """Key of ``N(x_1 + ... + x_m)`` (cyclic order matters)."""
    infs = [x for x in fracs if x is nt.INF]
    if len(infs) > 1:
        return None
    if infs:
        return _pieces_key([_neg_inv(x) for x in fracs if x is not nt.INF])
    from qalink.montesinos import MontesinosLink, reduce

    e = sum((x for x in fracs if x.denominator == 1), Fraction(0))
    params = [1 / x for x in fracs if x.denominator != 1]
    if not params:
        return two_bridge_key(e)
    R = reduce(MontesinosLink(int(e), tuple(params)))
    hats = list(R.hats)
    if len(hats) >= 3:
        rots = [tuple(h[k:] + h[:k]) for h in (hats, hats[::-1]) for k in range(len(h))]
        return ("M", R.epsilon, min(rots))
    if not hats:
        return two_bridge_key(Fraction(R.epsilon))
    r = Fraction(R.epsilon) + 1 / hats[0]
    if len(hats) == 1:
        return two_bridge_key(r)
    f = two_bridge_sum(r, 1 / hats[1])
    return None if f is None else two_bridge_key(f)


def link_key(expr, env=None) -> Optional[tuple]:
    """Isotopy key of a link expression, or None when outside the supported class."""
    link = nt.parse_link(expr) if isinstance(expr, str) else expr
    t = nt.resolve(link.tangle, env)
    sums, stars = _flatten(t, nt.Sum), _flatten(t, nt.Star)
    if len(stars) > 1:
        fr = _fractions(stars)
        if fr is None:
            return None
        if link.mode == "n":
            return _pieces_key(fr)
        return _cyclic_key([_neg_inv(x) for x in fr])
    fr = _fractions(sums)
    if fr is None:
        return None
    if link.mode == "n":
        return _cyclic_key(fr)
    return _pieces_key([_neg_inv(x) for x in fr])


def representative(key) -> Optional[str]:
    """An expression whose standard diagram is alternating (or the unknot) for ``key``."""
    if key is None:
        return None
    if key == ():
        return "n(inf)"
    if key[0] == "2b":
        return f"n({key[1]}/{key[2]})"
    _, eps, hats = key
    n = len(hats)
    if eps >= 0:
        parts = ([str(eps)] if eps else []) + [nt.format_fraction(1 / h) for h in hats]
    elif eps <= -n:
        parts = ([str(eps + n)] if eps + n else []) + [nt.format_fraction(1 / h - 1) for h in hats]
    else:
        return None
    return "n(" + "+".join(parts) + ")"


def standard_form(key) -> Optional[str]:
    """A small standard expression for ``key``, alternating when one is known.

    Montesinos keys without an alternating representative are drawn as
    ``n(eps + sum 1/h_i)`` or ``n((eps + n) + sum (1/h_i - 1))``, whichever
    has the smaller integer part.
    """
    rep = representative(key)
    if rep is not None or key is None:
        return rep
    _, eps, hats = key
    n = len(hats)
    if abs(eps) <= abs(eps + n):
        parts = [str(eps)] + [nt.format_fraction(1 / h) for h in hats]
    else:
        parts = [str(eps + n)] + [nt.format_fraction(1 / h - 1) for h in hats]
    return "n(" + "+".join(parts) + ")"
