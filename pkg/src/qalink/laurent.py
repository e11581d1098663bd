"""Sparse exact Laurent polynomials in one and two variables."""

from __future__ import annotations

from typing import Mapping

__all__ = ["LaurentPoly", "LaurentPoly2"]


def _clean(d: Mapping) -> dict:
    return {k: v for k, v in d.items() if v}


class LaurentPoly:
    """Integer Laurent polynomial in one variable, stored as ``{exponent: coefficient}``."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | None = None):
        self.terms = _clean(dict(terms or {}))

    @classmethod
    def monomial(cls, exp: int, coef: int = 1) -> "LaurentPoly":
        return cls({exp: coef})

    @classmethod
    def constant(cls, c: int) -> "LaurentPoly":
        return cls({0: c})

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        return isinstance(other, LaurentPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly({k: v * other for k, v in self.terms.items()})
        out: dict = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                out[k1 + k2] = out.get(k1 + k2, 0) + v1 * v2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials have negative powers")
            (k, v), = self.terms.items()
            if abs(v) != 1:
                raise ValueError("monomial is not a unit")
            return LaurentPoly({k * n: v ** n})
        out = LaurentPoly.constant(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def min_exp(self) -> int:
        return min(self.terms) if self.terms else 0

    def max_exp(self) -> int:
        return max(self.terms) if self.terms else 0

    def breadth(self) -> int:
        return self.max_exp() - self.min_exp() if self.terms else 0

    def coefficients(self, step: int = 1) -> list:
        """Coefficients from the lowest to the highest exponent, every ``step``."""
        if not self.terms:
            return []
        lo, hi = self.min_exp(), self.max_exp()
        return [self.terms.get(k, 0) for k in range(lo, hi + 1, step)]

    def substitute_power(self, factor: int) -> "LaurentPoly":
        """Replace the variable ``x`` by ``x**factor``."""
        return LaurentPoly({k * factor: v for k, v in self.terms.items()})

    def evaluate(self, x):
        """Evaluate at ``x`` (an int, Fraction or complex); exact for Gaussian integers."""
        total = 0
        for k, v in self.terms.items():
            total += v * (x ** k)
        return total

    def evaluate_at_i(self) -> tuple:
        """Exact value at ``x = i`` as a pair of integers ``(real, imag)``."""
        re = im = 0
        for k, v in self.terms.items():
            r = k % 4
            if r == 0:
                re += v
            elif r == 1:
                im += v
            elif r == 2:
                re -= v
            else:
                im -= v
        return re, im

    def to_string(self, var: str = "A") -> str:
        """Canonical text: terms ``coef*var^k`` by increasing exponent, joined by ``+``."""
        if not self.terms:
            return "0"
        return " + ".join(f"{self.terms[k]}*{var}^{k}" for k in sorted(self.terms))

    @classmethod
    def from_string(cls, text: str, var: str = "A") -> "LaurentPoly":
        text = text.strip()
        if text == "0":
            return cls()
        out = {}
        for part in text.split(" + "):
            coef, power = part.split(f"*{var}^")
            out[int(power)] = out.get(int(power), 0) + int(coef)
        return cls(out)

    def __repr__(self):
        return f"LaurentPoly({self.to_string()})"


class LaurentPoly2:
    """Integer Laurent polynomial in ``a`` and ``z``: ``{(i, j): coefficient}``."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | None = None):
        self.terms = _clean(dict(terms or {}))

    @classmethod
    def monomial(cls, i: int, j: int, coef: int = 1) -> "LaurentPoly2":
        return cls({(i, j): coef})

    @classmethod
    def constant(cls, c: int) -> "LaurentPoly2":
        return cls({(0, 0): c})

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly2.constant(other)
        return isinstance(other, LaurentPoly2) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly2.constant(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return LaurentPoly2(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly2({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly2({k: v * other for k, v in self.terms.items()})
        out: dict = {}
        for (i1, j1), v1 in self.terms.items():
            for (i2, j2), v2 in other.terms.items():
                key = (i1 + i2, j1 + j2)
                out[key] = out.get(key, 0) + v1 * v2
        return LaurentPoly2(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials have negative powers")
            ((i, j), v), = self.terms.items()
            if abs(v) != 1:
                raise ValueError("monomial is not a unit")
            return LaurentPoly2({(i * n, j * n): v ** n})
        out = LaurentPoly2.constant(1)
        for _ in range(n):
            out = out * self
        return out

    def __bool__(self):
        return bool(self.terms)

    def deg_z(self) -> int:
        return max(j for _, j in self.terms) if self.terms else 0

    def min_z(self) -> int:
        return min(j for _, j in self.terms) if self.terms else 0

    def deg_a(self) -> int:
        return max(i for i, _ in self.terms) if self.terms else 0

    def min_a(self) -> int:
        return min(i for i, _ in self.terms) if self.terms else 0

    def z_coefficient(self, j: int) -> LaurentPoly:
        """Coefficient of ``z**j`` as a polynomial in ``a``."""
        return LaurentPoly({i: v for (i, jj), v in self.terms.items() if jj == j})

    def to_string(self) -> str:
        """Canonical text: ``coef*a^i*z^j`` terms sorted by ``(i, j)``."""
        if not self.terms:
            return "0"
        return " + ".join(f"{self.terms[k]}*a^{k[0]}*z^{k[1]}" for k in sorted(self.terms))

    @classmethod
    def from_string(cls, text: str) -> "LaurentPoly2":
        text = text.strip()
        if text == "0":
            return cls()
        out = {}
        for part in text.split(" + "):
            coef, rest = part.split("*a^")
            i, j = rest.split("*z^")
            key = (int(i), int(j))
            out[key] = out.get(key, 0) + int(coef)
        return cls(out)

    def __repr__(self):
        return f"LaurentPoly2({self.to_string()})"
