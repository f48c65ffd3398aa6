"""Exact polynomial arithmetic for bracket computations.

Two rings:

* :class:`BracketPoly` — integer Laurent polynomials in the three commuting
  variables A, B, d.  Exponents may be negative (the recursive bracket engine
  produces intermediate A^-1 coefficients that cancel later).
* :class:`Laurent` — integer Laurent polynomials in one variable, used both
  for the reduced bracket (variable A) and the Jones polynomial (variable
  q = t^(1/4), so one exponent unit is a quarter power of t).

Both are immutable, store no zero coefficients, and use arbitrary-precision
integer coefficients.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping


def _normalized(terms: Mapping) -> dict:
    return {k: int(c) for k, c in terms.items() if c != 0}


class BracketPoly:
    """Sum of c * A^a * B^b * d^k terms keyed by the exponent triple."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int, int], int] | None = None):
        object.__setattr__(self, "terms", _normalized(terms or {}))

    def __setattr__(self, name, value):
        raise AttributeError("BracketPoly is immutable")

    @classmethod
    def zero(cls) -> "BracketPoly":
        return cls()

    @classmethod
    def one(cls) -> "BracketPoly":
        return cls({(0, 0, 0): 1})

    @classmethod
    def monomial(cls, coeff: int = 1, a: int = 0, b: int = 0, d: int = 0) -> "BracketPoly":
        return cls({(a, b, d): coeff})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: "BracketPoly") -> "BracketPoly":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return BracketPoly(out)

    def __neg__(self) -> "BracketPoly":
        return BracketPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "BracketPoly") -> "BracketPoly":
        return self + (-other)

    def __mul__(self, other: "BracketPoly") -> "BracketPoly":
        out: dict[tuple[int, int, int], int] = {}
        for (a1, b1, d1), c1 in self.terms.items():
            for (a2, b2, d2), c2 in other.terms.items():
                key = (a1 + a2, b1 + b2, d1 + d2)
                out[key] = out.get(key, 0) + c1 * c2
        return BracketPoly(out)

    def __pow__(self, n: int) -> "BracketPoly":
        if n < 0:
            raise ValueError("negative powers are not defined for polynomials")
        result = BracketPoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c: int) -> "BracketPoly":
        return BracketPoly({k: c * v for k, v in self.terms.items()})

    def shift_d(self, k: int) -> "BracketPoly":
        """Multiply by d^k."""
        return BracketPoly({(a, b, dd + k): c for (a, b, dd), c in self.terms.items()})

    def swap_ab(self) -> "BracketPoly":
        """Exchange the roles of A and B, i.e. evaluate p(B, A, d)."""
        return BracketPoly({(b, a, d): c for (a, b, d), c in self.terms.items()})

    def min_exponents(self) -> tuple[int, int, int]:
        if not self.terms:
            return (0, 0, 0)
        return tuple(min(k[i] for k in self.terms) for i in range(3))  # type: ignore[return-value]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BracketPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for (a, b, d) in sorted(self.terms, reverse=True):
            c = self.terms[(a, b, d)]
            factors = []
            for name, e in (("A", a), ("B", b), ("d", d)):
                if e == 1:
                    factors.append(name)
                elif e != 0:
                    factors.append(f"{name}^{e}")
            if abs(c) != 1 or not factors:
                factors.insert(0, str(abs(c)))
            pieces.append((c < 0, "*".join(factors)))
        out = []
        for i, (neg, body) in enumerate(pieces):
            if i == 0:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out)

    def __repr__(self) -> str:
        return f"BracketPoly({self})"


class Laurent:
    """Integer Laurent polynomial in a single variable."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, int] | None = None):
        object.__setattr__(self, "terms", _normalized(terms or {}))

    def __setattr__(self, name, value):
        raise AttributeError("Laurent is immutable")

    @classmethod
    def zero(cls) -> "Laurent":
        return cls()

    @classmethod
    def one(cls) -> "Laurent":
        return cls({0: 1})

    @classmethod
    def monomial(cls, coeff: int = 1, e: int = 0) -> "Laurent":
        return cls({e: coeff})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: "Laurent") -> "Laurent":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return Laurent(out)

    def __neg__(self) -> "Laurent":
        return Laurent({e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "Laurent") -> "Laurent":
        return self + (-other)

    def __mul__(self, other: "Laurent") -> "Laurent":
        out: dict[int, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return Laurent(out)

    def __pow__(self, n: int) -> "Laurent":
        if n < 0:
            raise ValueError("negative powers are not defined for polynomials")
        result = Laurent.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def span(self) -> int:
        """Difference between the largest and smallest exponent (0 if empty)."""
        if not self.terms:
            return 0
        return max(self.terms) - min(self.terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Laurent):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def format_var(self, var: str = "A") -> str:
        """Render with integer exponents of ``var``, highest first."""
        if not self.terms:
            return "0"
        pieces = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            if e == 0:
                body = str(abs(c))
            else:
                body = var if e == 1 else f"{var}^{e}"
                if abs(c) != 1:
                    body = f"{abs(c)}*{body}"
            pieces.append((c < 0, body))
        out = []
        for i, (neg, body) in enumerate(pieces):
            if i == 0:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out)

    def format_quarter_t(self) -> str:
        """Render exponents as reduced fractional powers of t (units of t^(1/4))."""
        if not self.terms:
            return "0"
        pieces = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            q = Fraction(e, 4)
            if q == 0:
                body = str(abs(c))
            else:
                body = f"t^{{{q}}}"
                if abs(c) != 1:
                    body = f"{abs(c)}*{body}"
            pieces.append((c < 0, body))
        out = []
        for i, (neg, body) in enumerate(pieces):
            if i == 0:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out)

    def __str__(self) -> str:
        return self.format_var("q")

    def __repr__(self) -> str:
        return f"Laurent({self})"


# d |-> -A^2 - A^-2 under the reduced-bracket evaluation.
_D_IMAGE = Laurent({2: -1, -2: -1})


def reduce_bracket(p: BracketPoly) -> Laurent:
    """Evaluate B = A^-1 and d = -A^2 - A^-2, giving a Laurent polynomial in A."""
    powers: dict[int, Laurent] = {0: Laurent.one()}

    def d_power(k: int) -> Laurent:
        if k not in powers:
            powers[k] = d_power(k - 1) * _D_IMAGE
        return powers[k]

    out = Laurent.zero()
    for (a, b, k), c in p.terms.items():
        out = out + (d_power(k) * Laurent.monomial(c, a - b))
    return out


def jones_normalize(r: Laurent, n: int, loops: int) -> Laurent:
    """Turn a reduced bracket into the Jones polynomial in units of t^(1/4).

    Substitutes A = t^(-1/4) (each A-exponent e becomes q-exponent -e),
    shifts by 3n - 6*loops quarter-powers, and negates every coefficient
    when the vertex count n is odd.
    """
    sign = -1 if n % 2 else 1
    shift = 3 * n - 6 * loops
    return Laurent({shift - e: sign * c for e, c in r.terms.items()})
