"""Exact Laurent polynomials with integer coefficients, and second-order jets.

Exponents are usually ``int`` but may be :class:`fractions.Fraction` (Jones
polynomials of links live in quarter-integer powers of ``t``).  Coefficients
are Python integers, so nothing ever overflows.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union

Exponent = Union[int, Fraction]


def _norm_exp(e: Exponent) -> Exponent:
    if isinstance(e, Fraction) and e.denominator == 1:
        return int(e)
    return e


class LaurentPolynomial:
    """Immutable sparse Laurent polynomial ``sum c_e * var^e``.

    The coefficient map never stores zeros, so equality is plain structural
    equality of the term dictionaries.
    """

    __slots__ = ("_terms", "var", "_hash")

    def __init__(self, terms: Mapping[Exponent, int] | None = None, var: str = "t"):
        clean: dict[Exponent, int] = {}
        if terms:
            for e, c in terms.items():
                if c:
                    e = _norm_exp(e)
                    clean[e] = clean.get(e, 0) + int(c)
            clean = {e: c for e, c in clean.items() if c}
        self._terms = clean
        self.var = var
        self._hash = None

    # -- constructors -----------------------------------------------------
    @classmethod
    def constant(cls, c: int, var: str = "t") -> "LaurentPolynomial":
        return cls({0: c}, var)

    @classmethod
    def monomial(cls, e: Exponent, c: int = 1, var: str = "t") -> "LaurentPolynomial":
        return cls({e: c}, var)

    @classmethod
    def from_coefficients(cls, coeffs: Iterable[int], low: int = 0, var: str = "t"):
        """Build from a dense coefficient list starting at exponent ``low``."""
        return cls({low + i: c for i, c in enumerate(coeffs)}, var)

    # -- accessors --------------------------------------------------------
    @property
    def terms(self) -> dict[Exponent, int]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def coeff(self, e: Exponent) -> int:
        return self._terms.get(_norm_exp(e), 0)

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def min_exp(self) -> Exponent:
        return min(self._terms)

    @property
    def max_exp(self) -> Exponent:
        return max(self._terms)

    def span(self) -> Exponent:
        return self.max_exp - self.min_exp if self._terms else 0

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other) -> "LaurentPolynomial":
        if isinstance(other, LaurentPolynomial):
            return other
        if isinstance(other, int):
            return LaurentPolynomial.constant(other, self.var)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPolynomial(out, self.var)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial({e: -c for e, c in self._terms.items()}, self.var)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Exponent, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPolynomial(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials have Laurent inverses")
            ((e, c),) = self._terms.items()
            if c not in (1, -1):
                raise ValueError("monomial with non-unit coefficient has no inverse")
            return LaurentPolynomial({-e * (-k): c ** (-k)}, self.var)
        result = LaurentPolynomial.constant(1, self.var)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def exact_div(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        """Exact division in Z[t, 1/t]; raises ``ArithmeticError`` on a remainder."""
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return LaurentPolynomial({}, self.var)
        rem = dict(self._terms)
        lead_e = other.max_exp
        lead_c = other._terms[lead_e]
        quot: dict[Exponent, int] = {}
        low = self.min_exp - other.min_exp
        while rem:
            top = max(rem)
            q_e = top - lead_e
            if q_e < low:
                raise ArithmeticError("inexact polynomial division")
            q_c, r = divmod(rem[top], lead_c)
            if r:
                raise ArithmeticError("inexact polynomial division")
            quot[q_e] = q_c
            for e, c in other._terms.items():
                k = e + q_e
                v = rem.get(k, 0) - q_c * c
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        return LaurentPolynomial(quot, self.var)

    def __floordiv__(self, other):
        return self.exact_div(other)

    # -- comparisons ------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPolynomial.constant(other, self.var)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    # -- transforms -------------------------------------------------------
    def shift(self, k: Exponent) -> "LaurentPolynomial":
        return LaurentPolynomial({e + k: c for e, c in self._terms.items()}, self.var)

    def invert_variable(self) -> "LaurentPolynomial":
        """Substitute ``var -> 1/var``."""
        return LaurentPolynomial({-e: c for e, c in self._terms.items()}, self.var)

    def scale_exponents(self, factor: Exponent) -> "LaurentPolynomial":
        return LaurentPolynomial(
            {_norm_exp(Fraction(e) * factor): c for e, c in self._terms.items()}, self.var
        )

    def with_var(self, var: str) -> "LaurentPolynomial":
        return LaurentPolynomial(self._terms, var)

    def __call__(self, x):
        total = 0
        for e, c in self._terms.items():
            total += c * x**e
        return total

    def derivative(self) -> "LaurentPolynomial":
        out = {}
        for e, c in self._terms.items():
            if e != 0:
                d = c * e
                if isinstance(d, Fraction):
                    if d.denominator != 1:
                        raise ValueError("derivative leaves integer coefficients")
                    d = int(d)
                out[e - 1] = d
        return LaurentPolynomial(out, self.var)

    def jet(self) -> "Jet":
        """Value, first and second derivative at ``var = 1``."""
        d0 = d1 = d2 = 0
        for e, c in self._terms.items():
            d0 += c
            d1 += c * e
            d2 += c * e * (e - 1)
        return Jet(int(d0), int(d1), int(d2))

    def is_palindromic(self) -> bool:
        """Symmetric under ``var -> 1/var``."""
        return self == self.invert_variable()

    def normalize_alexander(self) -> "LaurentPolynomial":
        """Strip the unit ``±t^k`` so the result is symmetric with value 1 at t=1."""
        from .errors import NormalizationFailure

        if self.is_zero():
            raise NormalizationFailure("zero determinant")
        lo, hi = self.min_exp, self.max_exp
        mid = Fraction(lo + hi, 2)
        if mid.denominator != 1:
            raise NormalizationFailure(f"odd span {hi - lo} cannot be centred")
        p = self.shift(-int(mid))
        v = p(1)
        if v == -1:
            p = -p
        elif v != 1:
            raise NormalizationFailure(f"value at 1 is {v}, expected ±1")
        if not p.is_palindromic():
            raise NormalizationFailure("normalized polynomial is not symmetric")
        return p

    # -- text -------------------------------------------------------------
    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts: list[str] = []
        for e, c in sorted(self._terms.items(), reverse=True):
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if e == 0:
                body = str(a)
            else:
                es = str(e) if not isinstance(e, Fraction) else f"({e})"
                mono = f"{self.var}^{es}"
                body = mono if a == 1 else f"{a}*{mono}"
            if not parts:
                parts.append(body if sign == "+" else f"-{body}")
            else:
                parts.append(f"{sign} {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPolynomial({str(self)!r})"

    def to_pairs(self) -> list[list]:
        """``[[exp, coeff], ...]`` in descending exponent order."""
        return [[e, c] for e, c in sorted(self._terms.items(), reverse=True)]


@dataclass(frozen=True)
class Jet:
    """Truncated Taylor data ``(f(1), f'(1), f''(1))``.

    Multiplication follows the Leibniz rule, so the jet of a product is the
    product of the jets; this is all a division-free determinant needs.
    """

    d0: int
    d1: int = 0
    d2: int = 0

    @classmethod
    def variable(cls) -> "Jet":
        return cls(1, 1, 0)

    @classmethod
    def const(cls, c: int) -> "Jet":
        return cls(c, 0, 0)

    def __add__(self, other):
        if isinstance(other, int):
            other = Jet(other)
        return Jet(self.d0 + other.d0, self.d1 + other.d1, self.d2 + other.d2)

    __radd__ = __add__

    def __neg__(self):
        return Jet(-self.d0, -self.d1, -self.d2)

    def __sub__(self, other):
        if isinstance(other, int):
            other = Jet(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return Jet(self.d0 * other, self.d1 * other, self.d2 * other)
        return Jet(
            self.d0 * other.d0,
            self.d1 * other.d0 + self.d0 * other.d1,
            self.d2 * other.d0 + 2 * self.d1 * other.d1 + self.d0 * other.d2,
        )

    __rmul__ = __mul__


def t_poly(var: str = "t") -> LaurentPolynomial:
    return LaurentPolynomial.monomial(1, var=var)


def parse_polynomial(text: str, var: str = "t") -> LaurentPolynomial:
    """Inverse of ``str(poly)`` for integer or parenthesised fractional exponents."""
    import re

    s = text.replace(" ", "")
    if s in ("", "0"):
        return LaurentPolynomial({}, var)
    if s[0] not in "+-":
        s = "+" + s
    token = re.compile(
        rf"([+-])(?:(\d+)\*?)?(?:{re.escape(var)}(?:\^(\(-?\d+/\d+\)|-?\d+))?)?"
    )
    terms: dict[Exponent, int] = {}
    pos = 0
    while pos < len(s):
        m = token.match(s, pos)
        if not m or m.end() == pos + 1:
            raise ValueError(f"cannot parse polynomial near {s[pos:]!r}")
        sign, coef, exp = m.group(1), m.group(2), m.group(3)
        has_var = var in m.group(0)
        c = int(coef) if coef else 1
        if not has_var:
            if coef is None:
                raise ValueError(f"dangling sign in {text!r}")
            e: Exponent = 0
        elif exp is None:
            e = 1
        elif exp.startswith("("):
            e = Fraction(exp[1:-1])
        else:
            e = int(exp)
        terms[e] = terms.get(e, 0) + (c if sign == "+" else -c)
        pos = m.end()
    return LaurentPolynomial(terms, var)
