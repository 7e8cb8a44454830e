"""Exact one-variable Laurent polynomials with integer coefficients."""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping


class LaurentPoly:
    """Immutable Laurent polynomial ``sum c_k x^k``; zero terms are never stored."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, int] = {}
        for e, c in items:
            if c:
                acc[int(e)] = acc.get(int(e), 0) + int(c)
        self._terms = tuple(sorted((e, c) for e, c in acc.items() if c))
        self._hash = None

    @classmethod
    def monomial(cls, exp: int, coef: int = 1) -> "LaurentPoly":
        return cls({exp: coef})

    @classmethod
    def from_coefficients(cls, coeffs: Iterable[int], low: int = 0) -> "LaurentPoly":
        return cls((low + i, c) for i, c in enumerate(coeffs))

    # -- access ----------------------------------------------------------------
    @property
    def terms(self) -> tuple[tuple[int, int], ...]:
        """(exponent, coefficient) pairs in ascending exponent order."""
        return self._terms

    def coefficient(self, exp: int) -> int:
        return dict(self._terms).get(exp, 0)

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def min_exp(self) -> int:
        return self._terms[0][0]

    @property
    def max_exp(self) -> int:
        return self._terms[-1][0]

    def span(self) -> int:
        return self.max_exp - self.min_exp if self._terms else 0

    def coefficients(self) -> list[int]:
        """Dense coefficient list from ``min_exp`` to ``max_exp``."""
        if not self._terms:
            return []
        d = dict(self._terms)
        return [d.get(e, 0) for e in range(self.min_exp, self.max_exp + 1)]

    # -- arithmetic ------------------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        return LaurentPoly(self._terms + other._terms)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly((e, -c) for e, c in self._terms)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        acc: dict[int, int] = {}
        for e1, c1 in self._terms:
            for e2, c2 in other._terms:
                acc[e1 + e2] = acc.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(acc)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self._terms) != 1 or abs(self._terms[0][1]) != 1:
                raise ValueError("only unit monomials have negative powers")
            e, c = self._terms[0]
            return LaurentPoly({e * k: c ** abs(k)})
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``x^k``."""
        return LaurentPoly((e + k, c) for e, c in self._terms)

    def scale_exponents(self, k: int) -> "LaurentPoly":
        """Substitute ``x -> x^k`` (``k = -1`` is the mirror substitution)."""
        return LaurentPoly((e * k, c) for e, c in self._terms)

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact polynomial division; raises if there is a remainder."""
        other = _coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        rem = dict(self._terms)
        lead_e, lead_c = other._terms[-1]
        quot: dict[int, int] = {}
        while rem:
            top = max(rem)
            if top - lead_e < self.min_exp - other.min_exp:
                break
            q, r = divmod(rem[top], lead_c)
            if r:
                raise ValueError("inexact division")
            qe = top - lead_e
            quot[qe] = q
            for e, c in other._terms:
                v = rem.get(e + qe, 0) - q * c
                if v:
                    rem[e + qe] = v
                else:
                    rem.pop(e + qe, None)
        if rem:
            raise ValueError("inexact division")
        return LaurentPoly(quot)

    def __call__(self, x):
        """Evaluate at an integer or Fraction."""
        total = Fraction(0)
        for e, c in self._terms:
            total += c * Fraction(x) ** e
        return total.numerator if total.denominator == 1 else total

    # -- comparison ------------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._terms)
        return self._hash

    def sort_key(self):
        return self._terms

    # -- text ------------------------------------------------------------------
    def to_text(self, var: str = "t") -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in self._terms:
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if e == 0:
                body = str(a)
            else:
                mono = var if e == 1 else f"{var}^{e}"
                body = mono if a == 1 else f"{a}*{mono}"
            parts.append(sign + body)
        s = "".join(parts)
        return s[1:] if s.startswith("+") else s

    def to_json(self) -> list[list[int]]:
        return [[e, c] for e, c in self._terms]

    @classmethod
    def from_json(cls, data) -> "LaurentPoly":
        return cls((e, c) for e, c in data)

    @classmethod
    def parse(cls, text: str, var: str = "t") -> "LaurentPoly":
        """Inverse of :meth:`to_text`."""
        s = text.replace(" ", "").replace("−", "-")
        if s in ("", "0"):
            return ZERO
        if s[0] not in "+-":
            s = "+" + s
        pat = re.compile(rf"([+-])(\d+)?\*?({re.escape(var)}(?:\^(-?\d+))?)?")
        pos = 0
        terms = []
        while pos < len(s):
            m = pat.match(s, pos)
            if not m or m.end() == pos or (m.group(2) is None and m.group(3) is None):
                raise ValueError(f"cannot parse polynomial {text!r}")
            c = int(m.group(2) or 1) * (-1 if m.group(1) == "-" else 1)
            e = 0 if m.group(3) is None else int(m.group(4) or 1)
            terms.append((e, c))
            pos = m.end()
        return cls(terms)

    def __repr__(self):
        return f"LaurentPoly({self.to_text('x')})"


def _coerce(x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly({0: x})
    raise TypeError(f"cannot use {type(x).__name__} as a polynomial")


ZERO = LaurentPoly()
ONE = LaurentPoly({0: 1})
