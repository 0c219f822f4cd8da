"""Laurent polynomials in one variable ``A`` with exact integer coefficients."""

from __future__ import annotations

from typing import Mapping, Union


class Laurent:
    __slots__ = ("terms",)

    def __init__(self, terms: Union[Mapping[int, int], int, None] = None):
        if terms is None:
            terms = {}
        elif isinstance(terms, int):
            terms = {0: terms} if terms else {}
        self.terms = {e: c for e, c in terms.items() if c}

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> "Laurent":
        return cls({exponent: coeff})

    def _coerce(self, other) -> "Laurent":
        return other if isinstance(other, Laurent) else Laurent(int(other))

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return Laurent(out)

    __radd__ = __add__

    def __neg__(self):
        return Laurent({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return Laurent(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials have Laurent inverses")
            (e, c), = self.terms.items()
            if c not in (1, -1):
                raise ValueError("only unit monomials have Laurent inverses")
            return Laurent({e * n: c ** (-n)})
        out = Laurent(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def divexact(self, other: "Laurent") -> "Laurent":
        """Exact division; raises ValueError when ``other`` does not divide."""
        other = self._coerce(other)
        if not other.terms:
            raise ZeroDivisionError("division by zero polynomial")
        rem = dict(self.terms)
        lead_e = max(other.terms)
        lead_c = other.terms[lead_e]
        floor = (min(self.terms) - min(other.terms)) if self.terms else 0
        quot = {}
        while rem and max(rem) - lead_e >= floor:
            e = max(rem)
            if rem[e] % lead_c:
                raise ValueError("inexact division")
            q, qe = rem[e] // lead_c, e - lead_e
            quot[qe] = q
            for oe, oc in other.terms.items():
                rem[qe + oe] = rem.get(qe + oe, 0) - q * oc
                if rem[qe + oe] == 0:
                    del rem[qe + oe]
        if rem:
            raise ValueError("inexact division")
        return Laurent(quot)

    def __eq__(self, other):
        if isinstance(other, int):
            other = Laurent(other)
        return isinstance(other, Laurent) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def items(self) -> list[tuple[int, int]]:
        """Terms by descending exponent."""
        return sorted(self.terms.items(), reverse=True)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.items():
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                var = "A" if e == 1 else f"A^{e}"
                body = var if mag == 1 else f"{mag}*{var}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        return " ".join([head] + [f"{s} {b}" for s, b in parts[1:]])

    def __repr__(self) -> str:
        return f"Laurent({self})"


A = Laurent.monomial(1)
DELTA = -(A ** 2) - A ** -2
