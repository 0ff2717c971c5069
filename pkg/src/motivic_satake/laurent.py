"""Exact Laurent polynomials with integer coefficients in one variable.

Used for q-graded multiplicities (variable ``q``) and for Hecke/Satake
coefficients (variable ``v`` with ``q = v**2``).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping


class LaurentPoly:
    """Finitely supported map exponent -> nonzero integer coefficient."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        if isinstance(terms, Mapping):
            terms = terms.items()
        acc: dict[int, int] = {}
        for e, c in terms:
            if c:
                acc[int(e)] = acc.get(int(e), 0) + int(c)
        self._terms = {e: c for e, c in sorted(acc.items()) if c}
        self._hash = None

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> "LaurentPoly":
        return cls({exponent: coeff})

    @classmethod
    def constant(cls, c: int) -> "LaurentPoly":
        return cls({0: c})

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coeff(self, e: int) -> int:
        return self._terms.get(e, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        if not self._terms:
            raise ValueError("degree of zero polynomial")
        return max(self._terms)

    def low_degree(self) -> int:
        if not self._terms:
            raise ValueError("low degree of zero polynomial")
        return min(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self._terms.items()})

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
        out: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = LaurentPoly.constant(1)
        for _ in range(k):
            out = out * self
        return out

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by x**k."""
        return LaurentPoly({e + k: c for e, c in self._terms.items()})

    def scale_exponents(self, factor: int) -> "LaurentPoly":
        """Substitute x -> x**factor (factor may be negative)."""
        return LaurentPoly({e * factor: c for e, c in self._terms.items()})

    def halve_exponents(self) -> "LaurentPoly":
        """Inverse of ``scale_exponents(2)``; every exponent must be even."""
        if any(e % 2 for e in self._terms):
            raise ValueError(f"odd exponent in {self!r}")
        return LaurentPoly({e // 2: c for e, c in self._terms.items()})

    def evaluate(self, x) -> Fraction:
        x = Fraction(x)
        return sum((c * x**e for e, c in self._terms.items()), Fraction(0))

    def all_nonnegative(self) -> bool:
        return all(c >= 0 for c in self._terms.values())

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def to_json(self) -> dict[str, int]:
        return {str(e): c for e, c in self._terms.items()}

    @classmethod
    def from_json(cls, data: Mapping[str, int]) -> "LaurentPoly":
        return cls({int(e): c for e, c in data.items()})

    def format(self, var: str = "v") -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in sorted(self._terms.items(), reverse=True):
            if e == 0:
                mono = str(abs(c))
            else:
                power = var if e == 1 else f"{var}^{e}"
                mono = power if abs(c) == 1 else f"{abs(c)}*{power}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, mono))
        head_sign, head = parts[0]
        text = ("-" if head_sign == "-" else "") + head
        for sign, mono in parts[1:]:
            text += f" {sign} {mono}"
        return text

    def __repr__(self):
        return f"LaurentPoly({self.format()})"


ZERO = LaurentPoly()
ONE = LaurentPoly.constant(1)


def interpolate(points: Iterable[tuple[int, int]]) -> dict[int, Fraction]:
    """Lagrange interpolation through integer points; returns exponent -> coefficient."""
    pts = list(points)
    coeffs = [Fraction(0)] * len(pts)
    for i, (xi, yi) in enumerate(pts):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(pts):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xj * basis[k + 1]
            denom *= xi - xj
        for k, b in enumerate(basis):
            coeffs[k] += yi * b / denom
    return {k: c for k, c in enumerate(coeffs) if c}
