"""Finitely supported exact series in ``t^(1/2)`` and ``u``.

Exponents of ``t`` are stored doubled so half-integer powers stay integral.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterator, Mapping

from .jsonio import parse_rational, rational

__all__ = ["BiSeries"]


class BiSeries:
    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping[tuple[int, int], object] | None = None):
        clean = {}
        for (t2, u), c in (coeffs or {}).items():
            c = Fraction(c)
            if c:
                clean[int(t2), int(u)] = clean.get((int(t2), int(u)), 0) + c
        self._coeffs = {k: v for k, v in clean.items() if v}

    @classmethod
    def zero(cls) -> "BiSeries":
        return cls()

    @classmethod
    def monomial(cls, coeff, t2: int = 0, u: int = 0) -> "BiSeries":
        """``coeff * t^(t2/2) * u^u``."""
        return cls({(t2, u): coeff})

    def coefficient(self, t, u: int) -> Fraction:
        """Coefficient of ``t^t u^u``; ``t`` may be a half integer."""
        t2 = Fraction(t) * 2
        if t2.denominator != 1:
            return Fraction(0)
        return self._coeffs.get((int(t2), u), Fraction(0))

    def coefficient_doubled(self, t2: int, u: int) -> Fraction:
        return self._coeffs.get((t2, u), Fraction(0))

    def shift(self, t2: int = 0, u: int = 0) -> "BiSeries":
        """Multiply by ``t^(t2/2) * u^u``."""
        return BiSeries({(a + t2, b + u): c for (a, b), c in self._coeffs.items()})

    def terms(self) -> list[tuple[int, int, Fraction]]:
        return sorted((t2, u, c) for (t2, u), c in self._coeffs.items())

    def __iter__(self) -> Iterator[tuple[int, int, Fraction]]:
        return iter(self.terms())

    def __len__(self) -> int:
        return len(self._coeffs)

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __add__(self, other: "BiSeries") -> "BiSeries":
        if not isinstance(other, BiSeries):
            return NotImplemented
        out = dict(self._coeffs)
        for k, c in other._coeffs.items():
            out[k] = out.get(k, 0) + c
        return BiSeries(out)

    def __neg__(self) -> "BiSeries":
        return BiSeries({k: -c for k, c in self._coeffs.items()})

    def __sub__(self, other: "BiSeries") -> "BiSeries":
        if not isinstance(other, BiSeries):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other) -> "BiSeries":
        if isinstance(other, BiSeries):
            out: dict[tuple[int, int], Fraction] = {}
            for (a, b), c in self._coeffs.items():
                for (x, y), e in other._coeffs.items():
                    out[a + x, b + y] = out.get((a + x, b + y), 0) + c * e
            return BiSeries(out)
        if isinstance(other, (int, Fraction)):
            return BiSeries({k: c * other for k, c in self._coeffs.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, BiSeries):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(frozenset(self._coeffs.items()))

    def __repr__(self):
        if not self._coeffs:
            return "BiSeries(0)"
        return "BiSeries(" + " + ".join(
            f"{c}*t^({Fraction(t2, 2)})*u^{u}" for t2, u, c in self.terms()
        ) + ")"

    def to_json(self) -> dict:
        return {"terms": [{"t2": t2, "u": u, **rational(c)} for t2, u, c in self.terms()]}

    @classmethod
    def from_json(cls, obj) -> "BiSeries":
        return cls({(term["t2"], term["u"]): parse_rational(term) for term in obj["terms"]})
