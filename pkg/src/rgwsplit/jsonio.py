"""JSON encodings shared by tables, series and CLI reports."""
from __future__ import annotations

from fractions import Fraction

from .errors import InvalidProfile
from .partitions import Partition, Profile


def rational(value) -> dict:
    value = Fraction(value)
    return {"num": value.numerator, "den": value.denominator}


def parse_rational(obj) -> Fraction:
    try:
        num, den = obj["num"], obj.get("den", 1)
    except (TypeError, KeyError, AttributeError):
        raise ValueError(f"expected {{num, den}}, got {obj!r}") from None
    if not isinstance(num, int) or not isinstance(den, int) or den == 0:
        raise ValueError(f"bad rational {obj!r}")
    return Fraction(num, den)


def parse_partition(obj) -> Partition:
    if not isinstance(obj, list):
        raise InvalidProfile(f"partition must be a list of parts, got {obj!r}")
    return Partition(obj)


def parse_profile(degree: int, obj) -> Profile:
    if not isinstance(obj, list):
        raise InvalidProfile(f"profile must be a list of partitions, got {obj!r}")
    return Profile(degree, tuple(parse_partition(p) for p in obj))
