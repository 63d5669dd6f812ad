"""Integer partitions in multiplicity encoding, ramification profiles, and the
two partition coefficients used throughout the splitting formulas.

A partition is stored as its multiplicities ``{k: m_k}``; the descending part
list is a derived view and is the serialized form (``[3, 1, 1]``).
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from math import factorial, prod
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import InvalidDegree, InvalidProfile

__all__ = [
    "Partition",
    "Profile",
    "aut_order",
    "zeta",
    "class_size",
    "partitions_of",
]


class Partition:
    """An integer partition, immutable and hashable.

    >>> lam = Partition([1, 2, 1])
    >>> lam.parts, lam.size, lam.length
    ((2, 1, 1), 4, 3)
    """

    __slots__ = ("_mult", "_size", "_length")

    def __init__(self, parts: Iterable[int] = ()):
        counts = Counter()
        for k in parts:
            if isinstance(k, bool) or not isinstance(k, int) or k < 1:
                raise InvalidProfile(f"partition parts must be positive integers, got {k!r}")
            counts[k] += 1
        self._set(counts)

    def _set(self, counts: Mapping[int, int]) -> None:
        self._mult = tuple(sorted((k, m) for k, m in counts.items() if m))
        self._size = sum(k * m for k, m in self._mult)
        self._length = sum(m for _, m in self._mult)

    @classmethod
    def from_mult(cls, mult: Mapping[int, int]) -> "Partition":
        """Build from a multiplicity map; zero multiplicities are dropped."""
        for k, m in mult.items():
            if isinstance(k, bool) or not isinstance(k, int) or k < 1:
                raise InvalidProfile(f"part sizes must be positive integers, got {k!r}")
            if isinstance(m, bool) or not isinstance(m, int) or m < 0:
                raise InvalidProfile(f"multiplicity of {k} must be a non-negative integer, got {m!r}")
        obj = cls.__new__(cls)
        obj._set(mult)
        return obj

    @classmethod
    def one_part(cls, d: int) -> "Partition":
        return cls((d,))

    @classmethod
    def trivial(cls, d: int) -> "Partition":
        """The partition ``(1^d)``."""
        return cls.from_mult({1: d})

    @property
    def mult(self) -> dict[int, int]:
        return dict(self._mult)

    def multiplicity(self, k: int) -> int:
        for part, m in self._mult:
            if part == k:
                return m
        return 0

    @property
    def parts(self) -> tuple[int, ...]:
        return tuple(k for k, m in reversed(self._mult) for _ in range(m))

    @property
    def size(self) -> int:
        return self._size

    @property
    def length(self) -> int:
        return self._length

    def to_list(self) -> list[int]:
        return list(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __len__(self) -> int:
        return self._length

    def __eq__(self, other):
        if not isinstance(other, Partition):
            return NotImplemented
        return self._mult == other._mult

    def __hash__(self):
        return hash(self._mult)

    def __lt__(self, other: "Partition") -> bool:
        # reverse-lexicographic enumeration order: larger part lists come first
        return self.parts > other.parts

    def __repr__(self):
        return f"Partition({list(self.parts)})"

    def __str__(self):
        return "(" + ",".join(map(str, self.parts)) + ")"


def aut_order(lam: Partition) -> int:
    """Order of the automorphism group of ``lam``: the product of ``m_k!``."""
    return prod(factorial(m) for _, m in lam._mult)


def zeta(lam: Partition) -> int:
    """The splitting coefficient ``prod_k m_k! * k**m_k``.

    This equals the order of the centralizer in S_d of a permutation of cycle
    type ``lam``.
    """
    return prod(factorial(m) * k**m for k, m in lam._mult)


def class_size(lam: Partition) -> int:
    """Number of permutations in S_|lam| with cycle type ``lam``."""
    return factorial(lam.size) // zeta(lam)


@lru_cache(maxsize=None)
def _partitions(d: int, largest: int) -> tuple[tuple[int, ...], ...]:
    if d == 0:
        return ((),)
    out = []
    for head in range(min(d, largest), 0, -1):
        for tail in _partitions(d - head, head):
            out.append((head,) + tail)
    return tuple(out)


@lru_cache(maxsize=None)
def _partitions_of(d: int) -> tuple[Partition, ...]:
    return tuple(Partition(p) for p in _partitions(d, d))


def partitions_of(d: int) -> tuple[Partition, ...]:
    """All partitions of ``d`` in reverse-lexicographic order of their
    descending part lists, e.g. ``(4), (3,1), (2,2), (2,1,1), (1,1,1,1)``."""
    if isinstance(d, bool) or not isinstance(d, int) or d < 1:
        raise InvalidDegree(f"degree must be a positive integer, got {d!r}")
    return _partitions_of(d)


@dataclass(frozen=True)
class Profile:
    """An ordered tuple of partitions of a common degree, one per marked pair."""

    degree: int
    parts: tuple[Partition, ...] = ()

    def __post_init__(self):
        if isinstance(self.degree, bool) or not isinstance(self.degree, int) or self.degree < 1:
            raise InvalidDegree(f"degree must be a positive integer, got {self.degree!r}")
        parts = tuple(self.parts)
        object.__setattr__(self, "parts", parts)
        for mu in parts:
            if not isinstance(mu, Partition):
                raise InvalidProfile(f"profile entries must be Partition, got {mu!r}")
            if mu.size != self.degree:
                raise InvalidProfile(f"{mu} is not a partition of {self.degree}")

    @classmethod
    def of(cls, degree: int, parts: Sequence[Sequence[int] | Partition] = ()) -> "Profile":
        return cls(degree, tuple(p if isinstance(p, Partition) else Partition(p) for p in parts))

    def delta(self) -> int:
        """Total ramification ``sum_i (d - len(mu^i))``."""
        return sum(self.degree - mu.length for mu in self.parts)

    def aut_order(self) -> int:
        return prod(aut_order(mu) for mu in self.parts)

    def extend(self, *extra: Partition) -> "Profile":
        return Profile(self.degree, self.parts + tuple(extra))

    def to_list(self) -> list[list[int]]:
        return [mu.to_list() for mu in self.parts]

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[Partition]:
        return iter(self.parts)

    def __str__(self):
        return "(" + ",".join(str(mu) for mu in self.parts) + ")"
