"""Two independent counts of possibly disconnected branched covers of a genus-g
curve with prescribed ramification over r points.

``count_by_enumeration`` walks monodromy tuples
``(a_1, b_1, ..., a_g, b_g, s_1, ..., s_r)`` in S_d with
``[a_1, b_1] ... [a_g, b_g] s_1 ... s_r = 1`` and ``s_j`` of cycle type
``mu^j``; ``count_by_characters`` evaluates the Frobenius formula. Both weight
covers by ``1/|Aut|``, i.e. divide the tuple count by ``d!``.
"""
from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial, prod

from .characters import CharacterCache, character_table
from .errors import EnumerationTooLarge, InvalidDegree, InvalidProfile
from .partitions import Partition, Profile, class_size

__all__ = [
    "DEFAULT_BUDGET",
    "CoverCountQuery",
    "RealCount",
    "count_by_enumeration",
    "count_by_characters",
    "doublet_real_count",
    "enumeration_work",
]

DEFAULT_BUDGET = 10**9


@dataclass(frozen=True)
class CoverCountQuery:
    degree: int
    genus: int
    profiles: Profile
    ordered_contacts: bool = False

    def __post_init__(self):
        if isinstance(self.degree, bool) or not isinstance(self.degree, int) or self.degree < 1:
            raise InvalidDegree(f"degree must be a positive integer, got {self.degree!r}")
        if isinstance(self.genus, bool) or not isinstance(self.genus, int) or self.genus < 0:
            raise ValueError(f"genus must be a non-negative integer, got {self.genus!r}")
        if self.profiles.degree != self.degree:
            raise InvalidProfile(
                f"profile has degree {self.profiles.degree}, query has degree {self.degree}"
            )

    @classmethod
    def of(cls, degree, genus, profiles=(), ordered_contacts=False) -> "CoverCountQuery":
        return cls(degree, genus, Profile.of(degree, profiles), ordered_contacts)

    @property
    def chi_forced(self) -> int:
        """Euler characteristic of the cover's domain, by Riemann-Hurwitz."""
        return self.degree * (2 - 2 * self.genus) - self.profiles.delta()

    def contact_factor(self) -> int:
        return self.profiles.aut_order() if self.ordered_contacts else 1

    def to_json(self) -> dict:
        return {
            "d": self.degree,
            "genus": self.genus,
            "profiles": self.profiles.to_list(),
            "ordered": self.ordered_contacts,
        }


class _Group:
    """S_d with elements indexed by position in ``itertools.permutations``."""

    def __init__(self, d: int):
        perms = list(itertools.permutations(range(d)))
        index = {p: i for i, p in enumerate(perms)}
        self.order = len(perms)
        self.identity = index[tuple(range(d))]
        # mul[i][j] is p_i after p_j
        self.mul = _Rows(perms, index)
        if self.order <= _FULL_TABLE_ORDER:
            self.mul = [self.mul[i] for i in range(self.order)]
        self.inv = [index[_inverse(p)] for p in perms]
        self.cycle_type = [_cycle_type(p) for p in perms]
        self.members: dict[Partition, list[int]] = {}
        for i, lam in enumerate(self.cycle_type):
            self.members.setdefault(lam, []).append(i)
        self._perms = perms
        self._index = index
        self._commutators = None

    @property
    def commutators(self) -> list[int]:
        """One entry per ordered pair ``(a, b)``: the commutator ``a b a^-1 b^-1``."""
        if self._commutators is None:
            perms, index = self._perms, self._index
            out = []
            for a in perms:
                ai = _inverse(a)
                for b in perms:
                    bi = _inverse(b)
                    out.append(index[tuple(a[b[ai[bi[x]]]] for x in range(len(a)))])
            self._commutators = out
        return self._commutators


_FULL_TABLE_ORDER = 720


class _Rows:
    """Multiplication table rows built on first use."""

    def __init__(self, perms, index):
        self._perms = perms
        self._index = index
        self._rows: dict[int, list[int]] = {}

    def __getitem__(self, i: int) -> list[int]:
        row = self._rows.get(i)
        if row is None:
            p, index = self._perms[i], self._index
            row = [index[tuple(p[x] for x in q)] for q in self._perms]
            self._rows[i] = row
        return row


def _inverse(p: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def _cycle_type(p: tuple[int, ...]) -> Partition:
    seen = [False] * len(p)
    lengths = []
    for start in range(len(p)):
        if seen[start]:
            continue
        n, x = 0, start
        while not seen[x]:
            seen[x] = True
            x = p[x]
            n += 1
        lengths.append(n)
    return Partition(lengths)


@lru_cache(maxsize=None)
def _group(d: int) -> _Group:
    return _Group(d)


def enumeration_work(q: CoverCountQuery) -> int:
    """Number of tuple extensions the enumeration performs for ``q``."""
    n = factorial(q.degree)
    inner = prod(class_size(mu) for mu in q.profiles.parts[:-1])
    return n ** (2 * q.genus) * inner


def _levels(G: _Group, genus: int, free: tuple[Partition, ...]) -> list[list[int]]:
    return [G.commutators] * genus + [G.members[mu] for mu in free]


def _count_from(G: _Group, levels, start: int, acc: int, last: Partition | None) -> int:
    mul = G.mul
    if start == len(levels):
        if last is None:
            return 1 if acc == G.identity else 0
        return 1 if G.cycle_type[G.inv[acc]] == last else 0
    if start == len(levels) - 1:
        row = mul[acc]
        if last is None:
            ident = G.identity
            return sum(1 for x in levels[start] if row[x] == ident)
        inv, ctype = G.inv, G.cycle_type
        return sum(1 for x in levels[start] if ctype[inv[row[x]]] == last)
    total = 0
    row = mul[acc]
    for x in levels[start]:
        total += _count_from(G, levels, start + 1, row[x], last)
    return total


def _count_chunk(args) -> int:
    d, genus, free, last, chunk = args
    G = _group(d)
    levels = _levels(G, genus, free)
    return sum(_count_from(G, levels, 1, G.mul[G.identity][x], last) for x in chunk)


def _tuple_count(d: int, genus: int, profile: tuple[Partition, ...], workers: int) -> int:
    G = _group(d)
    free, last = (profile[:-1], profile[-1]) if profile else ((), None)
    levels = _levels(G, genus, free)
    if workers <= 1 or not levels:
        return _count_from(G, levels, 0, G.identity, last)
    outer = levels[0]
    size = max(1, -(-len(outer) // (4 * workers)))
    chunks = [outer[i:i + size] for i in range(0, len(outer), size)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = pool.map(_count_chunk, [(d, genus, free, last, c) for c in chunks])
        return sum(parts)


def count_by_enumeration(
    q: CoverCountQuery, budget: int = DEFAULT_BUDGET, workers: int = 1
) -> Fraction:
    """Brute-force cover count.

    Raises :class:`EnumerationTooLarge` before doing any work when the tuple
    enumeration would exceed ``budget`` extensions.
    """
    if budget < 1:
        raise ValueError("budget must be at least 1")
    work = enumeration_work(q)
    if work > budget:
        raise EnumerationTooLarge(work, budget)
    tuples = _tuple_count(q.degree, q.genus, q.profiles.parts, workers)
    return Fraction(tuples, factorial(q.degree)) * q.contact_factor()


def count_by_characters(q: CoverCountQuery, cache: CharacterCache | None = None) -> Fraction:
    """Frobenius formula
    ``sum_rho (d!/dim rho)^(2g-2) prod_j |C_mu^j| chi_rho(mu^j) / dim rho``."""
    d = q.degree
    table = character_table(d, cache)
    n = factorial(d)
    total = Fraction(0)
    for rho in table.partitions:
        dim = table.dimension(rho)
        term = Fraction(n, dim) ** (2 * q.genus - 2)
        for mu in q.profiles:
            term *= Fraction(class_size(mu) * table[rho, mu], dim)
        total += term
    return total * q.contact_factor()


@dataclass(frozen=True)
class RealCount:
    """Real invariant of a doublet target read off from one half."""

    value: Fraction
    chi: int
    profile: Profile


def doublet_real_count(q: CoverCountQuery, cache: CharacterCache | None = None) -> RealCount:
    """Count of real maps to a doublet whose positive half is described by ``q``.

    A real map to two conjugate copies of a curve is determined by its
    restriction to one copy, so the value is the complex count of that half;
    the domain is doubled, so its Euler characteristic is ``2 * chi_forced``.
    This identification is a modeling choice for concrete level-0 values.
    """
    return RealCount(count_by_characters(q, cache), 2 * q.chi_forced, q.profiles)
