"""Concrete level-0 invariants of doublet targets, built from the cover counts.

For a doublet whose halves have genus ``g`` and ``r`` marked pairs, the table
entry at ``(d, 2 * chi_half, mu)`` is the cover count of one half. Every entry
sits at virtual dimension 0, where the integrand is 1.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .characters import CharacterCache
from .errors import OracleDisagreement, WrongTarget
from .hurwitz import DEFAULT_BUDGET, CoverCountQuery, count_by_characters, count_by_enumeration
from .jsonio import rational
from .partitions import Partition, Profile, partitions_of, zeta
from .series import BiSeries
from .tqft import DOUBLET, InvariantTable, TargetCurve, series_assemble, split_invariant, split_series

__all__ = [
    "METHODS",
    "half_count",
    "doublet_level0_table",
    "SplitTerm",
    "SplitCheck",
    "split_check",
    "insertion_family",
]

METHODS = ("enum", "char", "both")


def half_count(
    q: CoverCountQuery,
    method: str = "char",
    cache: CharacterCache | None = None,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
) -> Fraction:
    if method == "char":
        return count_by_characters(q, cache)
    if method == "enum":
        return count_by_enumeration(q, budget, workers)
    if method == "both":
        by_enum = count_by_enumeration(q, budget, workers)
        by_char = count_by_characters(q, cache)
        if by_enum != by_char:
            raise OracleDisagreement(f"{q}: enumeration {by_enum} != characters {by_char}")
        return by_char
    raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")


def doublet_level0_table(
    target: TargetCurve,
    entries: Iterable[Profile],
    method: str = "char",
    cache: CharacterCache | None = None,
    budget: int = DEFAULT_BUDGET,
) -> InvariantTable:
    """Table of level-0 invariants of a smooth doublet at the given profiles."""
    if target.kind != DOUBLET or target.node_pairs or target.level:
        raise WrongTarget(f"level-0 values are only available for smooth doublets at level 0, got {target}")
    table = InvariantTable(target)
    for profile in entries:
        q = CoverCountQuery(profile.degree, target.genus, profile)
        table.add(profile.degree, 2 * q.chi_forced, profile, half_count(q, method, cache, budget))
    return table.freeze()


def insertion_family(d: int) -> list[Profile]:
    """Profiles ``(), ((2,1^(d-2))), ((d))`` without repeats."""
    out = [Profile(d)]
    if d >= 2:
        out.append(Profile.of(d, [[2] + [1] * (d - 2)]))
    out.append(Profile.of(d, [[d]]))
    unique = []
    for p in out:
        if p not in unique:
            unique.append(p)
    return unique


@dataclass(frozen=True)
class SplitTerm:
    partition: Partition
    zeta: int
    chi: int
    value: Fraction

    def to_json(self) -> dict:
        return {
            "lambda": self.partition.to_list(),
            "zeta": self.zeta,
            "chi": self.chi,
            "value": rational(self.value),
        }


@dataclass(frozen=True)
class SplitCheck:
    """Both sides of the splitting identity for one ``(d, g, mu)``, plus the
    generating-series version of the same comparison."""

    degree: int
    half_genus: int
    profile: Profile
    chi: int
    smoothing: Fraction
    terms: tuple[SplitTerm, ...]
    split: Fraction
    series_smoothing: BiSeries
    series_split: BiSeries
    method: str

    @property
    def match(self) -> bool:
        return self.smoothing == self.split

    @property
    def series_match(self) -> bool:
        return self.series_smoothing == self.series_split

    def to_json(self) -> dict:
        return {
            "d": self.degree,
            "half_genus": self.half_genus,
            "profile": self.profile.to_list(),
            "chi": self.chi,
            "method": self.method,
            "smoothing": rational(self.smoothing),
            "split": rational(self.split),
            "terms": [t.to_json() for t in self.terms],
            "match": self.match,
            "series_match": self.series_match,
        }


def split_check(
    d: int,
    half_genus: int,
    profile: Profile,
    method: str = "char",
    normalization_method: str | None = None,
    cache: CharacterCache | None = None,
    budget: int = DEFAULT_BUDGET,
) -> SplitCheck:
    """Compare the smoothing's invariant with the sum over the normalization.

    The smoothing is the doublet with halves of genus ``half_genus``; pinching
    one conjugate pair of circles leaves halves of genus ``half_genus - 1``
    with the two node preimages as new marked pairs.
    """
    if half_genus < 1:
        raise WrongTarget("the halves must have positive genus to carry a non-separating node")
    r = len(profile)
    smooth = TargetCurve.doublet(half_genus, marked_pairs=r)
    normal = smooth.pinch().normalization()
    smooth_table = doublet_level0_table(smooth, [profile], method, cache, budget)
    normal_profiles = [profile.extend(lam, lam) for lam in partitions_of(d)]
    normal_table = doublet_level0_table(
        normal, normal_profiles, normalization_method or method, cache, budget
    )
    chi = 2 * CoverCountQuery(d, half_genus, profile).chi_forced
    terms = tuple(
        SplitTerm(lam, zeta(lam), chi + 4 * lam.length, normal_table.get(d, chi + 4 * lam.length, p))
        for lam, p in zip(partitions_of(d), normal_profiles)
    )
    split = split_invariant(normal_table, d, chi, profile, smoothing=smooth)
    per_lambda = {
        lam: series_assemble(normal_table, d, p) for lam, p in zip(partitions_of(d), normal_profiles)
    }
    return SplitCheck(
        degree=d,
        half_genus=half_genus,
        profile=profile,
        chi=chi,
        smoothing=smooth_table.get(d, chi, profile),
        terms=terms,
        split=split,
        series_smoothing=series_assemble(smooth_table, d, profile),
        series_split=split_series(per_lambda, d),
        method=method,
    )
