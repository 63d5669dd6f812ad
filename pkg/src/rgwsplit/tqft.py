"""Formula layer of the degeneration rule for local real GW invariants.

Invariants are kept in :class:`InvariantTable`, keyed by topological data only
(degree, domain Euler characteristic, ramification profile), so a table serves
every smooth deformation of its target. The splitting rule

    I(Sigma_s)_{d, chi, mu} = sum_{lam |- d} zeta(lam) * I(normalization)_{d, chi + 4 len(lam), mu lam lam}

and its generating-series form are implemented by :func:`split_invariant` and
:func:`split_series`.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from fractions import Fraction
from os import PathLike
from typing import Iterator, Mapping

from .errors import (
    IncompleteInput,
    InconsistentTable,
    InvalidProfile,
    WrongTarget,
)
from .jsonio import parse_profile, parse_rational, rational
from .partitions import Partition, Profile, aut_order, partitions_of, zeta
from .series import BiSeries

__all__ = [
    "TargetCurve",
    "InvariantTable",
    "VFCChain",
    "virtual_dimension",
    "split_invariant",
    "split_table",
    "split_series",
    "series_assemble",
    "vfc_coefficient_chain",
    "pair_invariant",
    "dimension_invariance_check",
]

DOUBLET = "doublet"
CONNECTED = "connected"


@dataclass(frozen=True)
class TargetCurve:
    """Topological type of a symmetric target curve.

    ``genus`` is the genus of the normalization: of each half for a doublet,
    of the whole curve for a connected target. Every conjugate node pair is
    non-separating, so smoothing it adds 1 to the genus of each half of a
    doublet and 2 to a connected curve; the Euler characteristic of the
    smoothing is what :meth:`euler_char` returns.
    """

    kind: str
    genus: int
    marked_pairs: int = 0
    node_pairs: int = 0
    level: int = 0
    real_locus: str | None = None

    def __post_init__(self):
        if self.kind not in (DOUBLET, CONNECTED):
            raise ValueError(f"unknown target kind {self.kind!r}")
        for name in ("genus", "marked_pairs", "node_pairs"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 0:
                raise ValueError(f"{name} must be a non-negative integer, got {value!r}")
        if self.kind == DOUBLET and self.real_locus is not None:
            raise ValueError("a doublet has empty real locus")

    @classmethod
    def doublet(cls, genus: int, marked_pairs: int = 0, node_pairs: int = 0, level: int = 0):
        return cls(DOUBLET, genus, marked_pairs, node_pairs, level)

    @classmethod
    def connected(cls, genus: int, real_locus: str | None = None, marked_pairs: int = 0,
                  node_pairs: int = 0, level: int = 0):
        return cls(CONNECTED, genus, marked_pairs, node_pairs, level, real_locus)

    def euler_char(self) -> int:
        base = 2 * (2 - 2 * self.genus) if self.kind == DOUBLET else 2 - 2 * self.genus
        return base - 4 * self.node_pairs

    def normalization(self) -> "TargetCurve":
        """Resolve one conjugate node pair into two new conjugate marked pairs."""
        if self.node_pairs < 1:
            raise WrongTarget("target has no conjugate node pair to resolve")
        return replace(self, node_pairs=self.node_pairs - 1, marked_pairs=self.marked_pairs + 2)

    def pinch(self) -> "TargetCurve":
        """Degenerate a smooth fiber by pinching one pair of conjugate circles."""
        drop = 1 if self.kind == DOUBLET else 2
        if self.genus < drop:
            raise WrongTarget(f"cannot pinch a non-separating circle pair on {self}")
        return replace(self, genus=self.genus - drop, node_pairs=self.node_pairs + 1)

    def smoothing(self) -> "TargetCurve":
        per_pair = 1 if self.kind == DOUBLET else 2
        return replace(self, genus=self.genus + per_pair * self.node_pairs, node_pairs=0)

    def to_json(self) -> dict:
        out = {
            "kind": self.kind,
            "genus": self.genus,
            "marked_pairs": self.marked_pairs,
            "node_pairs": self.node_pairs,
            "level": self.level,
        }
        if self.real_locus is not None:
            out["real_locus"] = self.real_locus
        return out

    @classmethod
    def from_json(cls, obj: Mapping) -> "TargetCurve":
        return cls(
            obj["kind"],
            obj["genus"],
            obj.get("marked_pairs", 0),
            obj.get("node_pairs", 0),
            obj.get("level", 0),
            obj.get("real_locus"),
        )


def _b(d: int, chi: int, euler: int, profile: Profile) -> int:
    return d * euler - chi - 2 * profile.delta()


def virtual_dimension(d: int, chi: int, target: TargetCurve, profile: Profile) -> int:
    """``b = d * chi(target) - chi - 2 * delta(profile)``."""
    if profile.degree != d:
        raise InvalidProfile(f"profile has degree {profile.degree}, expected {d}")
    return _b(d, chi, target.euler_char(), profile)


Key = tuple[int, int, Profile]


@dataclass
class InvariantTable:
    """Finitely supported map ``(d, chi, profile) -> Fraction``; absent keys read 0.

    ``ordered_contacts`` marks tables whose values count covers with ordered
    contact points (see :func:`pair_invariant`).
    """

    target: TargetCurve
    values: dict[Key, Fraction] = field(default_factory=dict)
    ordered_contacts: bool = False
    frozen: bool = False

    def __post_init__(self):
        items, self.values = dict(self.values), {}
        frozen, self.frozen = self.frozen, False
        for (d, chi, profile), value in items.items():
            self.add(d, chi, profile, value)
        self.frozen = frozen

    def add(self, d: int, chi: int, profile: Profile, value) -> None:
        if self.frozen:
            raise InconsistentTable("table is frozen")
        if profile.degree != d:
            raise InvalidProfile(f"profile has degree {profile.degree}, key has degree {d}")
        if len(profile) != self.target.marked_pairs:
            raise InvalidProfile(
                f"profile has {len(profile)} entries, target has {self.target.marked_pairs} marked pairs"
            )
        value = Fraction(value)
        key = (d, chi, profile)
        if value and virtual_dimension(d, chi, self.target, profile) % 2:
            raise InconsistentTable(f"nonzero value at odd virtual dimension for {d}, {chi}, {profile}")
        old = self.values.get(key, Fraction(0))
        if key in self.values and old != value:
            raise InconsistentTable(f"conflicting values {old} and {value} for {d}, {chi}, {profile}")
        if value:
            self.values[key] = value

    def freeze(self) -> "InvariantTable":
        self.frozen = True
        return self

    def get(self, d: int, chi: int, profile: Profile) -> Fraction:
        return self.values.get((d, chi, profile), Fraction(0))

    def __len__(self) -> int:
        return len(self.values)

    def entries(self) -> Iterator[tuple[int, int, Profile, Fraction]]:
        for (d, chi, profile) in sorted(self.values, key=lambda k: (k[0], k[1], k[2].to_list())):
            yield d, chi, profile, self.values[d, chi, profile]

    def degrees(self) -> list[int]:
        return sorted({d for d, _, _ in self.values})

    def profiles(self, d: int) -> list[Profile]:
        return sorted({p for dd, _, p in self.values if dd == d}, key=Profile.to_list)

    def to_json(self) -> dict:
        return {
            "target": self.target.to_json(),
            "ordered": self.ordered_contacts,
            "entries": [
                {"d": d, "chi": chi, "profile": profile.to_list(), **rational(value)}
                for d, chi, profile, value in self.entries()
            ],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "InvariantTable":
        table = cls(TargetCurve.from_json(obj["target"]), ordered_contacts=bool(obj.get("ordered", False)))
        for entry in obj["entries"]:
            d = entry["d"]
            table.add(d, entry["chi"], parse_profile(d, entry["profile"]), parse_rational(entry))
        return table.freeze()

    def save(self, path: str | PathLike) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_json(), fh, indent=2)
            fh.write("\n")

    @classmethod
    def load(cls, path: str | PathLike) -> "InvariantTable":
        with open(path, encoding="utf-8") as fh:
            return cls.from_json(json.load(fh))


def _check_normalization_table(table: InvariantTable, r: int, smoothing: TargetCurve | None) -> None:
    if table.ordered_contacts:
        raise WrongTarget("splitting uses unordered invariants; divide out contact orderings first")
    target = table.target
    if target.marked_pairs != r + 2:
        raise WrongTarget(
            f"normalization must carry {r + 2} marked pairs for a profile of length {r}, "
            f"table target has {target.marked_pairs}"
        )
    if smoothing is not None:
        if (
            target.euler_char() != smoothing.euler_char() + 4
            or target.marked_pairs != smoothing.marked_pairs + 2
            or target.level != smoothing.level
        ):
            raise WrongTarget(f"{target} is not the normalization of a one-node-pair degeneration of {smoothing}")


def split_invariant(
    table: InvariantTable,
    d: int,
    chi: int,
    profile: Profile,
    smoothing: TargetCurve | None = None,
) -> Fraction:
    """Invariant of the smoothing computed from the normalization's table."""
    if profile.degree != d:
        raise InvalidProfile(f"profile has degree {profile.degree}, expected {d}")
    _check_normalization_table(table, len(profile), smoothing)
    return sum(
        (zeta(lam) * table.get(d, chi + 4 * lam.length, profile.extend(lam, lam)) for lam in partitions_of(d)),
        Fraction(0),
    )


def split_table(table: InvariantTable, smoothing: TargetCurve) -> InvariantTable:
    """Every smoothing invariant that the normalization table determines."""
    if table.target.marked_pairs < 2:
        raise WrongTarget("a normalization carries at least the two node marked pairs")
    _check_normalization_table(table, table.target.marked_pairs - 2, smoothing)
    keys = set()
    for d, chi, profile, _ in table.entries():
        *mu, a, b = profile.parts
        if a == b:
            keys.add((d, chi - 4 * a.length, Profile(d, tuple(mu))))
    out = InvariantTable(smoothing)
    for d, chi, profile in sorted(keys, key=lambda k: (k[0], k[1], k[2].to_list())):
        out.add(d, chi, profile, split_invariant(table, d, chi, profile, smoothing))
    return out.freeze()


def series_assemble(
    table: InvariantTable, d: int, profile: Profile, level: int | None = None
) -> BiSeries:
    """``sum_chi I_{d, chi} t^(-chi/2) (u/t)^(b/2 + d k)`` for one profile.

    ``level`` overrides the line-bundle degree ``k`` of the table's target.
    """
    k = table.target.level if level is None else level
    out = {}
    for dd, chi, prof, value in table.entries():
        if dd != d or prof != profile:
            continue
        b = virtual_dimension(d, chi, table.target, profile)
        if b % 2:
            raise InconsistentTable(f"nonzero value at odd virtual dimension b={b} (chi={chi})")
        u = b // 2 + d * k
        out[-chi - 2 * u, u] = value
    return BiSeries(out)


def split_series(series_table: Mapping[Partition, BiSeries], d: int | None = None) -> BiSeries:
    """``sum_lam zeta(lam) t^(2 len(lam)) S_lam`` over all partitions of ``d``."""
    if d is None:
        sizes = {lam.size for lam in series_table}
        if len(sizes) != 1:
            raise IncompleteInput("cannot infer the degree from the series table")
        (d,) = sizes
    total = BiSeries()
    for lam in partitions_of(d):
        if lam not in series_table:
            raise IncompleteInput(f"no series for partition {lam}")
        total = total + series_table[lam].shift(t2=4 * lam.length) * zeta(lam)
    return total


@dataclass(frozen=True)
class VFCChain:
    partition: Partition
    c_split: Fraction
    deg_phi: int
    deg_q0: int

    @property
    def holds(self) -> bool:
        return self.c_split * self.deg_phi == self.deg_q0

    def to_json(self) -> dict:
        return {
            "lambda": self.partition.to_list(),
            "c_split": rational(self.c_split),
            "deg_phi": self.deg_phi,
            "deg_q0": self.deg_q0,
            "holds": self.holds,
        }


def vfc_coefficient_chain(lam: Partition) -> VFCChain:
    """Coefficient of the attached class together with the degrees of the
    attaching map (``|Aut lam|``) and of the root-choice cover (``zeta/|Aut|``)."""
    aut = aut_order(lam)
    z = zeta(lam)
    return VFCChain(lam, Fraction(z, aut * aut), aut, z // aut)


def pair_invariant(table: InvariantTable, d: int, chi: int, profile: Profile) -> Fraction:
    """Unordered invariant from a table of ordered-contact counts."""
    if not table.ordered_contacts:
        raise InconsistentTable("table does not hold ordered-contact values")
    if profile.degree != d:
        raise InvalidProfile(f"profile has degree {profile.degree}, expected {d}")
    return table.get(d, chi, profile) / profile.aut_order()


def dimension_invariance_check(
    d: int, chi: int, profile: Profile, lam: Partition, target: TargetCurve
) -> bool:
    """Whether the smoothing and the ``lam`` summand of the normalization have the
    same virtual dimension. ``target`` is either the smooth fiber or the nodal
    fiber; the normalization is derived from it."""
    if lam.size != d:
        raise InvalidProfile(f"{lam} is not a partition of {d}")
    nodal = target if target.node_pairs else target.pinch()
    normal = nodal.normalization()
    return virtual_dimension(d, chi, target, profile) == virtual_dimension(
        d, chi + 4 * lam.length, normal, profile.extend(lam, lam)
    )
