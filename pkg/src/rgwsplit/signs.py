"""Bookkeeping of orientation signs for determinant-line identifications.

Lines are opaque symbols; a word is a multiset of symbols (tensor product).
A :class:`NamedIso` identifies two words with a declared sign depending on
``ell``, the number of conjugate node pairs of the domain. Chains compose only
when each target word equals the next source word.

Words are compared as sorted multisets. Reordering factors is treated as a
braiding of sign +1; all factors here are orientation lines of the index
spaces that appear in the comparison, and no other braiding sign is
introduced.
"""
from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType
from typing import Callable, Iterable, Mapping, Sequence

from .errors import WordMismatch

__all__ = [
    "Line",
    "LineWord",
    "NamedIso",
    "SignedIdentification",
    "register_isos",
    "compose",
    "main_chain",
    "comsign_chain",
    "replay_lemma_comsign",
    "CHAINS",
]


@dataclass(frozen=True, order=True)
class Line:
    """A determinant line ``det(kind[tag])``, optionally pulled back along the
    attaching map."""

    kind: str
    tag: str
    pulled_back: bool = False

    def pull(self) -> "Line":
        return Line(self.kind, self.tag, True)

    def __str__(self):
        s = f"{self.kind}[{self.tag}]"
        return f"Phi^*{s}" if self.pulled_back else s


class LineWord(tuple):
    """Tensor product of lines; equality is multiset equality."""

    def __new__(cls, factors: Iterable[Line] = ()):
        return super().__new__(cls, sorted(factors))

    def __add__(self, other):
        return LineWord(list(self) + list(other))

    def pull(self) -> "LineWord":
        return LineWord(f.pull() for f in self)

    def minus(self, other: "LineWord") -> "LineWord":
        rest = list(self)
        for f in other:
            rest.remove(f)
        return LineWord(rest)

    def __str__(self):
        return " (x) ".join(map(str, self)) if self else "1"


Sign = Callable[[int], int]


def _parity(ell: int) -> int:
    return -1 if ell % 2 else 1


def _plus(ell: int) -> int:
    return 1


@dataclass(frozen=True)
class NamedIso:
    name: str
    source: LineWord
    target: LineWord
    sign: Sign
    ref: str = ""

    def sign_at(self, ell: int) -> int:
        if ell < 0:
            raise ValueError("ell counts node pairs and must be non-negative")
        return self.sign(ell)

    def inverse(self) -> "NamedIso":
        return NamedIso(f"{self.name}^-1", self.target, self.source, self.sign, self.ref)

    def tensor(self, extra: Iterable[Line]) -> "NamedIso":
        """This identification tensored with the identity on ``extra``."""
        extra = LineWord(extra)
        if not extra:
            return self
        return NamedIso(
            f"{self.name} (x) id", LineWord(self.source + extra), LineWord(self.target + extra), self.sign, self.ref
        )


# lines on the moduli spaces over the nodal target and its normalization
DBAR_T0 = Line("dbar", "T_Sigma0")
DBAR_TN = Line("dbar", "T_normalization")
DBAR_C = Line("dbar", "C")
DM_NODAL = Line("T_DM", "chi, l(mu)")
DM_NORMAL = Line("T_DM", "chi+4l, l(mu)+2l")

# lines in the twisted-orientation comparison for a bundle W with twist L
DBAR_W = Line("dbar", "W")
DBAR_WN = Line("dbar", "W~")
DBAR_EDUAL = Line("dbar", "E^v")
DBAR_EDUAL_N = Line("dbar", "E~^v")
DBAR_CN2 = Line("dbar", "C^(n+2)")
DBAR_ETW = Line("dbar", "L+c*Lbar (complex via L)")
DBAR_ETW_N = Line("dbar", "L~+c*L~bar (complex via L~)")
DBAR_2L = Line("dbar", "2L (square)")
DBAR_2L_N = Line("dbar", "2L~ (square)")


def _iso(name, source, target, sign, ref) -> NamedIso:
    return NamedIso(name, LineWord(source), LineWord(target), sign, ref)


def register_isos() -> Mapping[str, NamedIso]:
    """Catalog of the identifications and their declared signs."""
    isos = [
        _iso("iso-DM-split", [DBAR_C.pull(), DM_NODAL.pull()], [DBAR_C, DM_NORMAL], _parity,
             "pullback of the Deligne-Mumford and trivial-bundle lines to the normalization"),
        _iso("iso-tangent-normalization", [DBAR_T0.pull(), DBAR_C.pull()], [DBAR_TN, DBAR_C], _parity,
             "normalization sequences for the relative tangent bundle and C"),
        _iso("iso-square-trivial", [DBAR_C.pull(), DBAR_C.pull()], [DBAR_C, DBAR_C], _plus,
             "two copies of the trivial-bundle sequence"),
        _iso("iso-twist", [DBAR_ETW.pull()], [DBAR_ETW_N], _parity,
             "normalization sequence for L + c*Lbar against the complex orientation from L"),
        _iso("iso-square-bundle", [DBAR_2L.pull()], [DBAR_2L_N], _plus,
             "normalization sequence for twice a bundle, square orientations"),
        _iso("iso-identification", [DBAR_W.pull(), DBAR_EDUAL.pull(), DBAR_CN2.pull()],
             [DBAR_WN, DBAR_EDUAL_N, DBAR_CN2], _plus,
             "pullback of the canonical identification W + E^v = C^(n+2)"),
    ]
    return MappingProxyType({iso.name: iso for iso in isos})


CATALOG = register_isos()


@dataclass(frozen=True)
class Step:
    name: str
    sign: int
    running: int

    def to_json(self) -> dict:
        return {"name": self.name, "sign": self.sign, "running": self.running}


@dataclass(frozen=True)
class SignedIdentification:
    sign: int
    source: LineWord
    target: LineWord
    steps: tuple[Step, ...]

    def reduced(self) -> tuple[LineWord, LineWord]:
        """Source and target with common factors cancelled."""
        common = []
        rest = list(self.target)
        for f in self.source:
            if f in rest:
                rest.remove(f)
                common.append(f)
        common = LineWord(common)
        return self.source.minus(common), self.target.minus(common)

    def to_json(self) -> dict:
        src, tgt = self.reduced()
        return {
            "steps": [s.to_json() for s in self.steps],
            "sign": self.sign,
            "source": str(self.source),
            "target": str(self.target),
            "reduced": {"source": str(src), "target": str(tgt)},
        }


def compose(chain: Sequence[NamedIso], ell: int) -> SignedIdentification:
    """Compose left to right; raises :class:`WordMismatch` at the first
    junction whose words differ."""
    if not chain:
        return SignedIdentification(1, LineWord(), LineWord(), ())
    for i, (a, b) in enumerate(zip(chain, chain[1:]), start=1):
        if a.target != b.source:
            raise WordMismatch(i, str(a.target), str(b.source))
    running = 1
    steps = []
    for iso in chain:
        s = iso.sign_at(ell)
        running *= s
        steps.append(Step(iso.name, s, running))
    return SignedIdentification(running, chain[0].source, chain[-1].target, tuple(steps))


def main_chain(catalog: Mapping[str, NamedIso] = CATALOG) -> list[NamedIso]:
    """DM split, tangent normalization, then the inverse of the squared
    trivial-bundle step, each tensored with identities.

    The composite identifies ``Phi^*(dbar[T_Sigma0] (x) T_DM[chi])`` with
    ``dbar[T_normalization] (x) T_DM[chi+4l]``, up to the common factor
    ``Phi^*dbar[C]^2`` on both sides.
    """
    return [
        catalog["iso-DM-split"].tensor([DBAR_T0.pull(), DBAR_C.pull()]),
        catalog["iso-tangent-normalization"].tensor([DBAR_C, DM_NORMAL]),
        catalog["iso-square-trivial"].inverse().tensor([DBAR_TN, DM_NORMAL]),
    ]


def comsign_chain(catalog: Mapping[str, NamedIso] = CATALOG) -> list[NamedIso]:
    """Square-bundle, identification and twist steps acting on disjoint factors."""
    square, ident, twist = (catalog[n] for n in ("iso-square-bundle", "iso-identification", "iso-twist"))
    return [
        square.tensor(list(ident.source) + list(twist.source)),
        ident.tensor(list(square.target) + list(twist.source)),
        twist.tensor(list(square.target) + list(ident.target)),
    ]


def replay_lemma_comsign(ell: int) -> int:
    return compose(comsign_chain(), ell).sign


CHAINS = {"main": main_chain, "comsign": comsign_chain}
