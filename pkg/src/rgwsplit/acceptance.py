"""The acceptance battery: nine exact checks over the whole engine.

Each check returns a :class:`CriterionResult`; :func:`run_suite` runs them in
order and by default stops at the first failure.
"""
from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial, prod
from typing import Callable, Iterator

from .characters import CharacterCache, character_table
from .hurwitz import CoverCountQuery, count_by_characters, count_by_enumeration
from .instantiation import SplitCheck, insertion_family, split_check
from .partitions import Partition, Profile, aut_order, class_size, partitions_of, zeta
from .signs import CATALOG, compose, main_chain, replay_lemma_comsign
from .tqft import TargetCurve, dimension_invariance_check, vfc_coefficient_chain

__all__ = ["CriterionResult", "CRITERIA", "run_suite", "oracle_queries"]

FUZZ_SEED = 20240611


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    passed: bool
    checked: int
    detail: str
    elapsed_ms: int = 0

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.number}. {self.name}: {self.detail}"

    def to_json(self, timing: bool = True) -> dict:
        out = {
            "criterion": self.number,
            "name": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "detail": self.detail,
        }
        if timing:
            out["elapsed_ms"] = self.elapsed_ms
        return out


class _Tally:
    """Counts checks and remembers the first failure."""

    def __init__(self):
        self.checked = 0
        self.failure: str | None = None

    def check(self, ok: bool, what) -> bool:
        self.checked += 1
        if not ok and self.failure is None:
            self.failure = what() if callable(what) else str(what)
        return ok

    def result(self, number: int, name: str, summary: str) -> CriterionResult:
        passed = self.failure is None
        return CriterionResult(number, name, passed, self.checked, summary if passed else self.failure)


@lru_cache(maxsize=None)
def _split_checks(cache_dir: str | None) -> tuple[SplitCheck, ...]:
    cache = CharacterCache(cache_dir) if cache_dir else None
    out = []
    for g in (1, 2):
        method = "both" if g == 1 else "char"
        for d in range(1, 5):
            for profile in insertion_family(d):
                out.append(split_check(d, g, profile, method=method, normalization_method="both", cache=cache))
    return tuple(out)


def splitting_identity(cache_dir=None) -> CriterionResult:
    t = _Tally()
    for c in _split_checks(cache_dir):
        t.check(c.match, lambda c=c: f"d={c.degree} g={c.half_genus} mu={c.profile.to_list()}: "
                f"{c.smoothing} != {c.split}")
    return t.result(1, "splitting identity", f"{t.checked} cases, d<=4, half-genus 1 and 2")


def worked_examples(cache_dir=None) -> CriterionResult:
    t = _Tally()
    expected = {
        2: (2, [(Partition([2]), Fraction(1, 2)), (Partition([1, 1]), Fraction(1, 2))]),
        3: (3, [(Partition([3]), Fraction(1, 3)), (Partition([2, 1]), Fraction(1, 2)),
                (Partition([1, 1, 1]), Fraction(1, 6))]),
    }
    for d, (total, terms) in expected.items():
        c = split_check(d, 1, Profile(d), method="both", normalization_method="both")
        t.check(c.smoothing == total, f"d={d}: smoothing {c.smoothing} != {total}")
        t.check(c.split == total, f"d={d}: split {c.split} != {total}")
        got = [(term.partition, term.value) for term in c.terms]
        t.check(got == terms, f"d={d}: terms {got} != {terms}")
        t.check(sum(zeta(lam) * v for lam, v in terms) == total, f"d={d}: weighted sum")
    return t.result(2, "worked examples", "2 = 2*(1/2) + 2*(1/2); 3 = 3*(1/3) + 2*(1/2) + 6*(1/6)")


def oracle_queries() -> Iterator[CoverCountQuery]:
    """Every ordered profile tuple with d <= 4, genus <= 1 and at most 3 points."""
    for g in (0, 1):
        for d in range(1, 5):
            parts = partitions_of(d)
            for r in range(4):
                for tup in itertools.product(parts, repeat=r):
                    yield CoverCountQuery(d, g, Profile(d, tup))


def oracle_equivalence(cache_dir=None) -> CriterionResult:
    cache = CharacterCache(cache_dir) if cache_dir else None
    t = _Tally()
    for q in oracle_queries():
        a, b = count_by_enumeration(q), count_by_characters(q, cache)
        t.check(a == b, lambda q=q, a=a, b=b: f"{q.to_json()}: enumeration {a} != characters {b}")
    ok = t.checked >= 200
    t.check(ok, f"only {t.checked - 1} queries")
    return t.result(3, "oracle equivalence", f"{t.checked - 1} queries, d<=4, g<=1, r<=3")


def coefficient_chain(cache_dir=None) -> CriterionResult:
    t = _Tally()
    for d in range(1, 13):
        for lam in partitions_of(d):
            c = vfc_coefficient_chain(lam)
            root = prod(k ** m for k, m in lam.mult.items())
            t.check(c.holds and c.deg_q0 == root and c.c_split * c.deg_phi == Fraction(zeta(lam), aut_order(lam)),
                    f"{lam}: {c}")
    return t.result(4, "coefficient chain", f"{t.checked} partitions, d<=12")


def _fuzz_profile(rng: random.Random, d: int) -> Profile:
    parts = partitions_of(d)
    return Profile(d, tuple(rng.choice(parts) for _ in range(rng.randint(0, 3))))


def dimension_invariance(cache_dir=None) -> CriterionResult:
    rng = random.Random(FUZZ_SEED)
    t = _Tally()
    for d in range(1, 9):
        for lam in partitions_of(d):
            for _ in range(8):
                profile = _fuzz_profile(rng, d)
                chi = rng.randint(-40, 40)
                g = rng.randint(1, 4)
                kind = rng.choice(["doublet", "connected"])
                target = (TargetCurve.doublet(g, len(profile)) if kind == "doublet"
                          else TargetCurve.connected(2 * g, len(profile)))
                if rng.random() < 0.5:
                    target = target.pinch()
                t.check(dimension_invariance_check(d, chi, profile, lam, target),
                        f"d={d} chi={chi} lam={lam} mu={profile.to_list()} target={target}")
    return t.result(5, "dimension invariance", f"{t.checked} cases, all partitions d<=8, seed {FUZZ_SEED}")


def series_identity(cache_dir=None) -> CriterionResult:
    t = _Tally()
    for c in _split_checks(cache_dir):
        t.check(c.series_match, lambda c=c: f"d={c.degree} g={c.half_genus} mu={c.profile.to_list()}: "
                f"{c.series_smoothing} != {c.series_split}")
    return t.result(6, "series identity", f"{t.checked} series, same tables as the splitting identity")


def sign_ledger(cache_dir=None) -> CriterionResult:
    t = _Tally()
    chain = main_chain()
    for ell in range(33):
        s = compose(chain, ell).sign
        t.check(s == 1, f"main chain at ell={ell} has sign {s}")
        c = replay_lemma_comsign(ell)
        t.check(c == (-1) ** ell, f"comsign at ell={ell} is {c}")
        n = CATALOG["iso-tangent-normalization"].sign_at(ell)
        t.check(n == c, f"tangent normalization sign {n} != comsign {c} at ell={ell}")
        for iso in CATALOG.values():
            back = compose([iso, iso.inverse()], ell)
            t.check(back.sign == 1 and back.source == back.target, f"{iso.name} with its inverse at ell={ell}")
    return t.result(7, "sign ledger", "main chain +1 and comsign (-1)^ell for ell=0..32")


def character_orthogonality(cache_dir=None) -> CriterionResult:
    cache = CharacterCache(cache_dir) if cache_dir else None
    t = _Tally()
    for d in range(1, 9):
        table = character_table(d, cache)
        parts = table.partitions
        t.check(sum(table.dimension(rho) ** 2 for rho in parts) == factorial(d), f"d={d}: sum of dim^2")
        for mu in parts:
            t.check(zeta(mu) * class_size(mu) == factorial(d), f"{mu}: zeta is not the centralizer order")
            for nu in parts:
                s = sum(table[rho, mu] * table[rho, nu] for rho in parts)
                want = zeta(mu) if mu == nu else 0
                t.check(s == want, f"columns {mu}, {nu}: {s} != {want}")
    return t.result(8, "character orthogonality", f"{t.checked} identities, d<=8")


def ordered_factor(cache_dir=None) -> CriterionResult:
    cache = CharacterCache(cache_dir) if cache_dir else None
    t = _Tally()
    for q in oracle_queries():
        oq = CoverCountQuery(q.degree, q.genus, q.profiles, ordered_contacts=True)
        aut = q.profiles.aut_order()
        a, b = count_by_enumeration(oq), count_by_enumeration(q)
        t.check(a == aut * b, lambda q=q: f"{q.to_json()}: enumeration {a} != {aut}*{b}")
        a, b = count_by_characters(oq, cache), count_by_characters(q, cache)
        t.check(a == aut * b, lambda q=q: f"{q.to_json()}: characters {a} != {aut}*{b}")
    return t.result(9, "ordered contact factor", f"{t.checked} comparisons on the oracle queries")


CRITERIA: tuple[Callable[..., CriterionResult], ...] = (
    splitting_identity,
    worked_examples,
    oracle_equivalence,
    coefficient_chain,
    dimension_invariance,
    series_identity,
    sign_ledger,
    character_orthogonality,
    ordered_factor,
)


def run_criterion(number: int, cache_dir: str | None = None) -> CriterionResult:
    start = time.perf_counter()
    res = CRITERIA[number - 1](cache_dir)
    ms = int((time.perf_counter() - start) * 1000)
    return CriterionResult(res.number, res.name, res.passed, res.checked, res.detail, ms)


def run_suite(cache_dir: str | None = None, fail_fast: bool = True) -> list[CriterionResult]:
    results = []
    for n in range(1, len(CRITERIA) + 1):
        res = run_criterion(n, cache_dir)
        results.append(res)
        if fail_fast and not res.passed:
            break
    return results
