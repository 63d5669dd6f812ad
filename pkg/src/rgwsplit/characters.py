"""Irreducible characters of S_d by the Murnaghan-Nakayama rule.

Shapes are handled through their beta-sets: removing a border strip of size
``k`` is moving one bead from position ``b`` to the empty position ``b - k``,
and the strip height is the number of beads strictly between the two.

Full tables can be persisted to disk (see :class:`CharacterCache`); the cache
is advisory and any unreadable or inconsistent file is ignored.
"""
from __future__ import annotations

import logging
import os
import struct
import tempfile
import threading
import zlib
from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial, prod
from pathlib import Path

from .errors import InvalidPair
from .partitions import Partition, partitions_of

__all__ = [
    "character",
    "dimension",
    "hook_length_dimension",
    "CharacterTable",
    "CharacterCache",
    "character_table",
    "default_cache_dir",
]

log = logging.getLogger(__name__)

CACHE_ENV = "RGWSPLIT_CACHE_DIR"


def _beta_set(shape: tuple[int, ...]) -> tuple[int, ...]:
    n = len(shape)
    return tuple(sorted(part + n - 1 - i for i, part in enumerate(shape)))


def _shape_from_beta(beta: list[int]) -> tuple[int, ...]:
    beta = sorted(beta, reverse=True)
    n = len(beta)
    return tuple(p for p in (b - (n - 1 - i) for i, b in enumerate(beta)) if p > 0)


def _remove_strips(shape: tuple[int, ...], k: int):
    """Yield ``(smaller_shape, height)`` for every border strip of size ``k``,
    beads taken in increasing position order."""
    beta = _beta_set(shape)
    occupied = set(beta)
    for b in beta:
        target = b - k
        if target < 0 or target in occupied:
            continue
        height = sum(1 for c in beta if target < c < b)
        rest = [c for c in beta if c != b] + [target]
        yield _shape_from_beta(rest), height


@lru_cache(maxsize=None)
def _mn(shape: tuple[int, ...], cycles: tuple[int, ...]) -> int:
    if not cycles:
        return 1 if not shape else 0
    k, rest = cycles[0], cycles[1:]
    total = 0
    for smaller, height in _remove_strips(shape, k):
        value = _mn(smaller, rest)
        total += -value if height % 2 else value
    return total


def character(rho: Partition, mu: Partition) -> int:
    """The irreducible character ``chi_rho`` evaluated on cycle type ``mu``."""
    if rho.size != mu.size:
        raise InvalidPair(f"{rho} and {mu} are partitions of different integers")
    return _mn(rho.parts, mu.parts)


def character_in_order(rho: Partition, cycles) -> int:
    """Murnaghan-Nakayama with the cycle lengths consumed in the given order.

    The value does not depend on the order; this entry point exists so that
    independence can be checked.
    """
    cycles = tuple(cycles)
    if rho.size != sum(cycles):
        raise InvalidPair(f"{rho} and cycle lengths {cycles} have different sizes")
    return _mn(rho.parts, cycles)


def dimension(rho: Partition) -> int:
    return character(rho, Partition.trivial(rho.size))


def hook_length_dimension(rho: Partition) -> int:
    """``d! / prod(hook lengths)``, computed directly from the Young diagram."""
    parts = rho.parts
    conj = [sum(1 for p in parts if p > j) for j in range(parts[0])] if parts else []
    hooks = prod(
        (parts[i] - j - 1) + (conj[j] - i - 1) + 1
        for i in range(len(parts))
        for j in range(parts[i])
    )
    return factorial(rho.size) // hooks


@dataclass
class CharacterTable:
    degree: int
    entries: dict[tuple[Partition, Partition], int] = field(repr=False)

    @classmethod
    def compute(cls, d: int) -> "CharacterTable":
        parts = partitions_of(d)
        return cls(d, {(rho, mu): character(rho, mu) for rho in parts for mu in parts})

    @property
    def partitions(self) -> tuple[Partition, ...]:
        return partitions_of(self.degree)

    def __getitem__(self, key: tuple[Partition, Partition]) -> int:
        rho, mu = key
        if rho.size != self.degree or mu.size != self.degree:
            raise InvalidPair(f"({rho}, {mu}) is not a pair of partitions of {self.degree}")
        return self.entries[rho, mu]

    def dimension(self, rho: Partition) -> int:
        return self[rho, Partition.trivial(self.degree)]

    def is_complete(self) -> bool:
        parts = self.partitions
        return all((rho, mu) in self.entries for rho in parts for mu in parts)


# on-disk cache
#
# file  := MAGIC u64(d) record*
# record:= u64(len(payload)) payload u32(crc32(payload))
# payload := u64(d) partition(rho) partition(mu) u64(nbytes) value
# partition := u64(n) u64(part)*n      (descending parts)
# value := signed little-endian two's complement, nbytes long
# all integers little-endian

_MAGIC = b"RGWCHR1\x00"
_U64 = struct.Struct("<Q")
_U32 = struct.Struct("<I")


def _encode_partition(lam: Partition) -> bytes:
    parts = lam.parts
    return _U64.pack(len(parts)) + b"".join(_U64.pack(p) for p in parts)


def _encode_record(d: int, rho: Partition, mu: Partition, value: int) -> bytes:
    nbytes = max(1, (value.bit_length() + 8) // 8)
    payload = (
        _U64.pack(d)
        + _encode_partition(rho)
        + _encode_partition(mu)
        + _U64.pack(nbytes)
        + value.to_bytes(nbytes, "little", signed=True)
    )
    return _U64.pack(len(payload)) + payload + _U32.pack(zlib.crc32(payload))


class _Reader:
    def __init__(self, buf: bytes):
        self.buf = buf
        self.pos = 0

    def take(self, n: int) -> bytes:
        if self.pos + n > len(self.buf):
            raise ValueError("truncated")
        out = self.buf[self.pos:self.pos + n]
        self.pos += n
        return out

    def u64(self) -> int:
        return _U64.unpack(self.take(8))[0]

    def partition(self, d: int) -> Partition:
        n = self.u64()
        if n > d:
            raise ValueError("partition too long")
        parts = [self.u64() for _ in range(n)]
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError("parts not descending")
        lam = Partition(parts)
        if lam.size != d:
            raise ValueError("partition of wrong size")
        return lam

    def done(self) -> bool:
        return self.pos == len(self.buf)


def _decode(buf: bytes, d: int) -> dict[tuple[Partition, Partition], int]:
    r = _Reader(buf)
    if r.take(len(_MAGIC)) != _MAGIC or r.u64() != d:
        raise ValueError("bad header")
    entries = {}
    while not r.done():
        length = r.u64()
        payload = r.take(length)
        (crc,) = _U32.unpack(r.take(4))
        if zlib.crc32(payload) != crc:
            raise ValueError("checksum mismatch")
        p = _Reader(payload)
        if p.u64() != d:
            raise ValueError("record degree mismatch")
        rho = p.partition(d)
        mu = p.partition(d)
        nbytes = p.u64()
        value = int.from_bytes(p.take(nbytes), "little", signed=True)
        if not p.done():
            raise ValueError("trailing bytes in record")
        entries[rho, mu] = value
    return entries


def default_cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or Path.home() / ".cache"
    return Path(base) / "rgwsplit"


class CharacterCache:
    """Per-degree binary files of complete character tables."""

    def __init__(self, directory: str | os.PathLike | None = None):
        self.directory = Path(directory) if directory is not None else default_cache_dir()

    def path(self, d: int) -> Path:
        return self.directory / f"characters-d{d}.bin"

    def load(self, d: int) -> CharacterTable | None:
        path = self.path(d)
        try:
            buf = path.read_bytes()
        except OSError:
            return None
        try:
            table = CharacterTable(d, _decode(buf, d))
        except (ValueError, struct.error) as exc:
            log.warning("ignoring corrupt character cache %s: %s", path, exc)
            return None
        if len(table.entries) != len(partitions_of(d)) ** 2 or not table.is_complete():
            log.warning("ignoring incomplete character cache %s", path)
            return None
        return table

    def save(self, table: CharacterTable) -> None:
        d = table.degree
        parts = partitions_of(d)
        blob = bytearray(_MAGIC + _U64.pack(d))
        for rho in parts:
            for mu in parts:
                blob += _encode_record(d, rho, mu, table.entries[rho, mu])
        try:
            self.directory.mkdir(parents=True, exist_ok=True)
            fd, tmp = tempfile.mkstemp(dir=self.directory, prefix=".characters-")
            with os.fdopen(fd, "wb") as fh:
                fh.write(blob)
            os.replace(tmp, self.path(d))
        except OSError as exc:
            log.warning("could not write character cache for d=%d: %s", d, exc)


_tables: dict[int, CharacterTable] = {}
_tables_lock = threading.Lock()


def character_table(d: int, cache: CharacterCache | None = None) -> CharacterTable:
    """The full table for S_d, built once per process.

    With a cache, a valid file is used instead of recomputing and a freshly
    computed table is written back.
    """
    with _tables_lock:
        table = _tables.get(d)
        if table is not None:
            return table
        table = cache.load(d) if cache is not None else None
        if table is None:
            table = CharacterTable.compute(d)
            if cache is not None:
                cache.save(table)
        _tables[d] = table
        return table


def clear_memory() -> None:
    """Drop in-process memo tables (the disk cache is untouched)."""
    with _tables_lock:
        _tables.clear()
    _mn.cache_clear()
