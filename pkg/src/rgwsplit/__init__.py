"""Exact combinatorics of the degeneration formula for real curve-counting invariants."""
from .characters import CharacterCache, CharacterTable, character, character_table
from .errors import EnumerationTooLarge, RGWSplitError
from .hurwitz import CoverCountQuery, count_by_characters, count_by_enumeration, doublet_real_count
from .partitions import Partition, Profile, aut_order, partitions_of, zeta
from .series import BiSeries
from .signs import compose, main_chain, replay_lemma_comsign
from .tqft import (
    InvariantTable,
    TargetCurve,
    series_assemble,
    split_invariant,
    split_series,
    vfc_coefficient_chain,
    virtual_dimension,
)

__version__ = "0.1.0"

__all__ = [
    "BiSeries",
    "CharacterCache",
    "CharacterTable",
    "CoverCountQuery",
    "EnumerationTooLarge",
    "InvariantTable",
    "Partition",
    "Profile",
    "RGWSplitError",
    "TargetCurve",
    "aut_order",
    "character",
    "character_table",
    "compose",
    "count_by_characters",
    "count_by_enumeration",
    "doublet_real_count",
    "main_chain",
    "partitions_of",
    "replay_lemma_comsign",
    "series_assemble",
    "split_invariant",
    "split_series",
    "vfc_coefficient_chain",
    "virtual_dimension",
    "zeta",
]
