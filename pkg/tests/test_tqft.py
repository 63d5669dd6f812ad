import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from rgwsplit.errors import IncompleteInput, InconsistentTable, InvalidProfile, WrongTarget
from rgwsplit.hurwitz import CoverCountQuery, count_by_characters, count_by_enumeration
from rgwsplit.instantiation import doublet_level0_table, insertion_family, split_check
from rgwsplit.partitions import Partition, Profile, aut_order, partitions_of, zeta
from rgwsplit.series import BiSeries
from rgwsplit.tqft import (
    InvariantTable,
    TargetCurve,
    dimension_invariance_check,
    pair_invariant,
    series_assemble,
    split_invariant,
    split_series,
    split_table,
    vfc_coefficient_chain,
    virtual_dimension,
)

P = Partition


# target bookkeeping

def test_euler_characteristics():
    assert TargetCurve.doublet(0).euler_char() == 4
    assert TargetCurve.doublet(1).euler_char() == 0
    assert TargetCurve.connected(2).euler_char() == -2
    nodal = TargetCurve.doublet(2).pinch()
    assert nodal == TargetCurve.doublet(1, node_pairs=1)
    assert nodal.euler_char() == TargetCurve.doublet(2).euler_char()
    assert nodal.normalization().euler_char() == nodal.euler_char() + 4
    assert nodal.normalization().marked_pairs == 2
    assert nodal.smoothing() == TargetCurve.doublet(2)


def test_connected_pinch_drops_genus_by_two():
    t = TargetCurve.connected(3, real_locus="one circle")
    assert t.pinch().genus == 1 and t.pinch().euler_char() == t.euler_char()
    assert t.pinch().smoothing() == t


def test_bad_targets():
    with pytest.raises(WrongTarget):
        TargetCurve.doublet(0).pinch()
    with pytest.raises(WrongTarget):
        TargetCurve.doublet(1).normalization()
    with pytest.raises(ValueError):
        TargetCurve("torus", 1)
    with pytest.raises(ValueError):
        TargetCurve.doublet(-1)
    with pytest.raises(ValueError):
        TargetCurve("doublet", 1, real_locus="circle")


def test_target_json_round_trip():
    for t in [TargetCurve.doublet(2, 1, 1, 3), TargetCurve.connected(1, "two circles", 2)]:
        assert TargetCurve.from_json(t.to_json()) == t


# virtual dimension

def test_virtual_dimension_examples():
    assert virtual_dimension(1, 4, TargetCurve.doublet(0), Profile(1)) == 0
    assert virtual_dimension(2, -2, TargetCurve.connected(1, marked_pairs=1), Profile.of(2, [[2]])) == 0
    t = TargetCurve.connected(0, marked_pairs=2)
    assert virtual_dimension(3, 0, t, Profile.of(3, [[1, 1, 1], [1, 1, 1]])) == 6
    with pytest.raises(InvalidProfile):
        virtual_dimension(3, 0, t, Profile.of(2, [[2], [2]]))


def test_dimension_invariance_examples():
    t = TargetCurve.doublet(1)
    assert dimension_invariance_check(1, 0, Profile(1), P([1]), t)
    assert dimension_invariance_check(5, -8, Profile(5), P([5]), t)
    assert dimension_invariance_check(5, -8, Profile(5), P([5]), t.pinch())
    with pytest.raises(InvalidProfile):
        dimension_invariance_check(3, 0, Profile(3), P([2]), t)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 10), st.integers(-60, 60), st.integers(1, 5), st.booleans(), st.data())
def test_dimension_invariance_fuzz(d, chi, genus, doublet, data):
    parts = partitions_of(d)
    prof = Profile(d, tuple(data.draw(st.lists(st.sampled_from(parts), max_size=4))))
    lam = data.draw(st.sampled_from(parts))
    target = TargetCurve.doublet(genus, len(prof)) if doublet else TargetCurve.connected(2 * genus, None, len(prof))
    assert dimension_invariance_check(d, chi, prof, lam, target)


# coefficient chain

def test_coefficient_chain_examples():
    c = vfc_coefficient_chain(P([4]))
    assert (c.c_split, c.deg_phi, c.deg_q0) == (4, 1, 4)
    c = vfc_coefficient_chain(P([1, 1]))
    assert (c.c_split, c.deg_phi, c.deg_q0) == (Fraction(1, 2), 2, 1)
    c = vfc_coefficient_chain(P([2, 1]))
    assert (c.c_split, c.deg_phi, c.deg_q0) == (2, 1, 2)
    assert c.holds


@pytest.mark.parametrize("d", range(1, 13))
def test_coefficient_chain_is_product_of_parts(d):
    for lam in partitions_of(d):
        c = vfc_coefficient_chain(lam)
        assert c.holds
        prod_parts = 1
        for k in lam.parts:
            prod_parts *= k
        assert c.deg_q0 == prod_parts
        assert c.deg_phi == aut_order(lam)


# tables

def _table(target, *entries):
    t = InvariantTable(target)
    for d, chi, prof, v in entries:
        t.add(d, chi, prof, v)
    return t


def test_table_validation():
    t = InvariantTable(TargetCurve.doublet(1, marked_pairs=1))
    with pytest.raises(InvalidProfile):
        t.add(2, 0, Profile(2), 1)
    with pytest.raises(InvalidProfile):
        t.add(2, 0, Profile.of(3, [[3]]), 1)
    with pytest.raises(InconsistentTable):
        t.add(2, -1, Profile.of(2, [[2]]), 1)
    t.add(2, -1, Profile.of(2, [[2]]), 0)
    t.add(2, -2, Profile.of(2, [[2]]), Fraction(1, 3))
    t.add(2, -2, Profile.of(2, [[2]]), Fraction(1, 3))
    with pytest.raises(InconsistentTable):
        t.add(2, -2, Profile.of(2, [[2]]), 1)
    assert len(t) == 1 and t.get(2, 0, Profile.of(2, [[2]])) == 0
    t.freeze()
    with pytest.raises(InconsistentTable):
        t.add(2, -6, Profile.of(2, [[2]]), 1)


def test_table_json_round_trip(tmp_path):
    t = doublet_level0_table(TargetCurve.doublet(1, marked_pairs=1), insertion_family(3)[1:])
    path = tmp_path / "t.json"
    t.save(path)
    back = InvariantTable.load(path)
    assert back.values == t.values and back.target == t.target and back.frozen
    obj = t.to_json()
    assert set(obj) == {"target", "ordered", "entries"}
    assert set(obj["entries"][0]) == {"d", "chi", "profile", "num", "den"}


# splitting rule

def normalization_table(d, genus, profiles, method="char"):
    smooth = TargetCurve.doublet(genus, marked_pairs=len(profiles[0]) if profiles else 0)
    normal = smooth.pinch().normalization()
    ext = [p.extend(lam, lam) for p in profiles for lam in partitions_of(d)]
    return smooth, doublet_level0_table(normal, ext, method)


def test_worked_example_degree_two():
    smooth, table = normalization_table(2, 1, [Profile(2)], "enum")
    assert table.get(2, 4, Profile.of(2, [[2], [2]])) == Fraction(1, 2)
    assert table.get(2, 8, Profile.of(2, [[1, 1], [1, 1]])) == Fraction(1, 2)
    assert split_invariant(table, 2, 0, Profile(2), smooth) == 2 == count_by_enumeration(CoverCountQuery.of(2, 1))


def test_worked_example_degree_three():
    smooth, table = normalization_table(3, 1, [Profile(3)], "enum")
    terms = [table.get(3, 4 * lam.length, Profile(3, (lam, lam))) for lam in partitions_of(3)]
    assert terms == [Fraction(1, 3), Fraction(1, 2), Fraction(1, 6)]
    assert split_invariant(table, 3, 0, Profile(3), smooth) == 3


def test_single_partition_degree_one():
    smooth, table = normalization_table(1, 1, [Profile(1)])
    assert split_invariant(table, 1, 0, Profile(1)) == table.get(1, 4, Profile.of(1, [[1], [1]])) == 1


@pytest.mark.parametrize("genus", [1, 2])
@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_splitting_for_all_short_profiles(d, genus):
    for r in range(3):
        for prof in itertools.product(partitions_of(d), repeat=r):
            c = split_check(d, genus, Profile(d, prof))
            assert c.match and c.series_match, (d, genus, prof)


def test_split_table_reconstructs_smoothing():
    profiles = [Profile(3, (mu,)) for mu in partitions_of(3)]
    smooth, table = normalization_table(3, 2, profiles)
    rebuilt = split_table(table, smooth)
    for mu in profiles:
        q = CoverCountQuery(3, 2, mu)
        assert rebuilt.get(3, 2 * q.chi_forced, mu) == count_by_characters(q)


def test_split_rejects_wrong_target():
    smooth, table = normalization_table(2, 1, [Profile(2)])
    with pytest.raises(WrongTarget):
        split_invariant(table, 2, 0, Profile.of(2, [[2]]))
    with pytest.raises(WrongTarget):
        split_invariant(table, 2, 0, Profile(2), TargetCurve.doublet(2))
    with pytest.raises(WrongTarget):
        split_table(InvariantTable(TargetCurve.doublet(1)), TargetCurve.doublet(1))
    with pytest.raises(InvalidProfile):
        split_invariant(table, 3, 0, Profile(2))


def test_missing_entries_read_zero():
    table = InvariantTable(TargetCurve.doublet(0, marked_pairs=2))
    assert split_invariant(table, 3, 0, Profile(3)) == 0


# series

def test_series_assemble_examples():
    assert series_assemble(InvariantTable(TargetCurve.doublet(0)), 1, Profile(1)) == BiSeries()
    t = _table(TargetCurve.doublet(0), (1, 4, Profile(1), Fraction(5, 7)))
    assert series_assemble(t, 1, Profile(1)) == BiSeries.monomial(Fraction(5, 7), t2=-4)
    shifted = series_assemble(t, 1, Profile(1), level=2)
    assert shifted == BiSeries.monomial(Fraction(5, 7), t2=-8, u=2)


def test_series_coefficient_round_trip():
    smooth = TargetCurve.doublet(1)
    t = doublet_level0_table(smooth, [Profile(2)])
    s = series_assemble(t, 2, Profile(2))
    for d, chi, prof, v in t.entries():
        b = virtual_dimension(d, chi, smooth, prof)
        u = b // 2
        assert s.coefficient(Fraction(-chi, 2) - u, u) == v
    assert s.coefficient(0, 0) == 2


def test_series_rejects_odd_dimension():
    t = InvariantTable(TargetCurve.doublet(1, marked_pairs=1))
    t.values[2, -1, Profile.of(2, [[2]])] = Fraction(1)
    with pytest.raises(InconsistentTable):
        series_assemble(t, 2, Profile.of(2, [[2]]))


def test_split_series_examples():
    s = BiSeries({(2, 0): 3, (-4, 1): Fraction(1, 2)})
    assert split_series({P([1]): s}) == s.shift(t2=4)
    zero = {lam: BiSeries() for lam in partitions_of(4)}
    assert split_series(zero, 4) == BiSeries()
    with pytest.raises(IncompleteInput):
        split_series({P([2]): s}, 2)
    with pytest.raises(IncompleteInput):
        split_series({P([2]): s, P([1]): s})


def test_split_series_degree_two_coefficient():
    c = split_check(2, 1, Profile(2))
    assert c.series_split.coefficient(0, 0) == 2
    weights = {lam: zeta(lam) for lam in partitions_of(2)}
    assert weights == {P([2]): 2, P([1, 1]): 2}


# ordered contacts

def test_pair_invariant_divides_automorphisms():
    target = TargetCurve.doublet(0, marked_pairs=2)
    ordered = InvariantTable(target, ordered_contacts=True)
    unordered = InvariantTable(target)
    for prof in itertools.product(partitions_of(3), repeat=2):
        q = CoverCountQuery(3, 0, Profile(3, prof))
        oq = CoverCountQuery(3, 0, Profile(3, prof), ordered_contacts=True)
        ordered.add(3, 2 * q.chi_forced, q.profiles, count_by_enumeration(oq))
        unordered.add(3, 2 * q.chi_forced, q.profiles, count_by_characters(q))
    for d, chi, prof, v in unordered.entries():
        assert pair_invariant(ordered, d, chi, prof) == v
    p = Profile.of(3, [[2, 1], [2, 1]])
    assert pair_invariant(ordered, 3, 8, p) == Fraction(1, 2)
    with pytest.raises(InconsistentTable):
        pair_invariant(unordered, 3, 8, p)
    with pytest.raises(WrongTarget):
        split_invariant(ordered, 3, 0, Profile(3))


def test_pair_invariant_trivial_profile_divisor():
    table = InvariantTable(TargetCurve.doublet(0, marked_pairs=2), ordered_contacts=True)
    p = Profile.of(3, [[1, 1, 1], [1, 1, 1]])
    table.add(3, 12, p, 36)
    assert pair_invariant(table, 3, 12, p) == 1


# instantiation guards

def test_level0_table_needs_smooth_doublet():
    with pytest.raises(WrongTarget):
        doublet_level0_table(TargetCurve.connected(1), [Profile(2)])
    with pytest.raises(WrongTarget):
        doublet_level0_table(TargetCurve.doublet(1, node_pairs=1), [Profile(2)])
    with pytest.raises(WrongTarget):
        split_check(2, 0, Profile(2))


def test_insertion_family():
    assert [p.to_list() for p in insertion_family(1)] == [[], [[1]]]
    assert [p.to_list() for p in insertion_family(2)] == [[], [[2]]]
    assert [p.to_list() for p in insertion_family(4)] == [[], [[2, 1, 1]], [[4]]]


def test_split_check_json_is_exact():
    obj = split_check(3, 1, Profile(3)).to_json()
    assert obj["smoothing"] == {"num": 3, "den": 1}
    assert [t["value"] for t in obj["terms"]] == [{"num": 1, "den": 3}, {"num": 1, "den": 2}, {"num": 1, "den": 6}]
    assert obj["match"] and obj["series_match"]
