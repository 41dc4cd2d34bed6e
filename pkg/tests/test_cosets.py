"""Shift/reversal orbits of row selections and the coset catalog."""

import math

import numpy as np
import pytest

from dftframe import (
    FrameSpec,
    IndexSet,
    InvalidArgumentError,
    ResourceLimitError,
    canonical_leader,
    count_bounds,
    enumerate_cosets,
    generator,
    gram_spectrum,
    reversal,
    shift,
)


def _rows(n, *indices):
    return IndexSet(n=n, indices=tuple(indices))


# ============================================================
# Shift and reversal
# ============================================================

def test_shift_examples():
    assert shift(_rows(7, 1, 2, 4), 1).indices == (2, 3, 5)
    assert shift(_rows(7, 5, 6, 7), 1).indices == (1, 6, 7)
    assert shift(_rows(7, 1, 2, 4), 7).indices == (1, 2, 4)
    assert shift(_rows(7, 1, 2, 4), -1).indices == (1, 3, 7)


def test_shift_composes_additively():
    s = _rows(9, 2, 3, 7)
    assert shift(shift(s, 4), 3) == shift(s, 7)


def test_reversal_examples():
    assert reversal(_rows(7, 1, 2, 4)).indices == (4, 6, 7)
    assert reversal(_rows(6, 1, 3, 5)).indices == (2, 4, 6)
    assert reversal(_rows(5, 1)).indices == (5,)


def test_reversal_is_an_involution():
    s = _rows(11, 1, 4, 5, 9)
    assert reversal(reversal(s)) == s


def test_reversal_preserves_spectrum():
    gen = generator(FrameSpec(n=7, k=3))
    a = gram_spectrum(gen, _rows(7, 1, 2, 4)).eigenvalues
    b = gram_spectrum(gen, reversal(_rows(7, 1, 2, 4))).eigenvalues
    np.testing.assert_allclose(a, b, atol=1e-9)


# ============================================================
# Canonical leaders
# ============================================================

def test_leader_picks_compact_representative():
    assert canonical_leader(_rows(7, 3, 4, 6)).indices == (1, 2, 4)
    assert canonical_leader(_rows(7, 1, 2, 3)).indices == (1, 2, 3)


def test_leader_is_orbit_constant_and_idempotent():
    base = _rows(7, 1, 3, 4)
    lead = canonical_leader(base)
    for c in range(7):
        assert canonical_leader(shift(base, c)) == lead
    assert canonical_leader(lead) == lead


def test_leader_merged_covers_reversal():
    # the reversal of {1,2,4} lands in the same merged coset
    lead = canonical_leader(_rows(7, 1, 2, 4), merge_reversal=True)
    assert canonical_leader(reversal(_rows(7, 1, 2, 4)), merge_reversal=True) == lead


def test_leader_prefers_small_span_over_lex_order():
    # the {1,3,4} orbit contains {1,2,6}, which is lexicographically
    # smaller but spans further; the compact rule keeps {1,3,4}
    assert canonical_leader(_rows(7, 1, 2, 6)).indices == (1, 3, 4)


# ============================================================
# Catalog for n=7, k=3
# ============================================================

def test_seven_three_catalog_order_and_summaries():
    cat = enumerate_cosets(7, 3)
    assert cat.count == 5
    assert not cat.merged_reversals
    leaders = [c.leader.indices for c in cat.cosets]
    assert leaders == [(1, 2, 3), (1, 2, 4), (1, 3, 4), (1, 2, 5), (1, 3, 5)]
    assert [c.weight for c in cat.cosets] == [4, 6, 6, 7, 7]
    assert [c.distance_cycle for c in cat.cosets] == [
        (1, 1, 2), (1, 2, 3), (1, 3, 2), (1, 3, 3), (2, 2, 3)]
    assert [c.distance_signature for c in cat.cosets] == [
        (1, 1, 2), (1, 2, 3), (1, 2, 3), (1, 3, 3), (2, 2, 3)]
    assert all(c.size == 7 for c in cat.cosets)


def test_seven_three_members_walk_the_shift_orbit():
    cat = enumerate_cosets(7, 3)
    by_leader = {c.leader.indices: c for c in cat.cosets}
    assert [m.indices for m in by_leader[(1, 3, 4)].members] == [
        (1, 3, 4), (2, 4, 5), (3, 5, 6), (4, 6, 7), (1, 5, 7), (1, 2, 6), (2, 3, 7)]
    assert [m.indices for m in by_leader[(1, 2, 3)].members] == [
        (1, 2, 3), (2, 3, 4), (3, 4, 5), (4, 5, 6), (5, 6, 7), (1, 6, 7), (1, 2, 7)]


def test_seven_three_spectra_match_known_values():
    cat = enumerate_cosets(7, 3)
    golden = {
        (1, 2, 3): (2.1558, 0.8150, 0.0292),
        (1, 2, 4): (1.7539, 1.1133, 0.1328),
        (1, 3, 4): (1.7539, 1.1133, 0.1328),
        (1, 2, 5): (1.9066, 0.8424, 0.2510),
        (1, 3, 5): (1.2673, 1.1601, 0.5726),
    }
    for c in cat.cosets:
        np.testing.assert_allclose(c.spectrum.eigenvalues,
                                   golden[c.leader.indices], atol=5e-4)


def test_seven_three_merging_reversals_joins_twins():
    cat = enumerate_cosets(7, 3, merge_reversal=True)
    assert cat.count == 4
    sizes = sorted(c.size for c in cat.cosets)
    assert sizes == [7, 7, 7, 14]
    merged = next(c for c in cat.cosets if c.size == 14)
    assert merged.leader.indices == (1, 2, 4)
    as_sets = {m.indices for m in merged.members}
    assert (1, 3, 4) in as_sets


def test_spectrum_is_constant_across_each_coset():
    gen = generator(FrameSpec(n=8, k=3, variant="ComplexBCH"))
    cat = enumerate_cosets(8, 3, merge_reversal=True)
    for c in cat.cosets:
        ref = np.array(c.spectrum.eigenvalues)
        for m in c.members:
            np.testing.assert_allclose(
                np.array(gram_spectrum(gen, m).eigenvalues), ref, atol=1e-9)


# ============================================================
# Counting
# ============================================================

def test_member_totals_cover_all_subsets():
    for n, k in [(6, 3), (7, 3), (8, 4), (9, 2)]:
        cat = enumerate_cosets(n, k)
        assert sum(c.size for c in cat.cosets) == math.comb(n, k)


def test_full_window_orbits_collapse_to_one():
    for n in (5, 6, 7):
        cat = enumerate_cosets(n, n - 1)
        assert cat.count == 1
        assert cat.cosets[0].size == n


def test_six_three_merged_catalog():
    cat = enumerate_cosets(6, 3, merge_reversal=True)
    assert cat.count == 3
    sizes = sorted(c.size for c in cat.cosets)
    assert sizes == [2, 6, 12]


def test_ten_five_counts_and_spectral_classes():
    cat = enumerate_cosets(10, 5, merge_reversal=True)
    assert cat.count == 16
    assert cat.spectral_class_count == 13
    assert sorted(i for cls in cat.spectral_classes for i in cls) == list(range(16))
    lower, upper = count_bounds(10, 5)
    assert lower < cat.count <= math.ceil(upper)


def test_count_bounds_values():
    assert count_bounds(7, 3) == (35 / 14, 5.0)
    lower, upper = count_bounds(6, 3)
    assert lower == pytest.approx(20 / 12)
    assert upper == pytest.approx(20 / 6)


def test_enumeration_refuses_oversize_problems():
    with pytest.raises(ResourceLimitError):
        enumerate_cosets(25, 3)
    with pytest.raises(InvalidArgumentError):
        enumerate_cosets(5, 6)


def test_catalog_csv_rows_format():
    rows = enumerate_cosets(7, 3).to_csv_rows()
    assert rows[0]["leader"] == "1 2 3"
    assert rows[0]["weight"] == 4
    assert rows[0]["members"] == 7
    assert rows[0]["distance_cycle"] == "1 1 2"
    assert len(rows[0]["eigenvalues"].split()) == 3


def test_catalog_json_round_trip_keys():
    doc = enumerate_cosets(6, 3, merge_reversal=True).to_json()
    assert doc["count"] == 3 and doc["merged_reversals"] is True
    assert doc["spectral_class_count"] == len(doc["spectral_classes"])
    assert all({"leader", "members", "distance_signature", "distance_cycle",
                "weight", "spectrum"} <= set(c) for c in doc["cosets"])
