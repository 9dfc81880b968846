from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

import oracles
from conftest import EXAMPLE, texts
from attractors.bounds import (
    BoundsReport,
    bounds_report,
    distinct_kmers,
    kmer_counts,
    lc_and_bound,
    lc_terms,
    lmax_bounds,
)
from attractors.errors import BoundViolated, InvalidAttractor, ParameterOutOfRange
from attractors.textcore import AttractorSet, Text, build_index, smallest_attractor_bruteforce


def T(s):
    t = Text.from_str(s)
    return t, build_index(t)


def test_example_kmers():
    t, idx = T(EXAMPLE)
    rows = kmer_counts(t, idx, AttractorSet.make([4, 7, 11, 12]))
    assert rows[1] == (2, 6, 8)
    assert rows[-1] == (12, 1, 48)


def test_unary_kmers():
    t, idx = T("aaaa")
    assert kmer_counts(t, idx, AttractorSet.make([1])) == [(1, 1, 1), (2, 1, 2), (3, 1, 3), (4, 1, 4)]


def test_kmers_need_valid_attractor():
    t, idx = T("ab")
    with pytest.raises(InvalidAttractor):
        kmer_counts(t, idx, AttractorSet.make([1]))


def test_example_lc():
    t, idx = T(EXAMPLE)
    lc, bound = lc_and_bound(t, idx, 4)
    # 55 distinct substrings by enumeration; the denominator is 70
    assert lc == Fraction(55, 70)
    assert bound == Fraction(67, 70)


@pytest.mark.parametrize("s, gamma", [("aaaa", 1), ("abcd", 4), ("a", 1)])
def test_trivial_lc(s, gamma):
    t, idx = T(s)
    assert lc_and_bound(t, idx, gamma) == (1, 1)


def test_lc_gamma_below_sigma():
    t, idx = T("abc")
    with pytest.raises(ParameterOutOfRange):
        lc_and_bound(t, idx, 2)


def test_lc_terms_saturate():
    # sigma^k is astronomically large yet the sum stays n(n+1)/2
    assert lc_terms(40, 2**20) == (820, 820)


def test_example_lmax():
    t, idx = T(EXAMPLE)
    c = lmax_bounds(t, idx, 4)
    assert c.lmax == 6 and c.lmax_floor == Fraction(8, 5) and c.gamma_floor == Fraction(6, 7)
    assert c.lmax_ok and c.gamma_ok


def test_lmax_distinct_and_unary():
    t, idx = T("abcde")
    c = lmax_bounds(t, idx, 5)
    assert c.lmax == 0 and c.lmax_floor == 0 and c.lmax_ok
    t, idx = T("a" * 9)
    c = lmax_bounds(t, idx, 1)
    assert c.lmax == 8 and c.lmax_floor == 4 and c.gamma_ok


def test_lmax_upper_bound_skips_reverse_direction():
    t, idx = T(EXAMPLE)
    assert lmax_bounds(t, idx, 7, exact=False).gamma_ok is None


def test_report_example():
    rep = bounds_report(Text.from_str(EXAMPLE))
    assert rep.gamma == 4 and rep.gamma_exact and rep.sub_count == 55
    js = rep.to_json()
    assert js["lc_bound"] == pytest.approx(0.9571, abs=5e-4)
    assert "LC bound" in rep.table()


def test_report_with_fixed_gamma():
    rep = bounds_report(Text.from_str(EXAMPLE), gamma=5)
    assert rep.gamma == 5 and not rep.gamma_exact


def test_report_rejects_broken_numbers():
    t, idx = T("abab")
    good = bounds_report(t, idx)
    with pytest.raises(BoundViolated):
        BoundsReport(good.n, good.sigma, good.gamma, True, good.kmers, good.sub_count,
                     good.lc_bound + 1, good.lc_bound, good.lmax)


def test_report_gamma_too_small_is_violation():
    # seven distinct 3-mers exceed 2 * 3; found by exhaustive search over short binary strings
    t, idx = T("aaababbaa")
    with pytest.raises(BoundViolated, match="k=3"):
        bounds_report(t, idx, gamma=2)
    with pytest.raises(ParameterOutOfRange):
        bounds_report(*T("abc"), gamma=2)


@given(texts("abcd", max_size=30))
def test_kmer_counts_match_enumeration(s):
    idx = build_index(Text.from_str(s))
    assert distinct_kmers(idx) == [oracles.distinct_kmers(s, k) for k in range(1, len(s) + 1)]


@given(texts("abc", max_size=12))
def test_all_bounds_with_exact_gamma(s):
    t, idx = T(s)
    g = smallest_attractor_bruteforce(t, idx)
    rows = kmer_counts(t, idx, g)
    assert all(c <= cap for _, c, cap in rows)
    lc, bound = lc_and_bound(t, idx, g.gamma)
    assert lc <= bound <= 1
    c = lmax_bounds(t, idx, g.gamma)
    assert c.lmax_ok and c.gamma_ok


@given(texts("ab", max_size=14), st.data())
def test_bounds_hold_for_any_valid_superset(s, data):
    t, idx = T(s)
    base = smallest_attractor_bruteforce(t, idx)
    extra = data.draw(st.sets(st.integers(1, t.n)))
    g = AttractorSet.make([*base.positions, *extra])
    rep = bounds_report(t, idx, attractor=g)
    assert rep.lmax.lmax_ok and rep.lc <= rep.lc_bound
