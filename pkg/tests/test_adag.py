import pytest
from hypothesis import given, strategies as st

from conftest import EXAMPLE, texts
from attractors.adag import (
    SPACE_CONSTANT,
    ADagConfig,
    build_adag,
    ceil_log,
    deserialize,
    extract,
    extract_with_stats,
    serialize,
    space_report,
)
from attractors.compressors import attractor_from_lz77, lz77_parse
from attractors.corpus import fibonacci_word, random_string
from attractors.errors import FormatError, InvalidAttractor, ParameterOutOfRange, RangeOutOfBounds
from attractors.textcore import AttractorSet, Text, build_index
from attractors.treeattr import greedy_string_attractor


def build(s, positions=None, **kw):
    t = Text.from_str(s)
    idx = build_index(t)
    g = AttractorSet.make(positions) if positions else greedy_string_attractor(t)
    return build_adag(t, idx, g, **kw)


def test_ceil_log():
    assert ceil_log(2, 12, 4) == 2 and ceil_log(2, 8, 8) == 0 and ceil_log(3, 10, 1) == 3


def test_config_levels():
    cfg = ADagConfig.make(1 << 16, 4, 2, tau=2, w=1)
    assert cfg.bits == 1 and cfg.alpha == 14
    assert cfg.s(cfg.istar) < 4 * cfg.alpha <= cfg.s(cfg.istar - 1)
    assert cfg.slots() == 15


def test_config_rejects_parameters():
    with pytest.raises(ParameterOutOfRange):
        ADagConfig.make(10, 2, 2, tau=1)
    with pytest.raises(ParameterOutOfRange):
        ADagConfig.make(10, 2, 2, w=0)


def test_example_extract():
    d = build(EXAMPLE, [4, 7, 11, 12])
    assert extract(d, 6, 5) == "CDABC"
    assert extract(d, 1, 12) == EXAMPLE
    with pytest.raises(RangeOutOfBounds):
        extract(d, 12, 3)
    with pytest.raises(RangeOutOfBounds):
        extract(d, 0, 1)


def test_every_position_attractor_needs_no_levels():
    d = build("abcab", range(1, 6))
    assert d.config.istar == 1 and d.levels == ()
    assert extract(d, 2, 4) == "bcab"


def test_rejects_invalid_attractor():
    with pytest.raises(InvalidAttractor):
        build("ab", [1])


def test_short_text_stored_whole():
    d = build("abaab", w=64)
    assert d.config.degenerate and len(d.leaves) == 1
    assert extract(d, 1, 5) == "abaab"


def test_unary_space_is_small():
    d = build("a" * 256, [1], w=1)
    assert not d.config.degenerate
    rep = space_report(d)
    assert rep.total_words <= rep.bound_words
    assert extract(d, 100, 50) == "a" * 50


@pytest.mark.parametrize("tau", [2, 3, 4, 8])
def test_fibonacci_full_extraction(tau):
    s = fibonacci_word(14)
    d = build(s, tau=tau, w=1)
    got, stats = extract_with_stats(d, 1, len(s))
    assert got == s and stats.fallbacks == 0


def test_hops_are_bounded_by_levels():
    s = random_string(300, 2, seed=5)
    d = build(s, w=1)
    for i in range(1, len(s) + 1, 7):
        got, stats = extract_with_stats(d, i, 1)
        assert got == s[i - 1] and stats.max_hops <= d.config.istar
        assert stats.fallbacks == 0


def test_serialization_roundtrip():
    s = fibonacci_word(12)
    d = build(s, tau=4, w=8)
    again = deserialize(serialize(d))
    assert again == d and extract(again, 10, 30) == s[9:39]


@pytest.mark.parametrize("blob", [b"", b"XXXX" + bytes(30), "cut", "extra"])
def test_deserialize_rejects_garbage(blob):
    good = serialize(build(EXAMPLE, [4, 7, 11, 12]))
    blob = {"cut": good[:-3], "extra": good + b"\0"}.get(blob, blob)
    with pytest.raises(FormatError):
        deserialize(blob)


adag_cases = st.tuples(
    texts("ab", max_size=80) | texts("abcd", max_size=80),
    st.sampled_from([2, 3, 4, 8]),
    st.sampled_from([1, 2, 8, 64]),
    st.booleans(),
)


@given(adag_cases, st.data())
def test_extract_matches_text(case, data):
    s, tau, w, use_lz = case
    t = Text.from_str(s)
    idx = build_index(t)
    g = attractor_from_lz77(lz77_parse(t, idx)) if use_lz else greedy_string_attractor(t)
    d = build_adag(t, idx, g, tau=tau, w=w)
    i = data.draw(st.integers(1, t.n))
    length = data.draw(st.integers(1, t.n - i + 1))
    got, stats = extract_with_stats(d, i, length)
    assert got == s[i - 1:i - 1 + length]
    assert stats.fallbacks == 0
    assert stats.units == -(-length // d.config.alpha)


@given(adag_cases)
def test_space_within_bound(case):
    s, tau, w, _ = case
    d = build(s, tau=tau, w=w)
    rep = space_report(d)
    cfg = d.config
    assert rep.total_words <= rep.bound_words
    assert rep.ratio <= SPACE_CONSTANT
    # one coordinate per top block plus at most 8tau-1 per attractor position and level
    assert rep.coordinates <= len(d.top) + d.gamma * cfg.slots() * max(0, cfg.istar - 1)
