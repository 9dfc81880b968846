import pytest
from hypothesis import given

import oracles
from conftest import EXAMPLE, texts
from attractors.compressors import (
    AssignDir,
    BidirectionalParse,
    Copy,
    CopyDir,
    Literal,
    Lz77Parse,
    MacroScheme,
    Pair,
    Power,
    RlGrammar,
    attractor_from_bwt_runs,
    attractor_from_grammar,
    attractor_from_lz77,
    attractor_from_macro,
    attractor_from_suffix_tree,
    balanced_rl_grammar,
    bwt_runs,
    decode_macro,
    induced_attractors,
    lz77_parse,
)
from attractors.errors import (
    FormatError,
    GrammarInvalid,
    InconsistentDirectives,
    UncoveredPosition,
    UnresolvableCycle,
)
from attractors.textcore import AttractorSet, Text, build_index, verify_attractor


def T(s):
    t = Text.from_str(s)
    return t, build_index(t)


# --- LZ77


def test_lz77_single_char():
    t, idx = T("a")
    p = lz77_parse(t, idx)
    assert p.phrases == (Literal("a"),) and p.z == 1
    assert attractor_from_lz77(p).positions == (1,)


def test_lz77_unary_has_no_self_reference():
    t, idx = T("aaaa")
    p = lz77_parse(t, idx)
    assert p.phrases == (Literal("a"), Copy(1, 1), Copy(1, 2))
    assert attractor_from_lz77(p).positions == (1, 2, 4)


def test_lz77_example():
    t, idx = T(EXAMPLE)
    p = lz77_parse(t, idx)
    assert p.z == 8
    assert p.phrases[4:] == (Copy(1, 1), Copy(1, 5), Copy(1, 1), Copy(3, 1))
    g = attractor_from_lz77(p)
    assert g.positions == (1, 2, 3, 4, 5, 10, 11, 12)
    assert verify_attractor(t, idx, g)


def test_lz77_json_roundtrip():
    p = lz77_parse(*T(EXAMPLE))
    assert Lz77Parse.from_json(p.to_json()) == p
    with pytest.raises(FormatError):
        Lz77Parse.from_json([{"src": 1}])


def test_lz77_decode_rejects_forward_copy():
    with pytest.raises(FormatError):
        Lz77Parse((Literal("a"), Copy(2, 1))).decode()


@given(texts("abc", max_size=30))
def test_lz77_matches_oracle_and_decodes(s):
    p = lz77_parse(*T(s))
    mine = [("lit", ph.ch) if isinstance(ph, Literal) else ("copy", ph.src, ph.length) for ph in p.phrases]
    assert mine == oracles.lz77(s)
    assert p.decode() == s


# --- BWT


@pytest.mark.parametrize("s, bwt, r", [("banana", "annb$aa", 5), ("a", "a$", 2), ("aaaa", "aaaa$", 2)])
def test_bwt_small(s, bwt, r):
    runs = bwt_runs(*T(s))
    assert runs.as_string() == bwt and runs.r == r


def test_bwt_attractor_banana():
    t, idx = T("banana")
    g = attractor_from_bwt_runs(t, bwt_runs(t, idx))
    assert g.positions == (1, 2, 3, 4, 5, 6) and g.gamma <= 10


def test_bwt_attractor_single():
    t, idx = T("a")
    assert attractor_from_bwt_runs(t, bwt_runs(t, idx)).positions == (1,)


@given(texts("abcd", max_size=30))
def test_bwt_matches_rotation_sort_and_inverts(s):
    t, idx = T(s)
    runs = bwt_runs(t, idx)
    assert runs.as_string() == oracles.bwt(s)
    assert runs.inverse() == t


# --- grammars


def test_power_grammar_unary():
    t = Text.from_str("aaaa")
    gr = RlGrammar({1: Power("a", 4)}, 1)
    assert gr.expand() == "aaaa"
    assert attractor_from_grammar(gr, t).positions == (1,)
    assert gr.g == 2  # one power rule plus the terminal rule


def test_pair_grammar_adds_missing_terminal():
    # the split after position 1 alone leaves "b" uncovered; the terminal rule for b adds position 2
    t, idx = T("ab")
    gr = RlGrammar({1: Pair("a", "b")}, 1)
    g = attractor_from_grammar(gr, t)
    assert g.positions == (1, 2) and g.gamma <= gr.g == 3
    assert verify_attractor(t, idx, g)


def test_grammar_start_terminal():
    gr = RlGrammar({}, "a")
    assert gr.g == 1 and attractor_from_grammar(gr, Text.from_str("a")).positions == (1,)


def test_grammar_rejects_cycles_and_mismatch():
    with pytest.raises(GrammarInvalid):
        RlGrammar({1: Pair(2, "a"), 2: Pair(1, "b")}, 1).expand()
    with pytest.raises(GrammarInvalid):
        attractor_from_grammar(RlGrammar({1: Pair("a", "a")}, 1), Text.from_str("ab"))


def test_grammar_json_roundtrip():
    gr = balanced_rl_grammar(Text.from_str(EXAMPLE))
    again = RlGrammar.from_json(gr.to_json())
    assert again.expand() == EXAMPLE and again.g == gr.g


def test_balanced_grammar_uses_both_rule_kinds():
    gr = balanced_rl_grammar(Text.from_str("aaaabbbbaaaabbbb"))
    assert gr.g_power > 0 and gr.g_pair > 0 and gr.expand() == "aaaabbbbaaaabbbb"


# --- macro schemes


def test_macro_small_decode():
    ms = MacroScheme(2, (AssignDir(1, "a"), CopyDir((2, 2), (1, 1))))
    text, h = decode_macro(ms)
    assert text.string == "aa" and h == 2
    g = attractor_from_macro(ms)
    assert g.positions == (1, 2) and g.gamma <= 2 * ms.b


def test_macro_cycle_is_unresolvable():
    ms = MacroScheme(3, (CopyDir((1, 2), (2, 3)), CopyDir((2, 3), (1, 2))))
    with pytest.raises(UnresolvableCycle):
        decode_macro(ms)


def test_macro_uncovered_position():
    with pytest.raises(UncoveredPosition):
        decode_macro(MacroScheme(2, (AssignDir(1, "a"),)))


def test_macro_inconsistent_assigns():
    with pytest.raises(InconsistentDirectives):
        decode_macro(MacroScheme(2, (AssignDir(1, "a"), AssignDir(2, "b"), CopyDir((2, 2), (1, 1)))))


def test_macro_overlapping_scheme_has_no_height():
    ms = MacroScheme(2, (AssignDir(1, "a"), AssignDir(2, "a"), CopyDir((2, 2), (1, 1))))
    text, h = decode_macro(ms)
    assert text.string == "aa" and h is None


def test_macro_abab():
    ms = MacroScheme(4, (AssignDir(1, "a"), AssignDir(2, "b"), CopyDir((3, 4), (1, 2))))
    t, idx = T("abab")
    g = attractor_from_macro(ms)
    assert g.positions == (1, 2, 3, 4) and verify_attractor(t, idx, g)


def test_macro_json_partition_type():
    ms = lz77_parse(*T(EXAMPLE)).to_macro()
    again = MacroScheme.from_json(ms.to_json())
    assert isinstance(again, BidirectionalParse) and again.directives == ms.directives


# --- suffix tree


def test_suffix_tree_attractor_ab():
    t, idx = T("ab")
    assert idx.e == 2 and attractor_from_suffix_tree(t, idx).positions == (1, 2)


def test_suffix_tree_attractor_example():
    t, idx = T(EXAMPLE)
    g = attractor_from_suffix_tree(t, idx)
    assert g.gamma <= idx.e == 18 and verify_attractor(t, idx, g)


# --- all reductions together


@given(texts("abc", max_size=40))
def test_induced_attractors_verify_within_bounds(s):
    t, idx = T(s)
    for name, (g, bound) in induced_attractors(t, idx).items():
        assert g.gamma <= bound, name
        assert verify_attractor(t, idx, g), name


@given(texts("ab", max_size=40))
def test_lz77_as_bidirectional_parse(s):
    t, idx = T(s)
    ms = lz77_parse(t, idx).to_macro()
    text, h = decode_macro(ms)
    assert text == t and h is not None
    g = attractor_from_macro(ms)
    assert g.gamma <= 2 * lz77_parse(t, idx).z and verify_attractor(t, idx, g)


@given(texts("abc", max_size=40))
def test_balanced_grammar_round_trip(s):
    gr = balanced_rl_grammar(Text.from_str(s))
    assert gr.expand() == s


def test_induced_on_unary_verifies():
    t, idx = T("aaaa")
    for g, _ in induced_attractors(t, idx).values():
        assert isinstance(g, AttractorSet) and verify_attractor(t, idx, g)
