"""Dictionary-compressed forms and the attractors they induce.

Each form decodes back to the text, reports its size measure (z, r, g, b, e)
and yields an AttractorSet no larger than that measure allows.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from typing import NamedTuple, Union

from .errors import (
    FormatError,
    GrammarInvalid,
    InconsistentDirectives,
    PositionOutOfRange,
    UncoveredPosition,
    UnresolvableCycle,
)
from .textcore import AttractorSet, SuffixIndex, Text, build_index

# --------------------------------------------------------------------- LZ77


class Literal(NamedTuple):
    ch: str


class Copy(NamedTuple):
    src: int  # 1-based start of the source
    length: int


@dataclass(frozen=True)
class Lz77Parse:
    phrases: tuple

    @property
    def z(self) -> int:
        return len(self.phrases)

    def phrase_ends(self) -> list:
        ends, pos = [], 0
        for ph in self.phrases:
            pos += 1 if isinstance(ph, Literal) else ph.length
            ends.append(pos)
        return ends

    def decode(self) -> str:
        out = []
        for ph in self.phrases:
            if isinstance(ph, Literal):
                out.append(ph.ch)
            else:
                if ph.src < 1 or ph.src + ph.length - 1 > len(out):
                    raise FormatError(f"copy {ph} reaches past decoded text")
                out.extend(out[ph.src - 1:ph.src - 1 + ph.length])
        return "".join(out)

    def to_macro(self) -> "BidirectionalParse":
        """The same factorization viewed as a bidirectional parse."""
        dirs, pos = [], 1
        for ph in self.phrases:
            if isinstance(ph, Literal):
                dirs.append(AssignDir(pos, ph.ch))
                pos += 1
            else:
                dirs.append(CopyDir((pos, pos + ph.length - 1), (ph.src, ph.src + ph.length - 1)))
                pos += ph.length
        return BidirectionalParse(pos - 1, tuple(dirs))

    def to_json(self) -> list:
        return [{"lit": ph.ch} if isinstance(ph, Literal) else {"src": ph.src, "len": ph.length}
                for ph in self.phrases]

    @classmethod
    def from_json(cls, obj) -> "Lz77Parse":
        if isinstance(obj, (str, bytes)):
            obj = json.loads(obj)
        phrases = []
        try:
            for item in obj:
                phrases.append(Literal(item["lit"]) if "lit" in item else Copy(int(item["src"]), int(item["len"])))
        except (KeyError, TypeError, ValueError) as exc:
            raise FormatError(f"bad LZ77 JSON: {exc}") from exc
        return cls(tuple(phrases))


def lz77_parse(t: Text, idx: SuffixIndex | None = None) -> Lz77Parse:
    """Greedy LZ77 without self-references or trailing characters.

    Each copy is the longest prefix of the remaining text occurring entirely
    inside the already-parsed prefix; its source is the leftmost such occurrence.
    """
    s = t.string
    n = len(s)
    phrases = []
    i = 0
    while i < n:
        prefix = s[:i]
        length = 0
        while i + length < n and length < i and prefix.find(s[i:i + length + 1]) >= 0:
            length += 1
        if length == 0:
            phrases.append(Literal(s[i]))
            i += 1
        else:
            phrases.append(Copy(prefix.find(s[i:i + length]) + 1, length))
            i += length
    return Lz77Parse(tuple(phrases))


def attractor_from_lz77(p: Lz77Parse) -> AttractorSet:
    return AttractorSet.make(p.phrase_ends(), "lz77")


# ---------------------------------------------------------------------- BWT

SENTINEL = 0


@dataclass(frozen=True)
class BwtRuns:
    """BWT of T$ as ranks (0 = sentinel) with run boundaries and row-to-position map."""

    bwt: tuple
    run_starts: tuple
    row_to_text: tuple  # 1-based text position of bwt[q], None for the sentinel
    rank_map: dict

    @property
    def r(self) -> int:
        return len(self.run_starts)

    def as_string(self, sentinel: str = "$") -> str:
        inv = {r: chr(b) for b, r in self.rank_map.items()}
        return "".join(sentinel if c == SENTINEL else inv[c] for c in self.bwt)

    def inverse(self) -> Text:
        """Reconstruct T by LF-mapping from the sentinel row."""
        counts = {}
        occ = []
        for c in self.bwt:
            occ.append(counts.get(c, 0))
            counts[c] = occ[-1] + 1
        first, acc = {}, 0
        for c in sorted(counts):
            first[c] = acc
            acc += counts[c]
        inv = {r: b for b, r in self.rank_map.items()}
        out = []
        q = 0
        for _ in range(len(self.bwt) - 1):
            c = self.bwt[q]
            out.append(inv[c])
            q = first[c] + occ[q]
        return Text.from_bytes(bytes(reversed(out)))


def bwt_runs(t: Text, idx: SuffixIndex) -> BwtRuns:
    rows = [t.n] + [p for p in idx.sa]  # 0-based suffix starts; n is the sentinel suffix
    bwt = tuple(t.chars[p - 1] if p > 0 else SENTINEL for p in rows)
    starts = tuple(q for q in range(len(bwt)) if q == 0 or bwt[q] != bwt[q - 1])
    row_to_text = tuple(p if p > 0 else None for p in rows)
    return BwtRuns(bwt, starts, row_to_text, dict(t.rank_map))


def attractor_from_bwt_runs(t: Text, runs: BwtRuns) -> AttractorSet:
    """Text positions of the first and last character of every BWT run, plus n."""
    m = len(runs.bwt)
    rows = set()
    for k, q in enumerate(runs.run_starts):
        last = runs.run_starts[k + 1] - 1 if k + 1 < len(runs.run_starts) else m - 1
        rows.update((q, last))
    pos = {runs.row_to_text[q] for q in rows if runs.row_to_text[q] is not None}
    pos.add(t.n)
    return AttractorSet.make(pos, "bwt-runs")


# ------------------------------------------------------------------ grammars


class Pair(NamedTuple):
    left: object
    right: object


class Power(NamedTuple):
    base: object
    exp: int


Symbol = Union[int, str]  # int = nonterminal id, 1-char str = terminal


@dataclass(frozen=True)
class RlGrammar:
    rules: dict
    start: Symbol

    @property
    def g_pair(self) -> int:
        return sum(isinstance(r, Pair) for r in self.rules.values())

    @property
    def g_power(self) -> int:
        return sum(isinstance(r, Power) for r in self.rules.values())

    def terminals(self) -> set:
        if isinstance(self.start, str):
            return {self.start}
        out = set()
        for x in self.order():
            out.update(c for c in self.children(x) if isinstance(c, str))
        return out

    @property
    def g_term(self) -> int:
        """Implicit rules X -> c, one per distinct terminal."""
        return len(self.terminals())

    @property
    def g(self) -> int:
        return self.g_pair + self.g_power + self.g_term

    def children(self, x):
        rule = self.rules[x]
        return (rule.left, rule.right) if isinstance(rule, Pair) else (rule.base,)

    def order(self) -> list:
        """Nonterminals reachable from start, children before parents."""
        if isinstance(self.start, str):
            return []
        state = {}
        out = []
        stack = [(self.start, False)]
        while stack:
            x, done = stack.pop()
            if done:
                state[x] = 2
                out.append(x)
                continue
            if state.get(x) == 2:
                continue
            if state.get(x) == 1:
                raise GrammarInvalid(f"cyclic rule through {x}")
            if x not in self.rules:
                raise GrammarInvalid(f"undefined nonterminal {x}")
            state[x] = 1
            stack.append((x, True))
            for c in self.children(x):
                if isinstance(c, str):
                    if len(c) != 1:
                        raise GrammarInvalid(f"terminal {c!r} is not a single character")
                elif state.get(c) == 1:
                    raise GrammarInvalid(f"cyclic rule through {c}")
                elif state.get(c) != 2:
                    stack.append((c, False))
        return out

    def lengths(self) -> dict:
        lens = {}
        for x in self.order():
            rule = self.rules[x]
            if isinstance(rule, Pair):
                lens[x] = self._len(rule.left, lens) + self._len(rule.right, lens)
            else:
                if rule.exp < 2:
                    raise GrammarInvalid(f"power rule {x} has exponent {rule.exp} < 2")
                lens[x] = self._len(rule.base, lens) * rule.exp
        return lens

    @staticmethod
    def _len(sym, lens):
        return 1 if isinstance(sym, str) else lens[sym]

    def expand(self, sym=None) -> str:
        sym = self.start if sym is None else sym
        memo = {}
        for x in self.order():
            rule = self.rules[x]
            if isinstance(rule, Pair):
                memo[x] = memo.get(rule.left, rule.left) + memo.get(rule.right, rule.right)
            else:
                memo[x] = memo.get(rule.base, rule.base) * rule.exp
        return memo.get(sym, sym) if not isinstance(sym, str) else sym

    def pruned(self) -> "RlGrammar":
        keep = set(self.order())
        return RlGrammar({x: r for x, r in self.rules.items() if x in keep}, self.start)

    def to_json(self) -> dict:
        rules = {}
        for x, r in self.rules.items():
            rules[str(x)] = {"pair": [r.left, r.right]} if isinstance(r, Pair) else {"power": [r.base, r.exp]}
        return {"start": self.start, "rules": rules}

    @classmethod
    def from_json(cls, obj) -> "RlGrammar":
        if isinstance(obj, (str, bytes)):
            obj = json.loads(obj)
        try:
            rules = {}
            for key, body in obj["rules"].items():
                if "pair" in body:
                    a, b = body["pair"]
                    rules[int(key)] = Pair(a, b)
                else:
                    z, ell = body["power"]
                    rules[int(key)] = Power(z, int(ell))
            return cls(rules, obj["start"])
        except (KeyError, TypeError, ValueError) as exc:
            raise FormatError(f"bad grammar JSON: {exc}") from exc


def balanced_rl_grammar(t: Text) -> RlGrammar:
    """A simple run-length grammar: alternate run collapsing and pairwise merging.

    Not meant to be small; it gives every text a grammar with both rule kinds.
    """
    seq = list(t.string)
    rules, table = {}, {}

    def intern(rule):
        key = (type(rule).__name__, *rule)  # Pair and Power tuples compare equal
        if key not in table:
            table[key] = len(table) + 1
            rules[table[key]] = rule
        return table[key]

    while len(seq) > 1:
        runs, i = [], 0
        while i < len(seq):
            j = i
            while j < len(seq) and seq[j] == seq[i]:
                j += 1
            runs.append(intern(Power(seq[i], j - i)) if j - i >= 2 else seq[i])
            i = j
        seq = runs
        if len(seq) == 1:
            break
        paired = [intern(Pair(seq[k], seq[k + 1])) for k in range(0, len(seq) - 1, 2)]
        if len(seq) % 2:
            paired.append(seq[-1])
        seq = paired
    return RlGrammar(rules, seq[0])


def attractor_from_grammar(gr: RlGrammar, t: Text) -> AttractorSet:
    """One split position per rule, taken at the rule's leftmost occurrence.

    Terminal rules X -> c contribute the leftmost occurrence of c unless some
    split position already holds c; splits alone never cover single characters.
    """
    lens = gr.lengths()
    if gr.expand() != t.string:
        raise GrammarInvalid("grammar does not expand to the text")
    pos = []
    if isinstance(gr.start, str):
        return AttractorSet.make([1], "grammar")
    seen = set()
    stack = [(gr.start, 0)]
    while stack:
        x, off = stack.pop()
        if isinstance(x, str) or x in seen:
            continue
        seen.add(x)
        rule = gr.rules[x]
        if isinstance(rule, Pair):
            left_len = RlGrammar._len(rule.left, lens)
            pos.append(off + left_len)
            stack.append((rule.right, off + left_len))
            stack.append((rule.left, off))
        else:
            pos.append(off + RlGrammar._len(rule.base, lens))
            stack.append((rule.base, off))
    held = {t.string[p - 1] for p in pos}
    for c in sorted(gr.terminals() - held):
        pos.append(t.string.index(c) + 1)
    return AttractorSet.make(pos, "grammar")


# ------------------------------------------------------------- macro schemes


class CopyDir(NamedTuple):
    dst: tuple  # (i, j), 1-based inclusive
    src: tuple


class AssignDir(NamedTuple):
    pos: int
    ch: str


@dataclass(frozen=True)
class MacroScheme:
    n: int
    directives: tuple

    @property
    def b1(self) -> int:
        return sum(isinstance(d, CopyDir) for d in self.directives)

    @property
    def b2(self) -> int:
        return sum(isinstance(d, AssignDir) for d in self.directives)

    @property
    def b(self) -> int:
        return len(self.directives)

    def coverage(self) -> list:
        cnt = [0] * (self.n + 2)
        for d in self.directives:
            if isinstance(d, AssignDir):
                cnt[d.pos] += 1
                cnt[d.pos + 1] -= 1
            else:
                cnt[d.dst[0]] += 1
                cnt[d.dst[1] + 1] -= 1
        out, acc = [], 0
        for c in cnt[: self.n + 1]:
            acc += c
            out.append(acc)
        return out  # index 0 unused

    def is_partition(self) -> bool:
        return all(c == 1 for c in self.coverage()[1:])

    def to_json(self) -> dict:
        dirs = []
        for d in self.directives:
            if isinstance(d, AssignDir):
                dirs.append({"pos": d.pos, "ch": d.ch})
            else:
                dirs.append({"dst": list(d.dst), "src": list(d.src)})
        return {"n": self.n, "dirs": dirs}

    @classmethod
    def from_json(cls, obj) -> "MacroScheme":
        if isinstance(obj, (str, bytes)):
            obj = json.loads(obj)
        try:
            dirs = []
            for d in obj["dirs"]:
                if "pos" in d:
                    dirs.append(AssignDir(int(d["pos"]), d["ch"]))
                else:
                    dirs.append(CopyDir(tuple(map(int, d["dst"])), tuple(map(int, d["src"]))))
            ms = cls(int(obj["n"]), tuple(dirs))
        except (KeyError, TypeError, ValueError) as exc:
            raise FormatError(f"bad macro-scheme JSON: {exc}") from exc
        if ms.is_partition():
            return BidirectionalParse(ms.n, ms.directives)
        return ms


class BidirectionalParse(MacroScheme):
    """Macro scheme whose left-hand sides partition [1..n]."""


def _check_directives(ms: MacroScheme) -> None:
    n = ms.n
    for d in ms.directives:
        if isinstance(d, AssignDir):
            if not 1 <= d.pos <= n:
                raise PositionOutOfRange(f"assign position {d.pos} outside [1..{n}]")
            if len(d.ch) != 1:
                raise FormatError(f"assign of {d.ch!r} is not a single character")
        else:
            (i, j), (i2, j2) = d.dst, d.src
            if not (1 <= i <= j <= n and 1 <= i2 <= j2 <= n):
                raise PositionOutOfRange(f"directive {d} outside [1..{n}]")
            if j - i != j2 - i2:
                raise FormatError(f"directive {d} has unequal lengths")


def decode_macro(ms: MacroScheme):
    """Fixpoint decoder. Returns (Text, height) with height None unless ``ms`` is a partition."""
    _check_directives(ms)
    n = ms.n
    cover = ms.coverage()
    for p in range(1, n + 1):
        if cover[p] == 0:
            raise UncoveredPosition(f"position {p} is not covered by any directive", position=p)
    val = [None] * (n + 1)
    height = [0] * (n + 1)
    dependents = [[] for _ in range(n + 1)]
    queue = deque()
    for d in ms.directives:
        if isinstance(d, AssignDir):
            if val[d.pos] is not None and val[d.pos] != d.ch:
                raise InconsistentDirectives(f"position {d.pos} assigned twice", position=d.pos)
            if val[d.pos] is None:
                val[d.pos] = d.ch
                height[d.pos] = 1
                queue.append(d.pos)
        else:
            for k in range(d.dst[1] - d.dst[0] + 1):
                dependents[d.src[0] + k].append(d.dst[0] + k)
    while queue:
        q = queue.popleft()
        for p in dependents[q]:
            if val[p] is None:
                val[p] = val[q]
                height[p] = height[q] + 1
                queue.append(p)
    missing = [p for p in range(1, n + 1) if val[p] is None]
    if missing:
        raise UnresolvableCycle(f"{len(missing)} positions never resolve (first {missing[0]})", position=missing[0])
    for d in ms.directives:
        if isinstance(d, CopyDir):
            for k in range(d.dst[1] - d.dst[0] + 1):
                if val[d.dst[0] + k] != val[d.src[0] + k]:
                    raise InconsistentDirectives(f"directive {d} disagrees at offset {k}")
        elif val[d.pos] != d.ch:
            raise InconsistentDirectives(f"assign {d} disagrees with decoded text")
    text = Text.from_str("".join(val[1:]))
    h = max(height[1:]) if all(c == 1 for c in cover[1:]) else None
    return text, h


def attractor_from_macro(ms: MacroScheme) -> AttractorSet:
    """Copy-destination endpoints plus assigned positions."""
    decode_macro(ms)
    pos = set()
    for d in ms.directives:
        if isinstance(d, AssignDir):
            pos.add(d.pos)
        else:
            pos.update(d.dst)
    return AttractorSet.make(pos, "macro")


# -------------------------------------------------------------- suffix tree


def attractor_from_suffix_tree(t: Text, idx: SuffixIndex) -> AttractorSet:
    """End of the leftmost occurrence of st(e) for every suffix-tree edge e."""
    return AttractorSet.make((idx.leftmost(e) + e.depth for e in idx.edges), "suffix-tree")


def induced_attractors(t: Text, idx: SuffixIndex | None = None) -> dict:
    """All compressor-induced attractors of a text, keyed by provenance, with their measures."""
    idx = idx or build_index(t)
    lz = lz77_parse(t, idx)
    runs = bwt_runs(t, idx)
    gr = balanced_rl_grammar(t)
    ms = lz.to_macro()
    return {
        "lz77": (attractor_from_lz77(lz), lz.z),
        "bwt-runs": (attractor_from_bwt_runs(t, runs), 2 * runs.r),
        "grammar": (attractor_from_grammar(gr, t), gr.g),
        "macro": (attractor_from_macro(ms), 2 * ms.b),
        "suffix-tree": (attractor_from_suffix_tree(t, idx), idx.e),
    }
