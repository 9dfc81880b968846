"""Texts, suffix structures, attractor verification and exact oracles.

Positions are 1-based in every public signature. Internally arrays are 0-based.
"""
from __future__ import annotations

import json
from bisect import bisect_left
from dataclasses import dataclass, field
from typing import NamedTuple

from . import setcover
from .errors import EmptyText, FormatError, InputTooLarge, IntervalOutOfRange, PositionOutOfRange

PROVENANCES = ("lz77", "bwt-runs", "grammar", "macro", "suffix-tree", "greedy", "brute", "user", "padded")


@dataclass(frozen=True, eq=False)
class Text:
    """A nonempty string over the dense alphabet [1..sigma].

    ``raw`` keeps the original bytes; ``string`` is their latin-1 decoding, which
    preserves byte order and therefore rank order.
    """

    raw: bytes
    chars: tuple
    sigma: int
    rank_map: dict = field(repr=False)

    @classmethod
    def from_bytes(cls, raw: bytes) -> "Text":
        raw = bytes(raw)
        if not raw:
            raise EmptyText("empty input text")
        alphabet = sorted(set(raw))
        rank_map = {b: r + 1 for r, b in enumerate(alphabet)}
        return cls(raw, tuple(rank_map[b] for b in raw), len(alphabet), rank_map)

    @classmethod
    def from_str(cls, s: str) -> "Text":
        return cls.from_bytes(s.encode("latin-1"))

    @property
    def n(self) -> int:
        return len(self.raw)

    @property
    def string(self) -> str:
        return self.raw.decode("latin-1")

    def symbol(self, rank: int) -> str:
        """Original character for a rank."""
        for b, r in self.rank_map.items():
            if r == rank:
                return chr(b)
        raise KeyError(rank)

    def substring(self, i: int, j: int) -> str:
        return self.string[i - 1:j]

    def __eq__(self, other):
        return isinstance(other, Text) and self.raw == other.raw

    def __hash__(self):
        return hash(self.raw)

    def __len__(self):
        return self.n


@dataclass(frozen=True)
class AttractorSet:
    positions: tuple
    provenance: str = "user"

    @classmethod
    def make(cls, positions, provenance="user") -> "AttractorSet":
        pos = tuple(sorted(set(int(p) for p in positions)))
        if pos and pos[0] < 1:
            raise PositionOutOfRange(f"position {pos[0]} < 1")
        return cls(pos, provenance)

    @property
    def gamma(self) -> int:
        return len(self.positions)

    def __len__(self):
        return len(self.positions)

    def __iter__(self):
        return iter(self.positions)

    def __contains__(self, p):
        i = bisect_left(self.positions, p)
        return i < len(self.positions) and self.positions[i] == p

    def check_range(self, n: int) -> None:
        if self.positions and (self.positions[0] < 1 or self.positions[-1] > n):
            bad = self.positions[0] if self.positions[0] < 1 else self.positions[-1]
            raise PositionOutOfRange(f"position {bad} outside [1..{n}]", position=bad)

    def to_json(self, n: int) -> dict:
        return {"n": n, "positions": list(self.positions), "provenance": self.provenance}

    @classmethod
    def from_json(cls, obj) -> "AttractorSet":
        if isinstance(obj, (str, bytes)):
            obj = json.loads(obj)
        try:
            return cls.make(obj["positions"], obj.get("provenance", "user"))
        except (KeyError, TypeError, ValueError) as exc:
            raise FormatError(f"bad attractor JSON: {exc}") from exc


class Edge(NamedTuple):
    """Suffix-tree edge: st(e) is the text prefix of length depth+1 at any row in [lo..hi]."""

    depth: int  # string depth of the parent node
    lo: int  # suffix-array rows of the subtree below the edge
    hi: int
    label_len: int
    first_pos: int  # 1-based text position of the first label character


class RangeMin:
    """Sparse table for O(1) range-minimum queries (value only)."""

    def __init__(self, values):
        self.table = [list(values)]
        k = 1
        while (1 << k) <= len(values):
            prev = self.table[-1]
            half = 1 << (k - 1)
            self.table.append([min(prev[i], prev[i + half]) for i in range(len(prev) - half)])
            k += 1

    def query(self, lo, hi):
        k = (hi - lo + 1).bit_length() - 1
        row = self.table[k]
        return min(row[lo], row[hi - (1 << k) + 1])


@dataclass(frozen=True, eq=False)
class SuffixIndex:
    """Suffix array (0-based starts), inverse, LCP and suffix-tree edges of a Text."""

    text: Text
    sa: tuple
    isa: tuple
    lcp: tuple
    edges: tuple
    sa_min: RangeMin = field(repr=False)

    @property
    def e(self) -> int:
        return len(self.edges)

    def st(self, edge: Edge) -> str:
        start = self.sa[edge.lo]
        return self.text.string[start:start + edge.depth + 1]

    def occurrences(self, edge: Edge):
        return [self.sa[q] + 1 for q in range(edge.lo, edge.hi + 1)]

    def leftmost(self, edge: Edge) -> int:
        """1-based leftmost start of st(edge)."""
        return self.sa_min.query(edge.lo, edge.hi) + 1


def _suffix_array(s: str) -> list:
    # shorter-prefix-first ordering equals ordering with a smallest sentinel
    return sorted(range(len(s)), key=lambda i: s[i:])


def _kasai(s: str, sa, isa) -> list:
    n = len(s)
    lcp = [0] * n
    h = 0
    for i in range(n):
        r = isa[i]
        if r > 0:
            j = sa[r - 1]
            while i + h < n and j + h < n and s[i + h] == s[j + h]:
                h += 1
            lcp[r] = h
            if h:
                h -= 1
        else:
            h = 0
    return lcp


def tree_edges(sa, lcp, lengths=None) -> list:
    """Enumerate compacted-trie edges from lcp intervals, dropping sentinel edges.

    ``lengths[q]`` is the length of the string in row q; by default the rows
    are suffixes of a text of length len(sa).
    """
    n = len(sa)
    intervals = []  # (depth, lb, rb, children)
    stack = [[0, 0, []]]
    for i in range(1, n + 1):
        cur = lcp[i] if i < n else 0
        lb = i - 1
        last = None
        while cur < stack[-1][0]:
            top = stack.pop()
            intervals.append((top[0], top[1], i - 1, top[2]))
            last = (top[1], i - 1, top[0])
            lb = top[1]
            if cur <= stack[-1][0]:
                stack[-1][2].append(last)
                last = None
        if cur > stack[-1][0]:
            stack.append([cur, lb, [last] if last else []])
    root = stack[0]
    intervals.append((0, 0, n - 1, root[2]))

    edges = []
    for depth, lb, rb, children in intervals:
        children = sorted(children)
        q = lb
        k = 0
        while q <= rb:
            if k < len(children) and children[k][0] == q:
                clb, crb, cdepth = children[k]
                edges.append(Edge(depth, clb, crb, cdepth - depth, sa[clb] + depth + 1))
                q = crb + 1
                k += 1
            else:
                length = lengths[q] if lengths is not None else n - sa[q]
                if length > depth:
                    edges.append(Edge(depth, q, q, length - depth, sa[q] + depth + 1))
                q += 1
    edges.sort(key=lambda ed: (ed.depth, ed.lo))
    return edges


def build_index(t: Text) -> SuffixIndex:
    s = t.string
    sa = _suffix_array(s)
    isa = [0] * len(sa)
    for r, p in enumerate(sa):
        isa[p] = r
    lcp = _kasai(s, sa, isa)
    edges = tree_edges(sa, lcp)
    return SuffixIndex(t, tuple(sa), tuple(isa), tuple(lcp), tuple(edges), RangeMin(sa))


@dataclass(frozen=True)
class Witness:
    i: int
    j: int
    reason: str


@dataclass(frozen=True)
class Verdict:
    valid: bool
    witness: Witness | None = None

    def __bool__(self):
        return self.valid


def _next_position_table(n: int, positions) -> list:
    """nxt[p] = smallest attractor position (0-based) >= p, or a large sentinel."""
    big = 2 * n + 2
    nxt = [big] * (n + 1)
    mark = [False] * n
    for p in positions:
        mark[p - 1] = True
    for p in range(n - 1, -1, -1):
        nxt[p] = p if mark[p] else nxt[p + 1]
    return nxt


def verify_attractor(t: Text, idx: SuffixIndex, g: AttractorSet) -> Verdict:
    """Check that every suffix-tree edge string st(e) has an occurrence crossing ``g``.

    This reduced check is equivalent to covering every distinct substring:
    a substring ending inside an edge label is always preceded by st(e) at
    every occurrence of st(e).
    """
    g.check_range(t.n)
    nxt = _next_position_table(t.n, g.positions)
    dist = RangeMin([nxt[p] - p for p in idx.sa])
    for edge in idx.edges:
        if dist.query(edge.lo, edge.hi) > edge.depth:
            start = idx.leftmost(edge)
            end = start + edge.depth
            return Verdict(False, Witness(start, end, f"substring {t.substring(start, end)!r} has no occurrence crossing the set"))
    return Verdict(True)


def edge_cover_masks(idx: SuffixIndex) -> list:
    """For each suffix-tree edge, the bitmask of positions (bit p-1) crossing one of its occurrences."""
    out = []
    for edge in idx.edges:
        span = (1 << (edge.depth + 1)) - 1
        mask = 0
        for q in range(edge.lo, edge.hi + 1):
            mask |= span << idx.sa[q]
        out.append(mask)
    return out


def smallest_attractor_bruteforce(t: Text, idx: SuffixIndex, limit: int = 18) -> AttractorSet:
    """Exact smallest attractor; lexicographically smallest among the optima."""
    if t.n > limit:
        raise InputTooLarge(f"n={t.n} exceeds limit {limit}")
    masks = edge_cover_masks(idx)
    # one candidate set per text position: the edges it covers
    sets = setcover.transpose(masks, t.n)
    full = (1 << len(masks)) - 1
    chosen = setcover.smallest_cover(sets, full, lower=t.sigma)
    return AttractorSet.make([p + 1 for p in chosen], "brute")


def count_distinct_substrings(idx: SuffixIndex) -> int:
    n = len(idx.sa)
    return n * (n + 1) // 2 - sum(idx.lcp)


def longest_repeated_len(idx: SuffixIndex) -> int:
    return max(idx.lcp) if idx.lcp else 0


def find_occurrence_crossing(t: Text, idx: SuffixIndex, interval, g: AttractorSet):
    """Leftmost occurrence [i'..j'] of T[i..j] containing a position of ``g``, or None."""
    i, j = interval
    if not (1 <= i <= j <= t.n):
        raise IntervalOutOfRange(f"interval [{i}..{j}] outside [1..{t.n}]")
    return _crossing(t.string, t.string[i - 1:j], g.positions)


def _crossing(s: str, pattern: str, positions):
    length = len(pattern)
    # the first attractor position (in increasing order) admitting a crossing
    # occurrence yields the globally leftmost crossing occurrence
    for p in positions:
        lo = max(0, p - length)
        k = s.find(pattern, lo, p - 1 + length)
        if k >= 0:
            return (k + 1, k + length)
    return None
