"""From an attractor back to compressed forms: a bidirectional parse and an SLP."""
from __future__ import annotations

import math
from bisect import bisect_right, insort
from dataclasses import dataclass, field

from .compressors import AssignDir, BidirectionalParse, CopyDir, Pair, RlGrammar, decode_macro
from .errors import AttractorError, InvalidAttractor
from .textcore import AttractorSet, SuffixIndex, Text, build_index, find_occurrence_crossing, verify_attractor


@dataclass(frozen=True)
class PaddedAttractor:
    base: AttractorSet
    padded: AttractorSet
    max_gap: int


def _max_gap(n, positions):
    fences = [0, *positions, n + 1]
    return max(b - a for a, b in zip(fences, fences[1:]))


def pad_attractor(t: Text, g: AttractorSet, idx: SuffixIndex | None = None) -> PaddedAttractor:
    """Add the multiples of ceil(n/gamma) so no two consecutive positions are farther apart."""
    idx = idx or build_index(t)
    verdict = verify_attractor(t, idx, g)
    if not verdict:
        raise InvalidAttractor(f"not an attractor: {verdict.witness.reason}")
    step = -(-t.n // g.gamma)
    padded = AttractorSet.make([*g.positions, *range(step, t.n + 1, step)], "padded")
    return PaddedAttractor(g, padded, _max_gap(t.n, padded.positions))


# ------------------------------------------------------------------- parse


def _run(anchor, lo, hi, step):
    """Phrases of length 1, 2, 4, ... moving away from ``anchor`` over [lo..hi], then a remainder."""
    out = []
    length = 1
    if step > 0:
        x = anchor + 1
        while x <= hi:
            y = min(x + length - 1, hi)
            out.append((x, y))
            x, length = y + 1, length * 2
    else:
        y = anchor - 1
        while y >= lo:
            x = max(y - length + 1, lo)
            out.append((x, y))
            y, length = x - 1, length * 2
    return out


def _phrase_geometry(n, positions):
    """Copy-phrase intervals around the attractor positions, grouped by gap.

    Each gap between consecutive positions is split at its midpoint; each half
    is filled outward from its own attractor position, so any phrase sits at
    distance at least its length from every attractor position.
    """
    gaps = []
    first, last = positions[0], positions[-1]
    gaps.append((first, _run(first, 1, first - 1, -1)))
    for i1, i2 in zip(positions, positions[1:]):
        m = (i1 + i2) // 2
        gaps.append((i2 - i1, _run(i1, i1 + 1, m, +1) + _run(i2, m + 1, i2 - 1, -1)))
    gaps.append((n + 1 - last, _run(last, last + 1, n, +1)))
    return gaps


def parse_from_attractor(t: Text, idx: SuffixIndex, pa: PaddedAttractor) -> BidirectionalParse:
    """Bidirectional parse: explicit characters on attractor positions, copies elsewhere.

    Every copy's source is the leftmost occurrence crossing an attractor position.
    """
    s = t.string
    g = pa.padded
    dirs = [AssignDir(p, s[p - 1]) for p in g.positions]
    for _, phrases in _phrase_geometry(t.n, g.positions):
        for x, y in phrases:
            src = find_occurrence_crossing(t, idx, (x, y), g)
            if src is None or src == (x, y):
                raise AttractorError(f"no usable source for phrase [{x}..{y}]")
            dirs.append(CopyDir((x, y), src))
    dirs.sort(key=lambda d: d.pos if isinstance(d, AssignDir) else d.dst[0])
    return BidirectionalParse(t.n, tuple(dirs))


def gap_directive_counts(pa: PaddedAttractor, n: int) -> list:
    """(gap, directives charged to the gap): its copy phrases plus the closing assign."""
    gaps = _phrase_geometry(n, pa.padded.positions)
    out = [(gap, len(phrases) + 1) for gap, phrases in gaps[:-1]]
    gap, phrases = gaps[-1]
    out.append((gap, len(phrases)))
    return out


def source_shrinking_violations(parse: BidirectionalParse) -> list:
    """Copy phrases whose source touches a phrase that is not strictly shorter (2^(e-1) rule)."""
    owner = [0] * (parse.n + 1)  # length of the phrase covering each position; 0 = explicit
    for d in parse.directives:
        if isinstance(d, CopyDir):
            for p in range(d.dst[0], d.dst[1] + 1):
                owner[p] = d.dst[1] - d.dst[0] + 1
    bad = []
    for d in parse.directives:
        if isinstance(d, CopyDir):
            length = d.dst[1] - d.dst[0] + 1
            cap = 1 << max(0, (length - 1).bit_length() - 1)  # 2^(e-1) for length in (2^(e-1), 2^e]
            if length == 1:
                cap = 0
            if any(owner[p] > cap for p in range(d.src[0], d.src[1] + 1)):
                bad.append(d)
    return bad


def height_bound(max_gap: int) -> int:
    return math.ceil(math.log2(max_gap)) + 2 if max_gap > 1 else 2


# --------------------------------------------------------------------- SLP


@dataclass(frozen=True)
class Slp(RlGrammar):
    """Straight-line program built level by level; 3-child blocks use one helper rule."""

    levels: dict = field(default_factory=dict)
    phrase_costs: tuple = ()  # (x, y, new nonterminals charged to phrase [x..y])


class _Forest:
    """Hash-consed level blocks plus the current maximal processed regions."""

    def __init__(self):
        self.table = {}
        self.children = {}
        self.level = {}
        self.length = {}
        self.created = 0
        self.region_starts = []
        self.regions = {}  # start -> (end, root)

    def lvl(self, sym):
        return 0 if isinstance(sym, str) else self.level[sym]

    def size(self, sym):
        return 1 if isinstance(sym, str) else self.length[sym]

    def node(self, kids):
        kids = tuple(kids)
        got = self.table.get(kids)
        if got is None:
            assert 2 <= len(kids) <= 3 and len({self.lvl(k) for k in kids}) == 1, kids
            got = len(self.table) + 1
            self.table[kids] = got
            self.children[got] = kids
            self.level[got] = self.lvl(kids[0]) + 1
            self.length[got] = sum(self.size(k) for k in kids)
            self.created += 1
        return got

    def block(self, items):
        """Group a run of >= 2 same-level symbols into blocks of 2 (last one 3 if odd)."""
        k = len(items)
        assert k >= 2
        cuts = list(range(0, k - 3, 2)) + [k - 3 if k % 2 else k - 2]
        bounds = cuts + [k]
        return [self.node(items[a:b]) for a, b in zip(bounds, bounds[1:])]

    def collapse(self, items):
        while len(items) > 1:
            items = self.block(items)
        return items[0]

    # 2-3 tree concatenation; every node keeps all leaves at equal depth
    def _split(self, kids):
        return [self.node(kids)] if len(kids) <= 3 else [self.node(kids[:2]), self.node(kids[2:])]

    def _insert_left(self, node, sym):
        kids = self.children[node]
        if self.level[node] == self.lvl(sym) + 1:
            return self._split((sym, *kids))
        return self._split((*self._insert_left(kids[0], sym), *kids[1:]))

    def _insert_right(self, node, sym):
        kids = self.children[node]
        if self.level[node] == self.lvl(sym) + 1:
            return self._split((*kids, sym))
        return self._split((*kids[:-1], *self._insert_right(kids[-1], sym)))

    def join(self, a, b):
        la, lb = self.lvl(a), self.lvl(b)
        if la == lb:
            return self.node((a, b))
        parts = self._insert_left(b, a) if la < lb else self._insert_right(a, b)
        return parts[0] if len(parts) == 1 else self.node(parts)

    # regions
    def add_region(self, start, end, root):
        insort(self.region_starts, start)
        self.regions[start] = (end, root)

    def pop_region(self, start):
        self.region_starts.remove(start)
        return self.regions.pop(start)

    def region_at(self, p):
        k = bisect_right(self.region_starts, p) - 1
        if k < 0:
            return None
        start = self.region_starts[k]
        end, root = self.regions[start]
        return (start, end, root) if p <= end else None

    def structure(self, root, start, lo, hi):
        """Per level, the blocks of ``root`` (spanning from ``start``) meeting [lo..hi].

        Entries are [start, end, symbol, parent_index]; parents index the next level.
        """
        top = self.lvl(root)
        levels = [[] for _ in range(top + 1)]

        def visit(sym, s, parent):
            lev = self.lvl(sym)
            e = s + self.size(sym) - 1
            levels[lev].append([s, e, sym, parent])
            if lev == 0:
                return
            me = len(levels[lev]) - 1
            for kid in self.children[sym]:
                ke = s + self.size(kid) - 1
                if ke >= lo and s <= hi:
                    visit(kid, s, me)
                s = ke + 1

        visit(root, start, None)
        return levels


def _copy_phrase(forest: _Forest, s: str, x: int, y: int, sx: int, sy: int) -> object:
    """Build the nonterminal for phrase [x..y] by copying the blocking of its source [sx..sy]."""
    region = forest.region_at(sx)
    if region is None or region[1] < sy:
        raise AttractorError(f"source [{sx}..{sy}] of phrase [{x}..{y}] is not fully processed")
    rstart, _, root = region
    levels = forest.structure(root, rstart, sx, sy)
    # items: (symbol, index into levels[k] or None)
    seq = [(s[p - 1], k) for k, p in enumerate(range(sx, sy + 1))]
    first0 = next(i for i, ent in enumerate(levels[0]) if ent[0] == sx)
    seq = [(sym, first0 + k) for sym, k in seq]
    k = 0
    while len(seq) > 1:
        cur = levels[k]
        nxt = levels[k + 1] if k + 1 < len(levels) else []
        # how many aligned children of each parent survive in seq
        present = {}
        for sym, ref in seq:
            if ref is not None and cur[ref][3] is not None:
                present[cur[ref][3]] = present.get(cur[ref][3], 0) + 1
        units = []  # ["copy", parent_ref, kids] or ["loose", item]
        i = 0
        while i < len(seq):
            sym, ref = seq[i]
            par = cur[ref][3] if ref is not None else None
            if par is not None:
                ps, pe, psym, _ = nxt[par]
                width = len(forest.children[psym])
                if sx <= ps and pe <= sy and present[par] == width and i + width <= len(seq) and \
                        all(seq[i + w][1] is not None and cur[seq[i + w][1]][3] == par for w in range(width)):
                    units.append(["copy", par, [it[0] for it in seq[i:i + width]]])
                    i += width
                    continue
            units.append(["loose", sym])
            i += 1
        # a lone loose symbol absorbs the children of a neighbouring copied block
        while True:
            lone = None
            for u in range(len(units)):
                if units[u][0] == "loose":
                    left_loose = u > 0 and units[u - 1][0] == "loose"
                    right_loose = u + 1 < len(units) and units[u + 1][0] == "loose"
                    if not left_loose and not right_loose:
                        lone = u
                        break
            if lone is None or len(units) == 1:
                break
            v = lone + 1 if lone + 1 < len(units) else lone - 1
            units[v:v + 1] = [["loose", kid] for kid in units[v][2]]
        new_seq = []
        u = 0
        while u < len(units):
            if units[u][0] == "copy":
                new_seq.append((nxt[units[u][1]][2], units[u][1]))
                u += 1
                continue
            w = u
            while w < len(units) and units[w][0] == "loose":
                w += 1
            new_seq.extend((blk, None) for blk in forest.block([it[1] for it in units[u:w]]))
            u = w
        seq = new_seq
        k += 1
    return seq[0][0]


def slp_from_attractor(t: Text, idx: SuffixIndex, pa: PaddedAttractor, parse: BidirectionalParse | None = None) -> Slp:
    """SLP from the attractor-derived parse, processing phrases by increasing length.

    Each maximal processed region is kept as one nonterminal whose blocks at
    level k group 2 or 3 blocks of level k-1.
    """
    s = t.string
    parse = parse or parse_from_attractor(t, idx, pa)
    short = [False] * (t.n + 2)
    longer = []
    for d in parse.directives:
        if isinstance(d, AssignDir):
            short[d.pos] = True
        elif d.dst[0] == d.dst[1]:
            short[d.dst[0]] = True
        else:
            longer.append(d)
    forest = _Forest()
    costs = []
    p = 1
    while p <= t.n:
        if not short[p]:
            p += 1
            continue
        q = p
        while short[q + 1]:
            q += 1
        before = forest.created
        root = forest.collapse(list(s[p - 1:q]))
        forest.add_region(p, q, root)
        share = -(-(forest.created - before) // (q - p + 1))
        costs.extend((r, r, share) for r in range(p, q + 1))
        p = q + 1
    longer.sort(key=lambda d: (d.dst[1] - d.dst[0], d.dst[0]))
    for d in longer:
        (x, y), (sx, sy) = d.dst, d.src
        before = forest.created
        root = _copy_phrase(forest, s, x, y, sx, sy)
        start, end = x, y
        left = forest.region_at(x - 1)
        if left is not None:
            forest.pop_region(left[0])
            root, start = forest.join(left[2], root), left[0]
        right = forest.region_at(y + 1)
        if right is not None:
            forest.pop_region(right[0])
            root, end = forest.join(root, right[2]), right[1]
        forest.add_region(start, end, root)
        costs.append((x, y, forest.created - before))
    (start, (end, root)), = forest.regions.items()
    assert (start, end) == (1, t.n)
    return _to_slp(forest, root, tuple(sorted(costs)))


def _to_slp(forest: _Forest, root, costs) -> Slp:
    if isinstance(root, str):
        return Slp({}, root, {}, costs)
    rules, levels = {}, {}
    helper = {}
    order = []
    seen = set()
    stack = [root]
    while stack:
        x = stack.pop()
        if isinstance(x, str) or x in seen:
            continue
        seen.add(x)
        order.append(x)
        stack.extend(forest.children[x])
    next_id = max(order) + 1
    for x in order:
        kids = forest.children[x]
        levels[x] = forest.level[x]
        if len(kids) == 2:
            rules[x] = Pair(*kids)
        else:
            key = kids[1:]
            if key not in helper:
                helper[key] = next_id
                rules[next_id] = Pair(*key)
                levels[next_id] = forest.level[x]
                next_id += 1
            rules[x] = Pair(kids[0], helper[key])
    return Slp(rules, root, levels, costs)


def slp_cost_bound(max_gap: int) -> int:
    return 4 * ((math.ceil(math.log2(max_gap)) if max_gap > 1 else 0) + 2)


def check_parse(t: Text, parse: BidirectionalParse) -> int:
    """Decode and compare; returns the height."""
    text, h = decode_macro(parse)
    if text.raw != t.raw:
        raise AttractorError("parse does not decode to the text")
    return h


# ----------------------------------------------------------------- report


@dataclass(frozen=True)
class MeasuresReport:
    n: int
    sigma: int
    z: int
    r: int
    e: int
    sub_count: int
    greedy_gamma: int | None
    gamma_star: int | None
    gamma_used: int
    gamma_source: str
    max_gap: int
    parse_size: int
    parse_height: int
    slp_size: int
    parse_ratio: float | None
    slp_ratio: float | None

    def to_json(self) -> dict:
        return dict(self.__dict__)

    def table(self) -> str:
        width = max(len(k) for k in self.__dict__)
        return "\n".join(f"{k:<{width}}  {v}" for k, v in self.__dict__.items())


def _ratio(size, gamma, n, power):
    lg = math.log2(n / gamma)
    return size / (gamma * lg ** power) if lg > 0 else None


def measures_report(t: Text, brute_limit: int = 14, greedy_limit: int = 20000) -> MeasuresReport:
    """Compressor sizes and derived parse/SLP sizes from the smallest attractor at hand."""
    from .compressors import bwt_runs, induced_attractors, lz77_parse
    from .textcore import count_distinct_substrings, smallest_attractor_bruteforce
    from .treeattr import greedy_string_attractor

    idx = build_index(t)
    cands = [g for g, _ in induced_attractors(t, idx).values()]
    greedy = greedy_string_attractor(t) if t.n <= greedy_limit else None
    brute = smallest_attractor_bruteforce(t, idx, brute_limit) if t.n <= brute_limit else None
    if greedy is not None:
        cands.append(greedy)
    best = brute or min(cands, key=lambda g: g.gamma)
    pa = pad_attractor(t, best, idx)
    parse = parse_from_attractor(t, idx, pa)
    height = check_parse(t, parse)
    slp = slp_from_attractor(t, idx, pa, parse)
    gamma = best.gamma
    return MeasuresReport(
        n=t.n,
        sigma=t.sigma,
        z=lz77_parse(t, idx).z,
        r=bwt_runs(t, idx).r,
        e=idx.e,
        sub_count=count_distinct_substrings(idx),
        greedy_gamma=greedy.gamma if greedy else None,
        gamma_star=brute.gamma if brute else None,
        gamma_used=gamma,
        gamma_source=best.provenance,
        max_gap=pa.max_gap,
        parse_size=parse.b,
        parse_height=height,
        slp_size=slp.g,
        parse_ratio=_ratio(parse.b, gamma, t.n, 1),
        slp_ratio=_ratio(slp.g, gamma, t.n, 2),
    )
