"""A-DAG: random access to a text stored as attractor-anchored levels of block pointers.

Level 0 cuts the text into blocks of length s_0 = ceil(n/gamma). Level i >= 1
keeps, around every attractor position p, a region of 4*tau half-blocks of
length h_i = ceil(s_i/2) with s_i = ceil(n/(gamma*tau^i)), plus 4*tau-1
half-blocks staggered by floor(h_i/2). Each (half-)block stores a coordinate
(off, j) of an occurrence of its content crossing attractor position j. The
deepest level stores the characters of every region explicitly, packed.
"""
from __future__ import annotations

import math
import struct
from bisect import bisect_left
from dataclasses import dataclass
from functools import lru_cache

from .errors import FormatError, InvalidAttractor, ParameterOutOfRange, RangeOutOfBounds
from .textcore import AttractorSet, SuffixIndex, Text, build_index, find_occurrence_crossing, verify_attractor

MAGIC = b"ADAG"
VERSION = 1
ABSENT = 0xFFFFFFFF
SPACE_CONSTANT = 16


def ceil_log(tau: int, n: int, gamma: int) -> int:
    """Smallest c >= 0 with tau^c * gamma >= n."""
    c, v = 0, gamma
    while v < n:
        v *= tau
        c += 1
    return c


@dataclass(frozen=True)
class ADagConfig:
    n: int
    gamma: int
    sigma: int
    tau: int
    w: int
    bits: int  # bits per packed symbol
    alpha: int
    istar: int  # 0 means the whole text is stored packed

    @classmethod
    def make(cls, n, gamma, sigma, tau=2, w=64) -> "ADagConfig":
        if tau < 2:
            raise ParameterOutOfRange(f"tau={tau} must be at least 2")
        if w < 1:
            raise ParameterOutOfRange(f"w={w} must be positive")
        bits = max(1, math.ceil(math.log2(sigma))) if sigma > 1 else 1
        alpha = max(1, math.floor(w * math.log(n / gamma) / (math.log(tau) * bits) + 1e-9))
        if n / gamma < alpha:
            return cls(n, gamma, sigma, tau, w, bits, alpha, 0)
        i = 1
        while cls._s(n, gamma, tau, i) >= 4 * alpha:
            i += 1
        return cls(n, gamma, sigma, tau, w, bits, alpha, i)

    @staticmethod
    def _s(n, gamma, tau, i):
        return -(-n // (gamma * tau ** i))

    @property
    def degenerate(self) -> bool:
        return self.istar == 0

    def s(self, i: int) -> int:
        return self._s(self.n, self.gamma, self.tau, i)

    def h(self, i: int) -> int:
        return -(-self.s(i) // 2)

    @property
    def top_len(self) -> int:
        return self.s(0)

    def slots(self) -> int:
        """Half-blocks per attractor position and level: aligned then staggered."""
        return 8 * self.tau - 1


@dataclass(frozen=True)
class Leaf:
    start: int  # 1-based text position of the first stored character
    length: int
    packed: int  # symbol k occupies bits [k*bits, (k+1)*bits)


@dataclass(frozen=True)
class ADag:
    config: ADagConfig
    alphabet: bytes  # byte value of each symbol code, in code order
    positions: tuple  # sorted attractor positions
    top: tuple  # (off, j-index) per level-0 block
    levels: tuple  # levels[i-1][j-index] = tuple of (off, j-index) or None per slot
    leaves: tuple  # one Leaf per attractor position (or a single Leaf when degenerate)

    @property
    def n(self) -> int:
        return self.config.n

    @property
    def gamma(self) -> int:
        return len(self.positions)

    def region_start(self, i: int, p: int) -> int:
        """Unclipped first position of the level-i region around attractor position p."""
        return p - 2 * self.config.tau * self.config.h(i) + 1

    def half_block(self, i: int, p: int, slot: int):
        """Clipped interval [u..v] of a half-block, or None when it lies outside the text."""
        h = self.config.h(i)
        aligned = 4 * self.config.tau
        if slot < aligned:
            a = self.region_start(i, p) + slot * h
        else:
            if h < 2:
                return None
            a = self.region_start(i, p) + h // 2 + (slot - aligned) * h
        u, v = max(1, a), min(self.n, a + h - 1)
        return (u, v) if u <= v else None

    def locate(self, i: int, p: int, a: int, length: int):
        """Slot of a level-i half-block around p fully containing [a..a+length-1], or None."""
        h = self.config.h(i)
        x = a - self.region_start(i, p)
        k = x // h
        if 0 <= x and (x + length - 1) // h == k < 4 * self.config.tau:
            return k
        if h >= 2:
            y = x - h // 2
            k = y // h
            if 0 <= y and (y + length - 1) // h == k < 4 * self.config.tau - 1:
                return 4 * self.config.tau + k
        return None


# ------------------------------------------------------------------ build


def _pack(codes, bits) -> int:
    v = 0
    for k, c in enumerate(codes):
        v |= c << (k * bits)
    return v


def _coordinate(t, idx, g, positions, u, v):
    q, _ = find_occurrence_crossing(t, idx, (u, v), g)
    jr = bisect_left(positions, q)
    j = positions[jr]
    length = v - u + 1
    assert j <= q + length - 1, "occurrence must cross the attractor"
    return (q - j + length - 1, jr)


def build_adag(t: Text, idx: SuffixIndex | None, g: AttractorSet, tau: int = 2, w: int = 64) -> ADag:
    idx = idx or build_index(t)
    cfg = ADagConfig.make(t.n, g.gamma, t.sigma, tau, w)
    if not verify_attractor(t, idx, g):
        raise InvalidAttractor("the A-DAG needs a verified attractor")
    alphabet = bytes(sorted(t.rank_map))
    codes = [c - 1 for c in t.chars]
    pos = g.positions
    if cfg.degenerate:
        leaf = Leaf(1, t.n, _pack(codes, cfg.bits))
        return ADag(cfg, alphabet, pos, (), (), (leaf,))
    s0 = cfg.top_len
    top = tuple(_coordinate(t, idx, g, pos, u, min(u + s0 - 1, t.n)) for u in range(1, t.n + 1, s0))
    shell = ADag(cfg, alphabet, pos, (), (), ())
    levels = []
    for i in range(1, cfg.istar):
        per_p = []
        for p in pos:
            row = []
            for slot in range(cfg.slots()):
                hb = shell.half_block(i, p, slot)
                row.append(None if hb is None else _coordinate(t, idx, g, pos, *hb))
            per_p.append(tuple(row))
        levels.append(tuple(per_p))
    leaves = []
    half = 2 * tau * cfg.h(cfg.istar)
    for p in pos:
        u, v = max(1, p - half + 1), min(t.n, p + half)
        leaves.append(Leaf(u, v - u + 1, _pack(codes[u - 1:v], cfg.bits)))
    return ADag(cfg, alphabet, pos, top, tuple(levels), tuple(leaves))


# ---------------------------------------------------------------- extract


@dataclass
class ExtractStats:
    units: int = 0
    subqueries: int = 0
    max_hops: int = 0
    fallbacks: int = 0


@lru_cache(maxsize=64)
def _chunk_table(alphabet: bytes, bits: int):
    """Decoded strings for every group of ``per`` packed symbols (at most 16 bits per group)."""
    per = max(1, 16 // bits)
    mask = (1 << bits) - 1
    table = []
    for v in range(1 << (per * bits)):
        table.append(bytes(alphabet[min((v >> (k * bits)) & mask, len(alphabet) - 1)] for k in range(per)).decode("latin-1"))
    return per, table


def _read(d: ADag, leaf: Leaf, a: int, length: int) -> str:
    bits = d.config.bits
    per, table = _chunk_table(d.alphabet, bits)
    width = per * bits
    mask = (1 << width) - 1
    x = leaf.packed >> ((a - leaf.start) * bits)
    x &= (1 << (length * bits)) - 1
    parts = []
    for _ in range(-(-length // per)):
        parts.append(table[x & mask])
        x >>= width
    return "".join(parts)[:length]


def _hop(d: ADag, coord, u: int, v: int, a: int) -> int:
    """Position in the next level of text position ``a`` inside block [u..v]."""
    off, jr = coord
    start = d.positions[jr] - (v - u + 1) + 1 + off
    return start + (a - u)


def _descend(d: ADag, level: int, jr: int, a: int, length: int, hops: int, stats: ExtractStats) -> str:
    cfg = d.config
    p = d.positions[jr]
    if level == cfg.istar:
        stats.max_hops = max(stats.max_hops, hops)
        leaf = d.leaves[jr]
        assert leaf.start <= a and a + length - 1 < leaf.start + leaf.length
        return _read(d, leaf, a, length)
    slot = d.locate(level, p, a, length)
    if slot is None:
        # containment failed: split at the next aligned cut and descend both parts
        stats.fallbacks += 1
        h = cfg.h(level)
        x = a - d.region_start(level, p)
        cut = d.region_start(level, p) + (x // h + 1) * h
        return _descend(d, level, jr, a, cut - a, hops, stats) + _descend(d, level, jr, cut, a + length - cut, hops, stats)
    u, v = d.half_block(level, p, slot)
    coord = d.levels[level - 1][jr][slot]
    return _descend(d, level + 1, coord[1], _hop(d, coord, u, v, a), length, hops + 1, stats)


def _unit(d: ADag, a: int, length: int, stats: ExtractStats) -> str:
    cfg = d.config
    if cfg.degenerate:
        stats.subqueries += 1
        return _read(d, d.leaves[0], a, length)
    s0 = cfg.top_len
    b = (a - 1) // s0
    end = a + length - 1
    if (end - 1) // s0 != b:
        split = (b + 1) * s0 + 1
        return _unit(d, a, split - a, stats) + _unit(d, split, end - split + 1, stats)
    stats.subqueries += 1
    u, v = b * s0 + 1, min((b + 1) * s0, cfg.n)
    coord = d.top[b]
    return _descend(d, 1, coord[1], _hop(d, coord, u, v, a), length, 1, stats)


def extract_with_stats(d: ADag, i: int, length: int):
    if length < 1 or i < 1 or i + length - 1 > d.n:
        raise RangeOutOfBounds(f"[{i}..{i + length - 1}] outside [1..{d.n}]")
    stats = ExtractStats()
    alpha = d.config.alpha
    parts = []
    for a in range(i, i + length, alpha):
        stats.units += 1
        parts.append(_unit(d, a, min(alpha, i + length - a), stats))
    return "".join(parts), stats


def extract(d: ADag, i: int, length: int) -> str:
    """T[i..i+length-1]."""
    return extract_with_stats(d, i, length)[0]


# ------------------------------------------------------------------ space


@dataclass(frozen=True)
class SpaceReport:
    levels: int
    coordinates: int
    coordinate_words: int
    attractor_words: int
    leaf_words: int
    total_words: int
    bound_words: int  # SPACE_CONSTANT * gamma * tau * (ceil(log_tau(n/gamma)) + 1) + leaf_words
    ratio: float  # (coordinate + attractor words) / (gamma * tau * (ceil(log) + 1))

    def to_json(self) -> dict:
        return dict(self.__dict__)


def space_report(d: ADag) -> SpaceReport:
    cfg = d.config
    coords = len(d.top) + sum(1 for lev in d.levels for row in lev for c in row if c is not None)
    leaf_words = sum(-(-leaf.length * cfg.bits // cfg.w) for leaf in d.leaves)
    unit = d.gamma * cfg.tau * (ceil_log(cfg.tau, cfg.n, d.gamma) + 1)
    cw = 2 * coords
    aw = d.gamma
    return SpaceReport(
        levels=cfg.istar,
        coordinates=coords,
        coordinate_words=cw,
        attractor_words=aw,
        leaf_words=leaf_words,
        total_words=cw + aw + leaf_words,
        bound_words=SPACE_CONSTANT * unit + leaf_words,
        ratio=(cw + aw) / unit,
    )


# ---------------------------------------------------------- serialization

_HEADER = struct.Struct("<4sHIIIIII")
_U32 = struct.Struct("<I")


def serialize(d: ADag) -> bytes:
    cfg = d.config
    out = bytearray(_HEADER.pack(MAGIC, VERSION, cfg.n, cfg.sigma, d.gamma, cfg.tau, cfg.w, cfg.istar))
    out += d.alphabet
    out += struct.pack(f"<{d.gamma}I", *d.positions)

    def coord(c):
        return struct.pack("<II", *(c if c is not None else (ABSENT, ABSENT)))

    out += _U32.pack(len(d.top))
    for c in d.top:
        out += coord(c)
    out += _U32.pack(len(d.levels))
    for lev in d.levels:
        for row in lev:
            for c in row:
                out += coord(c)
    out += _U32.pack(len(d.leaves))
    for leaf in d.leaves:
        nbytes = -(-leaf.length * cfg.bits // 8)
        out += struct.pack("<III", leaf.start, leaf.length, nbytes)
        out += leaf.packed.to_bytes(nbytes, "little")
    return bytes(out)


def deserialize(data: bytes) -> ADag:
    try:
        magic, version, n, sigma, gamma, tau, w, istar = _HEADER.unpack_from(data, 0)
        if magic != MAGIC or version != VERSION:
            raise FormatError("not an A-DAG file")
        at = _HEADER.size
        alphabet = bytes(data[at:at + sigma])
        at += sigma
        positions = struct.unpack_from(f"<{gamma}I", data, at)
        at += 4 * gamma
        cfg = ADagConfig.make(n, gamma, sigma, tau, w)
        if cfg.istar != istar:
            raise FormatError("header level count disagrees with parameters")

        def coords(count):
            nonlocal at
            vals = struct.unpack_from(f"<{2 * count}I", data, at)
            at += 8 * count
            return [None if vals[2 * k] == ABSENT else (vals[2 * k], vals[2 * k + 1]) for k in range(count)]

        (ntop,) = _U32.unpack_from(data, at)
        at += 4
        top = tuple(coords(ntop))
        (nlev,) = _U32.unpack_from(data, at)
        at += 4
        levels = []
        for _ in range(nlev):
            flat = coords(gamma * cfg.slots())
            levels.append(tuple(tuple(flat[r * cfg.slots():(r + 1) * cfg.slots()]) for r in range(gamma)))
        (nleaf,) = _U32.unpack_from(data, at)
        at += 4
        leaves = []
        for _ in range(nleaf):
            start, length, nbytes = struct.unpack_from("<III", data, at)
            at += 12
            if at + nbytes > len(data):
                raise FormatError("truncated leaf payload")
            leaves.append(Leaf(start, length, int.from_bytes(data[at:at + nbytes], "little")))
            at += nbytes
    except struct.error as exc:
        raise FormatError(f"truncated A-DAG file: {exc}") from exc
    if at != len(data):
        raise FormatError(f"{len(data) - at} trailing bytes")
    return ADag(cfg, alphabet, tuple(positions), top, tuple(levels), tuple(leaves))
