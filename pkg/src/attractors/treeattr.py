"""Path attractors on edge-labeled rooted trees, greedy set-cover approximation, and the
set-cover to tree reduction used to generate hard instances."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import cached_property

from . import setcover
from .errors import EdgeNotInTree, EmptyUniverse, FormatError, InputTooLarge
from .textcore import AttractorSet, Text, tree_edges


@dataclass(frozen=True)
class LabeledTree:
    """Rooted tree with labeled edges ``(parent, child, label)``; edge ids are list indices."""

    root: int
    edges: tuple

    def __post_init__(self):
        if not self.edges:
            raise FormatError("tree has no edges")
        parent = {}
        for k, (p, c, lab) in enumerate(self.edges):
            if c in parent or c == self.root:
                raise FormatError(f"node {c} has more than one parent")
            if not isinstance(lab, str) or not lab:
                raise FormatError(f"edge {k} has an empty label")
            parent[c] = p
        seen = {self.root}
        kids = {}
        for p, c, _ in self.edges:
            kids.setdefault(p, []).append(c)
        stack = [self.root]
        while stack:
            for c in kids.get(stack.pop(), ()):
                seen.add(c)
                stack.append(c)
        if len(seen) != len(parent) + 1:
            raise FormatError("tree is not connected to its root")

    @classmethod
    def path(cls, s: str) -> "LabeledTree":
        """Path graph of a string: edge k-1 carries character k."""
        return cls(0, tuple((k, k + 1, ch) for k, ch in enumerate(s)))

    @property
    def n(self) -> int:
        return len(self.edges)

    @cached_property
    def nodes(self) -> list:
        return [self.root] + [c for _, c, _ in self.edges]

    @cached_property
    def edge_into(self) -> dict:
        return {c: k for k, (_, c, _) in enumerate(self.edges)}

    def to_json(self) -> dict:
        return {"root": self.root, "edges": [{"parent": p, "child": c, "label": lab} for p, c, lab in self.edges]}

    @classmethod
    def from_json(cls, obj) -> "LabeledTree":
        if isinstance(obj, (str, bytes)):
            obj = json.loads(obj)
        try:
            return cls(obj["root"], tuple((e["parent"], e["child"], str(e["label"])) for e in obj["edges"]))
        except (KeyError, TypeError) as exc:
            raise FormatError(f"bad tree JSON: {exc}") from exc


@dataclass(frozen=True)
class PathAttractor:
    edges: frozenset

    @classmethod
    def make(cls, edges) -> "PathAttractor":
        return cls(frozenset(int(e) for e in edges))

    @property
    def k(self) -> int:
        return len(self.edges)

    def sorted(self) -> list:
        return sorted(self.edges)

    def to_json(self) -> dict:
        return {"edges": self.sorted(), "k": self.k}


@dataclass(frozen=True)
class SetCoverInstance:
    universe: int
    sets: tuple

    def __post_init__(self):
        if self.universe < 1:
            raise EmptyUniverse("universe is empty")
        covered = set()
        for s in self.sets:
            for u in s:
                if not 0 <= u < self.universe:
                    raise FormatError(f"element {u} outside [0..{self.universe - 1}]")
                covered.add(u)
        if len(covered) != self.universe:
            raise FormatError("sets do not cover the universe")

    @classmethod
    def make(cls, universe, sets) -> "SetCoverInstance":
        return cls(int(universe), tuple(tuple(sorted(set(s))) for s in sets))

    @property
    def t(self) -> int:
        return len(self.sets)

    def padded(self) -> "SetCoverInstance":
        """Grow the universe to the next power of two with one extra set holding the new elements."""
        size = 1 << (self.universe - 1).bit_length()
        if size == self.universe:
            return self
        return SetCoverInstance.make(size, [*self.sets, range(self.universe, size)])

    def masks(self) -> list:
        return [sum(1 << u for u in s) for s in self.sets]

    def min_cover(self) -> list:
        """Smallest cover (0-based set indices), lexicographically first among optima."""
        return setcover.smallest_cover(self.masks(), (1 << self.universe) - 1)

    def to_json(self) -> dict:
        return {"universe": self.universe, "sets": [list(s) for s in self.sets]}

    @classmethod
    def from_json(cls, obj) -> "SetCoverInstance":
        if isinstance(obj, (str, bytes)):
            obj = json.loads(obj)
        try:
            universe = obj["universe"]
            sets = obj["sets"]
        except (KeyError, TypeError) as exc:
            raise FormatError(f"bad set-cover JSON: {exc}") from exc
        if not isinstance(universe, int) or universe < 1:
            raise EmptyUniverse("universe is empty")
        return cls.make(universe, sets)


# ------------------------------------------------------- reversed-path trie


@dataclass(frozen=True)
class CoverGraph:
    """Incidence between tree edges and compacted-trie edges of reversed root paths.

    ``cover[k]`` is the bitmask of tree edges crossed by some occurrence of the
    path spelled by trie edge k's string (up to and including its first label).
    """

    tree: LabeledTree
    order: tuple  # tree nodes (non-root) sorted by reversed root path
    trie: tuple  # Edge tuples over rows of ``order``
    cover: tuple

    @property
    def N(self) -> int:
        return len(self.trie)

    def sets(self) -> list:
        """Per tree edge, the bitmask of trie edges it covers."""
        return setcover.transpose(list(self.cover), self.tree.n)

    def degrees(self) -> list:
        return [m.bit_count() for m in self.sets()]

    def path_labels(self, k: int) -> tuple:
        """Downward label sequence of trie edge k's string, at its first occurrence row."""
        e = self.trie[k]
        tr = self.tree
        parent = {c: (p, lab) for p, c, lab in tr.edges}
        v = self.order[e.lo]
        labels = []
        for _ in range(e.depth + 1):
            p, lab = parent[v]
            labels.append(lab)
            v = p
        return tuple(reversed(labels)), self.order[e.lo]


def cover_graph(tree: LabeledTree) -> CoverGraph:
    """Sort reversed root paths by prefix doubling over ancestors, then read the trie off the LCPs."""
    parent = {c: p for p, c, _ in tree.edges}
    label = {c: lab for _, c, lab in tree.edges}
    depth = {tree.root: 0}
    order_dfs = [tree.root]
    kids = {}
    for p, c, _ in tree.edges:
        kids.setdefault(p, []).append(c)
    for v in order_dfs:
        for c in kids.get(v, ()):
            depth[c] = depth[v] + 1
            order_dfs.append(c)
    nodes = order_dfs[1:]
    idx = {v: i for i, v in enumerate(nodes)}
    m = len(nodes)
    root = -1  # ancestor pointer past the top

    def up_of(i):
        p = parent[nodes[i]]
        return root if p == tree.root else idx[p]

    ups = [[up_of(i) for i in range(m)]]
    alphabet = {lab: r + 1 for r, lab in enumerate(sorted(set(label.values())))}
    ranks = [[alphabet[label[v]] for v in nodes]]
    maxdepth = max(depth.values())
    step = 1
    while step < maxdepth:
        r, u = ranks[-1], ups[-1]
        keys = [(r[i], r[u[i]] if u[i] != root else 0) for i in range(m)]
        dense = {k: j + 1 for j, k in enumerate(sorted(set(keys)))}
        ranks.append([dense[k] for k in keys])
        ups.append([u[u[i]] if u[i] != root else root for i in range(m)])
        step *= 2
    final = ranks[-1]
    rows = sorted(range(m), key=lambda i: (final[i], nodes[i]))

    def lcp(a, b):
        total = 0
        for lev in range(len(ranks) - 1, -1, -1):
            if a == root or b == root:
                break
            if ranks[lev][a] == ranks[lev][b]:
                span = 1 << lev
                if depth[nodes[a]] < span or depth[nodes[b]] < span:
                    return total + min(depth[nodes[a]], depth[nodes[b]])
                total += span
                a, b = ups[lev][a], ups[lev][b]
        return total

    lcps = [0] + [lcp(rows[q - 1], rows[q]) for q in range(1, m)]
    lengths = [depth[nodes[i]] for i in rows]
    trie = tree_edges(list(range(m)), lcps, lengths)

    # ancestor masks: edges on the root path of each node
    anc = {tree.root: 0}
    for v in order_dfs[1:]:
        anc[v] = anc[parent[v]] | (1 << tree.edge_into[v])

    def ancestor(i, dist):
        lev = 0
        while dist and i != root:
            if dist & 1:
                i = ups[lev][i]
            dist >>= 1
            lev += 1
        return i

    cover = []
    for e in trie:
        length = e.depth + 1
        mask = 0
        for q in range(e.lo, e.hi + 1):
            i = rows[q]
            a = ancestor(i, length)
            mask |= anc[nodes[i]] ^ (anc[nodes[a]] if a != root else 0)
        cover.append(mask)
    return CoverGraph(tree, tuple(nodes[i] for i in rows), tuple(trie), tuple(cover))


# ------------------------------------------------------------- operations


@dataclass(frozen=True)
class PathVerdict:
    valid: bool
    witness: tuple | None = None  # label sequence of an uncovered path
    end_node: int | None = None

    def __bool__(self):
        return self.valid


def _check_edges(tree: LabeledTree, a: PathAttractor) -> int:
    mask = 0
    for k in a.edges:
        if not 0 <= k < tree.n:
            raise EdgeNotInTree(f"edge {k} not in tree", edge=k)
        mask |= 1 << k
    return mask


def verify_path_attractor(tree: LabeledTree, a: PathAttractor, cg: CoverGraph | None = None) -> PathVerdict:
    """Every trie edge string must have an occurrence crossing a chosen edge."""
    mask = _check_edges(tree, a)
    cg = cg or cover_graph(tree)
    for k, cov in enumerate(cg.cover):
        if not cov & mask:
            labels, end = cg.path_labels(k)
            return PathVerdict(False, labels, end)
    return PathVerdict(True)


def greedy_path_attractor(tree: LabeledTree, cg: CoverGraph | None = None) -> PathAttractor:
    """Greedy set cover over the cover graph; ties go to the smallest edge id."""
    cg = cg or cover_graph(tree)
    return PathAttractor.make(setcover.greedy_cover(cg.sets(), (1 << cg.N) - 1))


def bruteforce_path_attractor(tree: LabeledTree, limit: int | None = 16, cg: CoverGraph | None = None) -> PathAttractor:
    """Minimum path attractor; lexicographically smallest edge ids among optima."""
    if limit is not None and tree.n > limit:
        raise InputTooLarge(f"tree has {tree.n} edges, limit {limit}")
    cg = cg or cover_graph(tree)
    distinct_labels = len({lab for _, _, lab in tree.edges})
    return PathAttractor.make(setcover.smallest_cover(cg.sets(), (1 << cg.N) - 1, lower=distinct_labels))


def greedy_bound(cg: CoverGraph, optimum: int) -> int:
    return math.ceil(math.log(cg.N)) * optimum


def greedy_string_attractor(t: Text) -> AttractorSet:
    """Greedy attractor of a string via its path graph (edge k-1 is position k)."""
    a = greedy_path_attractor(LabeledTree.path(t.string))
    return AttractorSet.make([k + 1 for k in a.edges], "greedy")


def tree_from_setcover(sc: SetCoverInstance):
    """Reduction tree of a (padded) set-cover instance; returns (tree, number of sets after padding).

    The root has one child per set via an edge labeled ``s<i>``; that child
    has two children via edges 0 and 1, each rooting a binary trie of the
    m-bit representations of the set's elements.
    """
    sc = sc.padded()
    m = sc.universe.bit_length() - 1
    edges = []
    counter = [0]

    def new():
        counter[0] += 1
        return counter[0]

    def trie(top, elems):
        nodes = {(): top}
        for u in elems:
            bits = format(u, f"0{m}b") if m else ""
            for d in range(1, m + 1):
                key = tuple(bits[:d])
                if key not in nodes:
                    nodes[key] = new()
                    edges.append((nodes[key[:-1]], nodes[key], bits[d - 1]))

    for i, s in enumerate(sc.sets, start=1):
        c = new()
        edges.append((0, c, f"s{i}"))
        for bit in "01":
            cx = new()
            edges.append((c, cx, bit))
            trie(cx, s)
    return LabeledTree(0, tuple(edges)), sc.t
