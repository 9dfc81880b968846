"""Naive reference implementations, written directly from the definitions.

None of them touch suffix arrays or set-cover machinery, so agreement with the
package is evidence rather than a tautology.
"""
from itertools import combinations


def substrings(s):
    return {s[i:j] for i in range(len(s)) for j in range(i + 1, len(s) + 1)}


def occurrences(s, w):
    return [i + 1 for i in range(len(s) - len(w) + 1) if s.startswith(w, i)]


def is_attractor(s, positions):
    """Every distinct substring has an occurrence [i..j] with some position in [i..j]."""
    pos = set(positions)
    for w in substrings(s):
        if not any(any(p in pos for p in range(i, i + len(w))) for i in occurrences(s, w)):
            return False
    return True


def smallest_attractor(s):
    """Lexicographically first among minimum-size attractors."""
    n = len(s)
    for k in range(1, n + 1):
        for combo in combinations(range(1, n + 1), k):
            if is_attractor(s, combo):
                return combo
    raise AssertionError("unreachable")


def lz77(s):
    """Greedy factorization: longest copy of an earlier, non-overlapping substring; leftmost source."""
    out, pos = [], 0
    while pos < len(s):
        best_len, best_src = 0, None
        for length in range(1, len(s) - pos + 1):
            k = s[:pos].find(s[pos:pos + length])
            if k < 0 or k + length > pos:
                break
            best_len, best_src = length, k + 1
        if best_len == 0:
            out.append(("lit", s[pos]))
            pos += 1
        else:
            out.append(("copy", best_src, best_len))
            pos += best_len
    return out


def bwt(s):
    t = s + "\0"
    rows = sorted(t[i:] + t[:i] for i in range(len(t)))
    return "".join(r[-1] for r in rows).replace("\0", "$")


def runs(x):
    return sum(1 for i in range(len(x)) if i == 0 or x[i] != x[i - 1])


def suffix_tree_edges(s):
    """Edge count of the compacted trie of all suffixes, with string ends made explicit."""
    subs = substrings(s)
    explicit = {""}
    for w in subs:
        nexts = {s[i + len(w) - 1] for i in occurrences(s, w) if i + len(w) - 1 < len(s)}
        if len(nexts) >= 2 or s.endswith(w):
            explicit.add(w)
    return len(explicit) - 1


def distinct_kmers(s, k):
    return len({s[i:i + k] for i in range(len(s) - k + 1)})


def longest_repeat(s):
    best = 0
    for w in substrings(s):
        if len(occurrences(s, w)) >= 2:
            best = max(best, len(w))
    return best


def min_set_cover(universe, sets):
    for k in range(1, len(sets) + 1):
        for combo in combinations(range(len(sets)), k):
            if set().union(*(set(sets[i]) for i in combo)) >= set(range(universe)):
                return k
    raise AssertionError("no cover")


def tree_paths(edges, root):
    """All downward label sequences of a tree, as tuples, with the edge ids they use."""
    kids = {}
    for k, (p, c, lab) in enumerate(edges):
        kids.setdefault(p, []).append((c, lab, k))
    out = []

    def walk(v, labels, ids):
        for c, lab, k in kids.get(v, ()):
            out.append((labels + (lab,), ids + (k,)))
            walk(c, labels + (lab,), ids + (k,))

    starts = [root] + [c for _, c, _ in edges]
    for v in starts:
        walk(v, (), ())
    return out


def is_path_attractor(edges, root, chosen):
    chosen = set(chosen)
    hit = {}
    for labels, ids in tree_paths(edges, root):
        hit[labels] = hit.get(labels, False) or bool(chosen & set(ids))
    return all(hit.values())
