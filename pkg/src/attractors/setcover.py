"""Bitmask set-cover helpers shared by the string and tree attractor code.

A cover instance is a list ``sets`` of int bitmasks over an element universe
``full`` (also a bitmask). Set indices double as the candidate ids.
"""
from __future__ import annotations


def _runs(mask):
    """Maximal runs of set bits as half-open [a, b) index ranges."""
    while mask:
        low = mask & -mask
        a = low.bit_length() - 1
        above = (mask | (low - 1)) + 1  # carry runs through the block of ones
        b = (above & -above).bit_length() - 1
        yield a, b
        mask &= ~((1 << b) - 1)


def transpose(sets: list[int], n_elements: int) -> list[int]:
    """For every element, the bitmask of sets containing it.

    Uses a prefix-XOR difference array over runs of consecutive elements,
    which is fast when masks are unions of few intervals.
    """
    diff = [0] * (n_elements + 1)
    for s, mask in enumerate(sets):
        bit = 1 << s
        for a, b in _runs(mask):
            diff[a] ^= bit
            diff[b] ^= bit
    out = []
    acc = 0
    for e in range(n_elements):
        acc ^= diff[e]
        out.append(acc)
    return out


def greedy_cover(sets: list[int], full: int) -> list[int]:
    """Chvatal greedy: repeatedly take the set covering most uncovered elements.

    Ties go to the smallest set index. Returns chosen indices in pick order.
    """
    uncovered = full
    chosen = []
    while uncovered:
        best, best_deg = -1, 0
        for s, mask in enumerate(sets):
            deg = (mask & uncovered).bit_count()
            if deg > best_deg:
                best, best_deg = s, deg
        if best < 0:
            raise ValueError("sets do not cover the universe")
        chosen.append(best)
        uncovered &= ~sets[best]
    return chosen


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def min_cover_size(sets: list[int], full: int, lower: int = 0) -> int:
    """Exact minimum cover cardinality by branch and bound."""
    if full == 0:
        return 0
    owners = transpose(sets, full.bit_length())
    best = [len(greedy_cover(sets, full))]
    if best[0] <= lower:
        return best[0]

    def bound(uncovered):
        top = max((m & uncovered).bit_count() for m in sets)
        return -(-uncovered.bit_count() // top)

    def rec(uncovered, k):
        if uncovered == 0:
            best[0] = k
            return
        if k + max(1, bound(uncovered)) >= best[0]:
            return
        # branch on the element with fewest owners
        pick, pick_owners = -1, None
        for e in _bits(uncovered):
            cnt = owners[e].bit_count()
            if pick_owners is None or cnt < pick_owners.bit_count():
                pick, pick_owners = e, owners[e]
                if cnt == 1:
                    break
        cands = sorted(_bits(pick_owners), key=lambda s: -(sets[s] & uncovered).bit_count())
        for s in cands:
            rec(uncovered & ~sets[s], k + 1)
            if best[0] <= lower:
                return

    rec(full, 0)
    return best[0]


def _fits(sets: list[int], uncovered: int, budget: int) -> bool:
    """Can ``uncovered`` be covered with at most ``budget`` of ``sets``?"""
    if uncovered == 0:
        return True
    if budget == 0:
        return False
    masked = [m & uncovered for m in sets]
    union = 0
    for m in masked:
        union |= m
    if union != uncovered:
        return False
    return min_cover_size(masked, uncovered, lower=budget) <= budget


def lex_first_cover(sets: list[int], full: int, k: int) -> list[int] | None:
    """Lexicographically smallest cover of at most ``k`` sets.

    Built slot by slot: the next pick is the smallest index whose completion
    with later sets still fits the remaining budget.
    """
    chosen = []
    uncovered = full
    start = 0
    while uncovered:
        for s in range(start, len(sets)):
            if sets[s] & uncovered and _fits(sets[s + 1:], uncovered & ~sets[s], k - len(chosen) - 1):
                chosen.append(s)
                uncovered &= ~sets[s]
                start = s + 1
                break
        else:
            return None
    return chosen


def smallest_cover(sets: list[int], full: int, lower: int = 0) -> list[int]:
    """Minimum-cardinality cover, lexicographically smallest among optima."""
    k = min_cover_size(sets, full, lower)
    found = lex_first_cover(sets, full, k)
    assert found is not None
    return found
