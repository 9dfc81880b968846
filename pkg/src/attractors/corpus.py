"""Deterministic test strings: random, periodic, Fibonacci and Thue-Morse families."""
from __future__ import annotations

import random

EXAMPLE = "CDABCCDABCCA"


def fibonacci_word(k: int) -> str:
    """F_1 = b, F_2 = a, F_k = F_{k-1} F_{k-2}; |F_k| is the k-th Fibonacci number."""
    if k < 1:
        raise ValueError("k must be positive")
    prev, cur = "b", "a"
    if k == 1:
        return prev
    for _ in range(k - 2):
        prev, cur = cur, cur + prev
    return cur


def thue_morse(n: int) -> str:
    return "".join("ab"[bin(i).count("1") & 1] for i in range(n))


def periodic(unit: str, n: int) -> str:
    return (unit * (n // len(unit) + 1))[:n]


def random_string(n: int, sigma: int, seed: int) -> str:
    rng = random.Random(seed)
    letters = "abcdefghijklmnopqrstuvwxyz"[:sigma]
    return "".join(rng.choice(letters) for _ in range(n))


def corpus(max_len: int | None = None) -> list:
    """(name, string) pairs; 40 strings with lengths from 1 to 2000."""
    items = [
        ("example", EXAMPLE),
        ("single", "a"),
        ("pair", "ab"),
        ("banana", "banana"),
        ("abracadabra", "abracadabra"),
        ("distinct", "abcdefghij"),
    ]
    for n in (4, 17, 64, 300, 2000):
        items.append((f"unary-{n}", "a" * n))
    for unit, n in (("ab", 51), ("abc", 120), ("aab", 257), ("abcab", 512), ("abaababa", 1500)):
        items.append((f"periodic-{unit}-{n}", periodic(unit, n)))
    for k in (5, 8, 10, 12, 14, 16, 17):
        items.append((f"fib-{k}", fibonacci_word(k)))
    for n in (8, 33, 128, 500, 1024):
        items.append((f"thue-morse-{n}", thue_morse(n)))
    for seed, (n, sigma) in enumerate([(7, 2), (12, 3), (25, 4), (60, 2), (100, 4), (200, 3),
                                       (350, 8), (512, 2), (800, 20), (1200, 4), (2000, 3)]):
        items.append((f"random-{n}-{sigma}", random_string(n, sigma, 1000 + seed)))
    if max_len is not None:
        items = [(name, s) for name, s in items if len(s) <= max_len]
    return items
