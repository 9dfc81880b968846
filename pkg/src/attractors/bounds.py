"""Repetitiveness bounds that follow from having an attractor of size gamma."""
from __future__ import annotations

from dataclasses import asdict, dataclass
from fractions import Fraction

from .errors import BoundViolated, InvalidAttractor, ParameterOutOfRange
from .textcore import (
    AttractorSet,
    SuffixIndex,
    Text,
    build_index,
    count_distinct_substrings,
    longest_repeated_len,
    smallest_attractor_bruteforce,
    verify_attractor,
)

EXACT_LIMIT = 14


def distinct_kmers(idx: SuffixIndex) -> list:
    """counts[k-1] = number of distinct k-mers, for k = 1..n."""
    n = len(idx.sa)
    diff = [0] * (n + 2)
    for q, start in enumerate(idx.sa):
        # row q contributes a new k-mer for every k in (lcp[q], suffix length]
        diff[idx.lcp[q] + 1] += 1
        diff[n - start + 1] -= 1
    out, run = [], 0
    for k in range(1, n + 1):
        run += diff[k]
        out.append(run)
    return out


def kmer_counts(t: Text, idx: SuffixIndex, g: AttractorSet) -> list:
    """(k, distinct k-mers, gamma*k) for every k; the count never exceeds the cap."""
    if not verify_attractor(t, idx, g):
        raise InvalidAttractor("k-mer caps need a verified attractor")
    rows = [(k, c, g.gamma * k) for k, c in enumerate(distinct_kmers(idx), start=1)]
    for k, c, cap in rows:
        if c > cap:
            raise BoundViolated(f"{c} distinct {k}-mers exceed {cap}")
    return rows


def _capped_power(sigma, k, cap):
    """sigma**k, saturated just above ``cap``."""
    if sigma == 1:
        return 1
    v = 1
    for _ in range(k):
        v *= sigma
        if v > cap:
            return cap + 1
    return v


def lc_terms(n: int, sigma: int, gamma: int | None = None):
    """Denominator sum of min(sigma^k, n-k+1), and the same with gamma*k added to the min."""
    den = num = 0
    for k in range(1, n + 1):
        m = min(_capped_power(sigma, k, n), n - k + 1)
        den += m
        num += min(m, gamma * k) if gamma is not None else m
    return den, num


def lc_and_bound(t: Text, idx: SuffixIndex, gamma: int):
    """Linguistic complexity and its upper bound; returned as exact fractions."""
    if gamma < t.sigma:
        raise ParameterOutOfRange(f"gamma={gamma} is below sigma={t.sigma}")
    den, num = lc_terms(t.n, t.sigma, gamma)
    return Fraction(count_distinct_substrings(idx), den), Fraction(num, den)


@dataclass(frozen=True)
class LmaxCheck:
    lmax: int
    gamma: int
    exact: bool
    lmax_floor: Fraction  # (n - gamma) / (gamma + 1)
    gamma_floor: Fraction  # (n - lmax) / (lmax + 1)
    lmax_ok: bool
    gamma_ok: bool | None  # only meaningful when gamma is exact


def lmax_bounds(t: Text, idx: SuffixIndex, gamma: int, exact: bool = True) -> LmaxCheck:
    lmax = longest_repeated_len(idx)
    lf = Fraction(t.n - gamma, gamma + 1)
    gf = Fraction(t.n - lmax, lmax + 1)
    return LmaxCheck(lmax, gamma, exact, lf, gf, lmax >= lf, (gamma >= gf) if exact else None)


@dataclass(frozen=True)
class BoundsReport:
    n: int
    sigma: int
    gamma: int
    gamma_exact: bool
    kmers: tuple  # (k, count, cap)
    sub_count: int
    lc: Fraction
    lc_bound: Fraction
    lmax: LmaxCheck

    def __post_init__(self):
        bad = [f"k={k}" for k, c, cap in self.kmers if c > cap]
        if self.lc > self.lc_bound:
            bad.append("LC exceeds its bound")
        if not self.lmax.lmax_ok:
            bad.append("lmax below (n-gamma)/(gamma+1)")
        if self.lmax.gamma_ok is False:
            bad.append("gamma below (n-lmax)/(lmax+1)")
        if bad:
            raise BoundViolated("; ".join(bad))

    def to_json(self) -> dict:
        lm = asdict(self.lmax)
        for key in ("lmax_floor", "gamma_floor"):
            lm[key] = float(lm[key])
        return {
            "n": self.n,
            "sigma": self.sigma,
            "gamma": self.gamma,
            "gamma_exact": self.gamma_exact,
            "sub_count": self.sub_count,
            "lc": float(self.lc),
            "lc_bound": float(self.lc_bound),
            "kmers": [{"k": k, "count": c, "cap": cap} for k, c, cap in self.kmers],
            "lmax": lm,
        }

    def table(self) -> str:
        lines = [
            f"n          {self.n}",
            f"sigma      {self.sigma}",
            f"gamma      {self.gamma}{' (exact)' if self.gamma_exact else ''}",
            f"|SUB|      {self.sub_count}",
            f"LC         {float(self.lc):.4f}",
            f"LC bound   {float(self.lc_bound):.4f}",
            f"lmax       {self.lmax.lmax} >= {float(self.lmax.lmax_floor):.4f}",
        ]
        if self.gamma_exact:
            lines.append(f"gamma      {self.gamma} >= {float(self.lmax.gamma_floor):.4f}")
        lines.append("   k  count    cap")
        lines += [f"{k:4d} {c:6d} {cap:6d}" for k, c, cap in self.kmers]
        return "\n".join(lines)


def bounds_report(t: Text, idx: SuffixIndex | None = None, attractor: AttractorSet | None = None,
                  gamma: int | None = None, exact: bool | None = None) -> BoundsReport:
    """Report every bound for one text.

    Without an attractor or size, the exact optimum is used when n is small
    and the greedy attractor otherwise.
    """
    idx = idx or build_index(t)
    if attractor is None and gamma is None:
        if t.n <= EXACT_LIMIT:
            attractor, exact = smallest_attractor_bruteforce(t, idx, EXACT_LIMIT), True
        else:
            from .treeattr import greedy_string_attractor

            attractor = greedy_string_attractor(t)
    if attractor is not None:
        kmers = kmer_counts(t, idx, attractor)
        gamma = attractor.gamma
    else:
        if gamma < 1:
            raise ParameterOutOfRange("gamma must be positive")
        kmers = [(k, c, gamma * k) for k, c in enumerate(distinct_kmers(idx), start=1)]
    lc, bound = lc_and_bound(t, idx, gamma)
    exact = bool(exact)
    return BoundsReport(t.n, t.sigma, gamma, exact, tuple(kmers), count_distinct_substrings(idx), lc, bound,
                        lmax_bounds(t, idx, gamma, exact))
