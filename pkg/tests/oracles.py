"""Brute-force reference implementations used only by the tests.

Nothing here shares code with the package kernels: each oracle follows the
definition literally and is exponential or high-degree polynomial.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from math import inf

PAD = -1


@lru_cache(maxsize=None)
def subsequences(s: tuple) -> frozenset:
    out = set()
    for r in range(len(s) + 1):
        for idx in itertools.combinations(range(len(s)), r):
            out.add(tuple(s[i] for i in idx))
    return frozenset(out)


def lcs_len(a, b) -> int:
    common = subsequences(tuple(a)) & subsequences(tuple(b))
    return max(len(c) for c in common)


def ed(a, b) -> int:
    return len(a) + len(b) - 2 * lcs_len(a, b)


def ed_dp(a, b) -> int:
    """Textbook quadratic insertion/deletion DP (for strings too long to enumerate)."""
    prev = list(range(len(b) + 1))
    for i in range(1, len(a) + 1):
        cur = [i] + [0] * len(b)
        for j in range(1, len(b) + 1):
            if a[i - 1] == b[j - 1]:
                cur[j] = prev[j - 1]
            else:
                cur[j] = 1 + min(prev[j], cur[j - 1])
        prev = cur
    return prev[-1]


def padded_suffix(s, k):
    s = list(s)
    if k <= len(s):
        return s[len(s) - k:]
    return [PAD] * (k - len(s)) + s


def rsd(a, b) -> Fraction:
    best = Fraction(0)
    for k in range(1, max(len(a), len(b)) + 1):
        best = max(best, Fraction(ed_dp(padded_suffix(a, k), padded_suffix(b, k)), 2 * k))
    return best


def all_matchings(a, b):
    def rec(i, j, t1, t2):
        if i == len(a) and j == len(b):
            yield t1, t2
            return
        if i < len(a) and j < len(b) and a[i] == b[j]:
            yield from rec(i + 1, j + 1, t1 + (a[i],), t2 + (b[j],))
        if i < len(a):
            yield from rec(i + 1, j, t1 + (a[i],), t2 + (None,))
        if j < len(b):
            yield from rec(i, j + 1, t1 + (None,), t2 + (b[j],))

    yield from rec(0, 0, (), ())


def rspd(a, b):
    best = inf
    for t1, t2 in all_matchings(a, b):
        worst = Fraction(0)
        for k in range(len(t1)):
            s1, s2 = t1[k:], t2[k:]
            stars = s1.count(None) + s2.count(None)
            sent = len(s1) - s1.count(None)
            worst = max(worst, inf if sent == 0 and stars else Fraction(stars, max(sent, 1)))
        best = min(best, worst)
    return best


def monotone_self_matchings(s):
    """All monotone matchings of s with itself (tiny strings only)."""
    n = len(s)
    cells = [(i, j) for i in range(n) for j in range(n) if s[i] == s[j]]

    def rec(start_i, start_j):
        yield ()
        for a, b in cells:
            if a >= start_i and b >= start_j:
                for rest in rec(a + 1, b + 1):
                    yield ((a + 1, b + 1),) + rest

    yield from rec(0, 0)


def max_bad(s) -> int:
    return max(sum(1 for a, b in m if a != b) for m in monotone_self_matchings(s))


def is_sync_plain(s, eps: Fraction) -> bool:
    """Definition check with 0-based i < j < k <= n: ED(s[i:j], s[j:k]) > (1-eps)(k-i)."""
    n = len(s)
    s = list(s)
    for i in range(n):
        for j in range(i + 1, n + 1):
            for k in range(j + 1, n + 1):
                if ed_dp(s[i:j], s[j:k]) <= (1 - eps) * (k - i):
                    return False
    return True


def first_sync_violation(s, eps: Fraction):
    """First violating 1-based triple (i, j, k) with i < j < k <= n+1, lexicographic."""
    n = len(s)
    s = list(s)
    for i in range(1, n + 2):
        for j in range(i + 1, n + 2):
            for k in range(j + 1, n + 2):
                d = ed_dp(s[i - 1:j - 1], s[j - 1:k - 1])
                if d <= (1 - eps) * (k - i):
                    return (i, j, k), d
    return None


def self_matching_ok(s, eps: Fraction) -> bool:
    return max_bad(s) < eps * len(s) if s else True
