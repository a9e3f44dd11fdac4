"""Verifiers for the synchronization and self-matching properties."""
from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from .strings_core import MonotoneMatching, _leftmost_matching, edit_distance, lcs_rows, match_masks


def as_fraction(eps) -> Fraction:
    eps = Fraction(eps) if not isinstance(eps, float) else Fraction(str(eps))
    return eps


def _check_eps(eps) -> Fraction:
    eps = as_fraction(eps)
    if not 0 < eps < 1:
        raise ValueError(f"eps must lie in (0, 1), got {eps}")
    return eps


@dataclass(frozen=True)
class SyncViolation:
    """1-based i < j < k with ED(S[i, j), S[j, k)) <= (1 - eps)(k - i)."""

    i: int
    j: int
    k: int
    ed: int

    def recheck(self, s: Sequence[int], eps) -> bool:
        s = list(s)
        d = edit_distance(s[self.i - 1:self.j - 1], s[self.j - 1:self.k - 1])
        return d == self.ed and d <= (1 - as_fraction(eps)) * (self.k - self.i)


@dataclass(frozen=True)
class PropertyVerdict:
    holds: bool
    property: str
    eps: Fraction
    witness: SyncViolation | MonotoneMatching | None = None

    def __bool__(self) -> bool:
        return self.holds


def check_synchronization(s: Sequence[int], eps) -> PropertyVerdict:
    """Check ED(S[i, j), S[j, k)) > (1 - eps)(k - i) for all 1 <= i < j < k <= n + 1.

    ED = (k - i) - 2 LCS, so a triple violates iff 2 LCS * den >= num * (k - i)
    with eps = num/den. For each (i, j) one bit-parallel pass of the rows
    S[i, j) over the columns S[j..n] gives the LCS for every k at once; the
    first violating k is always a point where the LCS just grew, i.e. a zero
    bit of the final row vector.
    """
    eps = _check_eps(eps)
    num, den = eps.numerator, eps.denominator
    s = list(s)
    n = len(s)
    for i in range(n):  # 0-based start of the left interval
        for j in range(i + 1, n):  # 0-based start of the right interval
            width = n - j
            left = j - i
            # LCS <= left, so only k - i <= 2 * left * den / num can violate
            reach = min(width, (2 * left * den) // num - left)
            if reach <= 0:
                continue
            masks = match_masks(s[j:j + reach])
            v = None
            for v in lcs_rows((masks.get(c, 0) for c in s[i:j]), reach):
                pass
            zeros = ~v & ((1 << reach) - 1)
            r = 0
            while zeros:
                low = zeros & -zeros
                p = low.bit_length() - 1
                r += 1
                total = left + p + 1  # k - i
                if 2 * r * den >= num * total:
                    k = j + p + 1
                    return PropertyVerdict(False, "full_sync", eps, SyncViolation(i + 1, j + 1, k + 1, total - 2 * r))
                zeros ^= low
    return PropertyVerdict(True, "full_sync", eps)


def max_bad_self_matching(s: Sequence[int]) -> tuple[int, MonotoneMatching]:
    """Largest number of bad pairs in a monotone matching of S with itself.

    Good pairs (a, a) can be dropped from any matching without breaking
    monotonicity, so this is just the LCS of S against itself with the
    diagonal cells removed from the match relation. (This reformulation is
    ours; the definition itself quantifies over all monotone matchings.)
    """
    s = list(s)
    if len(s) < 2:
        return 0, MonotoneMatching()
    witness = _leftmost_matching(s, s, forbid_diagonal=True)
    return len(witness), witness


def check_self_matching(s: Sequence[int], eps) -> PropertyVerdict:
    eps = _check_eps(eps)
    count, witness = max_bad_self_matching(s)
    if count >= eps * len(s) and len(s) > 0:
        return PropertyVerdict(False, "self_matching", eps, witness)
    return PropertyVerdict(True, "self_matching", eps)


def interval_bad_counts(s: Sequence[int], start: int):
    """Yield (end, max bad pairs of S[start..end]) for end = start..n-1 (0-based).

    Rows and columns both begin at ``start``; after feeding row ``end`` the
    prefix of ``end - start + 1`` columns holds the answer for the interval.
    """
    s = list(s)
    sub = s[start:]
    width = len(sub)
    masks = match_masks(sub)
    row_masks = (masks.get(c, 0) & ~(1 << x) for x, c in enumerate(sub))
    for x, v in enumerate(lcs_rows(row_masks, width)):
        cols = x + 1
        yield start + x, cols - (v & ((1 << cols) - 1)).bit_count()


@dataclass(frozen=True)
class BadIndexReport:
    eps: Fraction
    bad_indices: frozenset[int]
    blamed_intervals: dict[int, tuple[int, int]] = field(hash=False)

    def __len__(self) -> int:
        return len(self.bad_indices)


def find_bad_indices(s: Sequence[int], eps) -> BadIndexReport:
    """All 1-based indices lying in an interval [i, j] that fails eps-self-matching.

    All O(n^2) intervals are examined with O(n^2) bit-parallel row updates in
    total. Each bad index blames the failing interval with the smallest start
    that contains it, taking the longest failing interval from that start.
    """
    eps = _check_eps(eps)
    num, den = eps.numerator, eps.denominator
    s = list(s)
    blamed: dict[int, tuple[int, int]] = {}
    for i in range(len(s)):
        last_fail = None
        for end, bad in interval_bad_counts(s, i):
            if bad * den >= num * (end - i + 1):
                last_fail = end
        if last_fail is None:
            continue
        for k in range(i, last_fail + 1):
            blamed.setdefault(k + 1, (i + 1, last_fail + 1))
    return BadIndexReport(eps, frozenset(blamed), blamed)
