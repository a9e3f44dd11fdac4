"""Exact string kernels: edit distance, LCS, string matchings, RSD, RSPD and
suffix error densities.

Symbols are non-negative integers. Indices in public return values are
1-based, matching the usual notation S[1..n]; Python slicing is used
internally.

Most kernels run on a bit-parallel LCS row update (Allison-Dix / Hyyro):
after feeding rows a[0..r) against a column string b, bit ``p`` of the row
vector is 0 exactly when LCS(a[:r], b[:p+1]) - LCS(a[:r], b[:p]) == 1. One
pass therefore yields the LCS of a row prefix against *every* column prefix.
The update only uses a per-row match mask, so it also works for arbitrary
match relations (e.g. a self-matching with the diagonal forbidden).
"""
from __future__ import annotations

import bisect
import itertools
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from math import inf

STAR = None  # the "*" placeholder of a string matching


class SymbolString(Sequence):
    """An immutable string of integer symbols over the alphabet {0..q-1}."""

    __slots__ = ("_symbols", "alphabet_size")

    def __init__(self, symbols: Iterable[int], alphabet_size: int):
        syms = tuple(int(s) for s in symbols)
        if alphabet_size < 1:
            raise ValueError("alphabet_size must be positive")
        for s in syms:
            if not 0 <= s < alphabet_size:
                raise ValueError(f"symbol {s} outside alphabet of size {alphabet_size}")
        self._symbols = syms
        self.alphabet_size = alphabet_size

    @classmethod
    def infer(cls, symbols: Iterable[int]) -> "SymbolString":
        syms = tuple(symbols)
        return cls(syms, max(syms, default=0) + 1)

    @property
    def symbols(self) -> tuple[int, ...]:
        return self._symbols

    @property
    def pad(self) -> int:
        """Sentinel used for the padding symbol; never stored in the string."""
        return self.alphabet_size

    def __getitem__(self, idx):
        if isinstance(idx, slice):
            return SymbolString(self._symbols[idx], self.alphabet_size)
        return self._symbols[idx]

    def __len__(self) -> int:
        return len(self._symbols)

    def __iter__(self) -> Iterator[int]:
        return iter(self._symbols)

    def __eq__(self, other) -> bool:
        if isinstance(other, SymbolString):
            return self._symbols == other._symbols and self.alphabet_size == other.alphabet_size
        if isinstance(other, (tuple, list)):
            return list(self._symbols) == list(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self._symbols, self.alphabet_size))

    def __repr__(self) -> str:
        return f"SymbolString({list(self._symbols)!r}, q={self.alphabet_size})"


# ---------------------------------------------------------------------------
# bit-parallel LCS machinery


def match_masks(b: Sequence[int]) -> dict[int, int]:
    """Map each symbol to the bitmask of positions where it occurs in ``b``."""
    masks: dict[int, int] = {}
    for p, c in enumerate(b):
        masks[c] = masks.get(c, 0) | (1 << p)
    return masks


def lcs_rows(row_masks: Iterable[int], width: int) -> Iterator[int]:
    """Yield the bit-parallel row vector after each row's match mask."""
    full = (1 << width) - 1
    v = full
    for m in row_masks:
        u = v & m
        v = ((v + u) | (v - u)) & full
        yield v


def prefix_lcs(v: int, cols: int) -> int:
    """LCS of the rows fed so far against the first ``cols`` columns."""
    return cols - (v & ((1 << cols) - 1)).bit_count()


def lcs_length(a: Sequence[int], b: Sequence[int]) -> int:
    if not a or not b:
        return 0
    masks = match_masks(b)
    v = (1 << len(b)) - 1
    for v in lcs_rows((masks.get(c, 0) for c in a), len(b)):
        pass
    return prefix_lcs(v, len(b))


def edit_distance(a: Sequence[int], b: Sequence[int]) -> int:
    """Insertion/deletion distance: |a| + |b| - 2 LCS(a, b)."""
    return len(a) + len(b) - 2 * lcs_length(a, b)


# ---------------------------------------------------------------------------
# matchings


@dataclass(frozen=True)
class MonotoneMatching:
    """Strictly increasing 1-based index pairs (a_i, b_i) with equal symbols."""

    pairs: tuple[tuple[int, int], ...] = ()

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def bad_pairs(self) -> int:
        return sum(1 for a, b in self.pairs if a != b)

    def good_pairs(self) -> int:
        return sum(1 for a, b in self.pairs if a == b)

    def is_valid(self, s: Sequence[int], t: Sequence[int]) -> bool:
        prev_a = prev_b = 0
        for a, b in self.pairs:
            if a <= prev_a or b <= prev_b:
                return False
            if not (1 <= a <= len(s) and 1 <= b <= len(t)) or s[a - 1] != t[b - 1]:
                return False
            prev_a, prev_b = a, b
        return True


class _SuffixLcs:
    """O(1)-bigint queries of LCS(a[i:], b[j:]) for all i, j.

    Rows are the reversed ``a`` fed against the reversed ``b``; the optional
    ``forbid`` callback removes individual (x, y) cells (0-based, original
    orientation) from the match relation.
    """

    def __init__(self, a: Sequence[int], b: Sequence[int], forbid_diagonal: bool = False):
        self.n, self.m = len(a), len(b)
        rb = list(reversed(b))
        masks = match_masks(rb)
        row_masks = []
        for x in range(self.n - 1, -1, -1):
            mk = masks.get(a[x], 0)
            if forbid_diagonal and x < self.m:
                # original cell (x, x) sits at reversed column m-1-x
                mk &= ~(1 << (self.m - 1 - x))
            row_masks.append(mk)
        full = (1 << self.m) - 1
        self.rows = [full]
        self.rows.extend(lcs_rows(row_masks, self.m))

    def __call__(self, i: int, j: int) -> int:
        if i >= self.n or j >= self.m:
            return 0
        return prefix_lcs(self.rows[self.n - i], self.m - j)


def _leftmost_matching(a: Sequence[int], b: Sequence[int], forbid_diagonal: bool = False) -> MonotoneMatching:
    if not a or not b:
        return MonotoneMatching()
    suf = _SuffixLcs(a, b, forbid_diagonal)
    where: dict[int, list[int]] = {}
    for x, c in enumerate(a):
        where.setdefault(c, []).append(x)
    pairs = []
    i = 0
    target = suf(0, 0)
    for j in range(len(b)):
        if target == 0:
            break
        occ = where.get(b[j])
        if not occ:
            continue
        k = bisect.bisect_left(occ, i)
        if k < len(occ) and forbid_diagonal and occ[k] == j:
            k += 1
        if k == len(occ):
            continue
        x = occ[k]
        # smallest usable row keeps the most room for the rest of the matching
        if suf(x + 1, j + 1) == target - 1:
            pairs.append((x + 1, j + 1))
            i = x + 1
            target -= 1
    return MonotoneMatching(tuple(pairs))


def longest_common_subsequence(a: Sequence[int], b: Sequence[int]) -> MonotoneMatching:
    """A maximum monotone matching between ``a`` and ``b``.

    Among all maximum matchings the one with the lexicographically smallest
    sequence of ``b`` positions is returned (rows chosen as early as possible).
    """
    return _leftmost_matching(a, b)


@dataclass(frozen=True)
class StringMatching:
    """A pair (tau1, tau2) of equal-length sequences over symbols and STAR."""

    tau1: tuple
    tau2: tuple

    def __post_init__(self):
        if len(self.tau1) != len(self.tau2):
            raise ValueError("tau1 and tau2 must have equal length")
        for x, y in zip(self.tau1, self.tau2):
            if x is STAR and y is STAR:
                raise ValueError("a column cannot be (*, *)")
            if x is not STAR and y is not STAR and x != y:
                raise ValueError(f"column ({x}, {y}) is not a match")

    @staticmethod
    def strip(tau: Sequence) -> tuple:
        return tuple(x for x in tau if x is not STAR)

    def endpoints(self) -> tuple[tuple, tuple]:
        return self.strip(self.tau1), self.strip(self.tau2)

    def star_count(self) -> tuple[int, int]:
        return (sum(x is STAR for x in self.tau1), sum(y is STAR for y in self.tau2))


def enumerate_matchings(a: Sequence[int], b: Sequence[int]) -> Iterator[StringMatching]:
    """Every string matching between ``a`` and ``b`` (exponential; tests only)."""

    def rec(i, j, t1, t2):
        if i == len(a) and j == len(b):
            yield StringMatching(tuple(t1), tuple(t2))
            return
        if i < len(a) and j < len(b) and a[i] == b[j]:
            yield from rec(i + 1, j + 1, t1 + [a[i]], t2 + [b[j]])
        if i < len(a):
            yield from rec(i + 1, j, t1 + [a[i]], t2 + [STAR])
        if j < len(b):
            yield from rec(i, j + 1, t1 + [STAR], t2 + [b[j]])

    yield from rec(0, 0, [], [])


# ---------------------------------------------------------------------------
# channel transcripts


@dataclass(frozen=True)
class Delete:
    position: int  # 1-based sent index


@dataclass(frozen=True)
class Insert:
    after: int  # sent position the symbol follows; 0 means before S[1]
    symbol: int


EditAction = Delete | Insert


class ScriptError(ValueError):
    pass


@dataclass(frozen=True)
class Transcript:
    """The sent string, the adversary's script and everything it induces.

    ``origin[j]`` is the 1-based sent index delivered as received[j] (0-based
    j), or None when received[j] was inserted. ``arrival[j]`` is the sent
    index of the gap or delivery that produced received[j].
    ``gap_insertions[g]`` counts symbols inserted between S[g] and S[g+1].
    """

    sent: SymbolString
    script: tuple[EditAction, ...]
    received: SymbolString
    correspondence: StringMatching
    origin: tuple[int | None, ...]
    deleted: frozenset[int]
    gap_insertions: tuple[int, ...]
    arrival: tuple[int, ...] = field(repr=False, default=())

    @property
    def insertions(self) -> int:
        return sum(self.gap_insertions)

    @property
    def deletions(self) -> int:
        return len(self.deleted)

    def error_count(self, i: int, j: int) -> int:
        """Insdels from the moment S[i] is sent until S[j] is sent.

        Counts a deletion of S[j] but not one of S[i]; ``i`` may be <= 0.
        """
        lo = max(i, 0)
        ins = sum(self.gap_insertions[lo:j]) if j > lo else 0
        dels = sum(1 for d in self.deleted if max(i, 0) < d <= j)
        return ins + dels

    def sent_before(self, j: int) -> int:
        """Index of the last sent symbol emitted before received[j] (0-based j)."""
        return self.arrival[j]


def apply_script(sent: Sequence[int], script: Iterable[EditAction], alphabet_size: int | None = None) -> Transcript:
    """Run an edit script on ``sent``; insertions in one gap keep script order."""
    if not isinstance(sent, SymbolString):
        sent = SymbolString(sent, alphabet_size or (max(sent, default=0) + 1))
    q = sent.alphabet_size if alphabet_size is None else alphabet_size
    n = len(sent)
    script = tuple(script)
    deleted: set[int] = set()
    gaps: list[list[int]] = [[] for _ in range(n + 1)]
    for act in script:
        if isinstance(act, Delete):
            if not 1 <= act.position <= n:
                raise ScriptError(f"delete position {act.position} out of range 1..{n}")
            if act.position in deleted:
                raise ScriptError(f"position {act.position} deleted twice")
            deleted.add(act.position)
        elif isinstance(act, Insert):
            if not 0 <= act.after <= n:
                raise ScriptError(f"insert position {act.after} out of range 0..{n}")
            if not 0 <= act.symbol < q:
                raise ScriptError(f"inserted symbol {act.symbol} outside alphabet")
            gaps[act.after].append(act.symbol)
        else:
            raise ScriptError(f"unknown action {act!r}")

    tau1, tau2, received, origin, arrival = [], [], [], [], []

    def emit_insertions(g):
        for sym in gaps[g]:
            tau1.append(STAR)
            tau2.append(sym)
            arrival.append(g)
            received.append(sym)
            origin.append(None)

    emit_insertions(0)
    for i in range(1, n + 1):
        sym = sent[i - 1]
        tau1.append(sym)
        if i in deleted:
            tau2.append(STAR)
        else:
            tau2.append(sym)
            arrival.append(i)
            received.append(sym)
            origin.append(i)
        emit_insertions(i)

    return Transcript(
        sent=sent,
        script=script,
        received=SymbolString(received, q),
        correspondence=StringMatching(tuple(tau1), tuple(tau2)),
        origin=tuple(origin),
        deleted=frozenset(deleted),
        gap_insertions=tuple(len(g) for g in gaps),
        arrival=tuple(arrival),
    )


def suffix_error_density(t: Transcript, upto: int) -> Fraction:
    """max over i >= 1 of E(upto - i, upto) / i.

    For i >= upto the numerator stops growing, so the range 1..upto suffices.
    """
    if not 0 <= upto <= len(t.sent):
        raise ValueError("upto outside 0..|sent|")
    best = Fraction(0)
    # walk i = 1..upto accumulating E(upto - i, upto) incrementally
    errs = 0
    for i in range(1, upto + 1):
        g = upto - i  # gap g = upto - i now inside the window, plus deletion of S[g+1]
        errs += t.gap_insertions[g]
        if (g + 1) in t.deleted:
            errs += 1
        if errs * best.denominator > best.numerator * i:
            best = Fraction(errs, i)
    return best


# ---------------------------------------------------------------------------
# relative suffix distance


def _reversed_masks(s: Sequence[int]) -> dict[int, int]:
    """Masks of reversed(s): bit p marks s[len(s) - 1 - p]."""
    n = len(s)
    masks: dict[int, int] = {}
    for p in range(n):
        c = s[n - 1 - p]
        masks[c] = masks.get(c, 0) | (1 << p)
    return masks


def rsd_profile(a: Sequence[int], b: Sequence[int]) -> Iterator[tuple[int, int]]:
    """Yield (k, ED of the length-k padded suffixes) for k = 1..max(|a|,|b|)."""
    width = max(len(a), len(b))
    if width == 0:
        return
    masks = _reversed_masks(b)
    pad_mask = ((1 << width) - 1) ^ ((1 << len(b)) - 1)
    la = len(a)

    def rows():
        for k in range(width):
            yield masks.get(a[la - 1 - k], 0) if k < la else pad_mask

    for k, v in enumerate(lcs_rows(rows(), width), start=1):
        yield k, 2 * (k - prefix_lcs(v, k))


def relative_suffix_distance(a: Sequence[int], b: Sequence[int]) -> Fraction:
    """max_k ED(a(|a|-k, |a|], b(|b|-k, |b|]) / 2k with left padding by a
    symbol that occurs in neither string."""
    best = Fraction(0)
    for k, ed in rsd_profile(a, b):
        if ed * best.denominator > best.numerator * 2 * k:
            best = Fraction(ed, 2 * k)
    return best


def rsd_below(a: Sequence[int], b: Sequence[int], bound: Fraction) -> Fraction | None:
    """RSD(a, b) if it is strictly below ``bound``, else None (early exit)."""
    best = Fraction(0)
    bn, bd = bound.numerator, bound.denominator
    for k, ed in rsd_profile(a, b):
        if ed * bd >= bn * 2 * k:
            return None
        if ed * best.denominator > best.numerator * 2 * k:
            best = Fraction(ed, 2 * k)
    return best


# ---------------------------------------------------------------------------
# relative suffix pseudo-distance


def _suffix_ratio(sent: int, recv: int, ins: int):
    """Error/sent ratio of a whole matching with the given suffix lengths."""
    errors = sent - recv + 2 * ins
    if sent == 0:
        return inf if errors else Fraction(0)
    return Fraction(errors, sent)


def relative_suffix_pseudo_distance(a: Sequence[int], b: Sequence[int]):
    """min over matchings tau: a -> b of the worst suffix error ratio.

    For a suffix of tau the ratio is (stars in tau1 + stars in tau2) divided
    by the number of symbols of ``a`` it covers. ``d[i][j][l]`` is the best
    value for the length-i suffix of ``a`` against the length-j suffix of
    ``b`` using exactly l insertions; the first column of the matching is a
    match, a star in tau1, or a star in tau2. Returns ``math.inf`` when ``a``
    is empty and ``b`` is not.
    """
    na, nb = len(a), len(b)
    # d[i][j] maps l -> value
    d: list[list[dict[int, object]]] = [[{} for _ in range(nb + 1)] for _ in range(na + 1)]
    d[0][0][0] = Fraction(0)
    for i in range(na + 1):
        for j in range(nb + 1):
            if i == 0 and j == 0:
                continue
            cell = d[i][j]
            for ins in range(max(0, j - i), j + 1):
                rest = inf
                if i and j and a[na - i] == b[nb - j]:
                    rest = min(rest, d[i - 1][j - 1].get(ins, inf))
                if j and ins:
                    rest = min(rest, d[i][j - 1].get(ins - 1, inf))
                if i:
                    rest = min(rest, d[i - 1][j].get(ins, inf))
                if rest is inf:
                    continue
                cell[ins] = max(_suffix_ratio(i, j, ins), rest)
    return min(d[na][nb].values(), default=inf)


def rspd_by_enumeration(a: Sequence[int], b: Sequence[int]):
    """Exhaustive minimisation over all string matchings (tests only)."""
    best = inf
    for tau in enumerate_matchings(a, b):
        worst = Fraction(0)
        stars = sent = 0
        for x, y in zip(reversed(tau.tau1), reversed(tau.tau2)):
            if x is STAR:
                stars += 1
            else:
                sent += 1
                if y is STAR:
                    stars += 1
            r = inf if sent == 0 else Fraction(stars, sent)
            worst = max(worst, r)
        best = min(best, worst)
    return best


def rspd_within_table(a: Sequence[int], b: Sequence[int], theta: Fraction) -> list[list[int]]:
    """Decide RSPD(a[:i], b[:j]) <= theta for every prefix pair at once.

    Scale by theta's denominator so a match gains ``p``, a deletion ``p - q``
    and an insertion ``-q``. Along a matching built left to right, every
    suffix obeys the bound iff the final running total is a running maximum.
    ``h`` tracks the drawdown from that maximum and smaller is always better,
    so a single grid DP suffices: the answer for (i, j) is ``h[i][j] == 0``.
    Returns the h table (row i over sent prefixes, column j over received).
    """
    p, q = theta.numerator, theta.denominator
    na, nb = len(a), len(b)
    h = [[0] * (nb + 1) for _ in range(na + 1)]
    for j in range(1, nb + 1):
        h[0][j] = h[0][j - 1] + q
    for i in range(1, na + 1):
        row, prev = h[i], h[i - 1]
        row[0] = max(prev[0] + q - p, 0)
        ai = a[i - 1]
        for j in range(1, nb + 1):
            best = prev[j] + q - p  # deletion of a[i]
            if best < 0:
                best = 0
            t = row[j - 1] + q  # insertion of b[j]
            if t < best:
                best = t
            if ai == b[j - 1]:
                t = prev[j - 1] - p
                if t < 0:
                    t = 0
                if t < best:
                    best = t
            row[j] = best
    return h


def rspd_at_most(a: Sequence[int], b: Sequence[int], theta: Fraction) -> bool:
    if not a and not b:
        return True
    return rspd_within_table(a, b, theta)[len(a)][len(b)] == 0


def all_strings(alphabet: int, max_len: int) -> Iterator[tuple[int, ...]]:
    for length in range(max_len + 1):
        yield from itertools.product(range(alphabet), repeat=length)
