"""The (n, delta)-indexing problem: adversaries, decoders and misdecoding
accounting.

Decoders return a tuple with one entry per received symbol: a 1-based index
into the sent string, or None for "I don't know".
"""
from __future__ import annotations

import math
import random
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

from .sync_properties import as_fraction
from .strings_core import Delete, EditAction, Insert, Transcript, apply_script, longest_common_subsequence, rspd_within_table

DecodedIndices = tuple  # tuple[int | None, ...]

ADVERSARIES = ("uniform_random", "burst", "greedy_repeat")
MODES = ("insdel", "del_only", "ins_only")
DECODERS = ("min_rsd", "min_rspd", "global", "deletion_greedy", "two_sided_ins", "two_sided_del")


class ChannelContractError(ValueError):
    """The received string is impossible under the decoder's channel model."""


# ---------------------------------------------------------------------------
# adversaries


def action_budget(n: int, delta) -> int:
    delta = as_fraction(delta)
    if delta < 0:
        raise ValueError("delta must be non-negative")
    return math.floor(n * delta)


def _split(budget: int, mode: str, rng: random.Random, n: int, even: bool) -> tuple[int, int]:
    """(deletions, insertions) adding up to ``budget``."""
    if mode == "del_only":
        n_del = budget
    elif mode == "ins_only":
        n_del = 0
    elif even:
        n_del = budget // 2
    else:
        n_del = sum(rng.random() < 0.5 for _ in range(budget))
    n_del = min(n_del, n)
    if mode == "del_only" and n_del < budget:
        raise ValueError(f"cannot delete {budget} of {n} symbols")
    return n_del, budget - n_del


def _copy_symbol(sent: Sequence[int], rng: random.Random) -> int:
    return sent[rng.randrange(len(sent))] if sent else 0


def _uniform(sent, budget, mode, rng):
    n = len(sent)
    n_del, n_ins = _split(budget, mode, rng, n, even=False)
    script: list[EditAction] = [Delete(p) for p in sorted(rng.sample(range(1, n + 1), n_del))]
    for _ in range(n_ins):
        script.append(Insert(rng.randint(0, n), _copy_symbol(sent, rng)))
    return script


def _burst(sent, budget, mode, rng):
    n = len(sent)
    n_del, n_ins = _split(budget, mode, rng, n, even=True)
    script: list[EditAction] = []
    if n_del:
        start = rng.randint(1, n - n_del + 1)
        script.extend(Delete(p) for p in range(start, start + n_del))
    if n_ins:
        gap = rng.randint(0, n)
        script.extend(Insert(gap, _copy_symbol(sent, rng)) for _ in range(n_ins))
    return script


def _repeat_pairs(sent, budget):
    """Runs S[i..j-1] with S[i] == S[j], shortest first, pairwise disjoint."""
    last: dict[int, int] = {}
    runs = []
    for j, c in enumerate(sent):
        if c in last:
            runs.append((j - last[c], last[c]))
        last[c] = j
    runs.sort()
    used = [False] * len(sent)
    chosen = []
    for length, i in runs:
        if length > budget:
            break
        if any(used[i:i + length + 1]):
            continue
        for x in range(i, i + length + 1):
            used[x] = True
        chosen.append((i, length))
        budget -= length
    return chosen, budget


def _greedy_repeat(sent, budget, mode, rng):
    """Spoof upcoming indices: replay copies of S[p+1..p+r] right after S[p]
    (dropping the genuine S[p-r'+1..p] in insdel mode). In deletion-only mode
    cut runs between two equal symbols so the later copy slides left."""
    n = len(sent)
    script: list[EditAction] = []
    if budget == 0 or n == 0:
        return script
    if mode == "del_only":
        chosen, rest = _repeat_pairs(sent, budget)
        deleted = set()
        for i, length in chosen:
            deleted.update(range(i + 1, i + length + 1))
        free = [p for p in range(1, n + 1) if p not in deleted]
        deleted.update(rng.sample(free, rest))
        return [Delete(p) for p in sorted(deleted)]
    block = max(1, math.isqrt(budget))
    blocks = [block] * (budget // block)
    if budget % block:
        blocks.append(budget % block)
    seg = n / len(blocks)
    for b, size in enumerate(blocks):
        lo, hi = int(b * seg), max(int((b + 1) * seg), int(b * seg) + 1)
        if mode == "ins_only":
            n_ins, n_del = size, 0
        else:
            n_ins = (size + 1) // 2
            n_del = min(size - n_ins, hi - lo)
            n_ins = size - n_del
        p = rng.randint(lo + n_del, hi) if hi >= lo + n_del else hi
        p = min(p, n)
        script.extend(Delete(x) for x in range(p - n_del + 1, p + 1))
        script.extend(Insert(p, sent[(p + r) % n]) for r in range(n_ins))
    return script


def adversary_generate(kind: str, sent: Sequence[int], delta, mode: str, rng: random.Random) -> list[EditAction]:
    """An edit script of exactly floor(n * delta) actions restricted to ``mode``.

    Inserted symbols are copies of symbols of ``sent``, which is the harder
    case for every decoder here (a symbol outside S is trivially spotted).
    """
    if kind not in ADVERSARIES:
        raise ValueError(f"unknown adversary {kind!r}")
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    budget = action_budget(len(sent), delta)
    if budget == 0:
        return []
    if kind == "uniform_random":
        script = _uniform(sent, budget, mode, rng)
    elif kind == "burst":
        script = _burst(sent, budget, mode, rng)
    else:
        script = _greedy_repeat(sent, budget, mode, rng)
    assert len(script) == budget
    return script


def simulate_channel(sent, kind: str, delta, mode: str, rng: random.Random) -> Transcript:
    alphabet = getattr(sent, "alphabet_size", None)
    body = getattr(sent, "body", sent)
    return apply_script(body, adversary_generate(kind, body, delta, mode, rng), alphabet)


# ---------------------------------------------------------------------------
# decoders


def decode_min_rsd(s: Sequence[int], received: Sequence[int]) -> DecodedIndices:
    """Streaming minimum relative suffix distance decoding.

    RSD(S[1..i], R[1..j]) is 1 whenever S[i] != R[j], so only prefixes ending
    in R[j] can beat the default. Each candidate is scored by one bit-parallel
    pass over the reversed strings, abandoned as soon as some suffix length
    already reaches the best score so far. Ties go to the smallest index.
    """
    s, r = list(s), list(received)
    where: dict[int, list[int]] = {}
    for i, c in enumerate(s, start=1):
        where.setdefault(c, []).append(i)
    out = []
    rmasks: dict[int, int] = {}
    for j in range(1, len(r) + 1):
        # bit p of rmasks[c] marks R[j - p] == c, i.e. the reversed prefix
        for c in rmasks:
            rmasks[c] <<= 1
        rmasks[r[j - 1]] = rmasks.get(r[j - 1], 0) | 1
        best_i, bn, bd = 1, 1, 1
        for i in where.get(r[j - 1], ()):
            score = _rsd_capped(s, i, rmasks, j, bn, bd)
            if score is not None:
                best_i, (bn, bd) = i, score
        out.append(best_i)
    return tuple(out)


def _rsd_capped(s, i, rmasks, j, bn, bd):
    """RSD(S[1..i], R[1..j]) as (num, den) if below bn/bd, else None.

    With equal-length suffixes ED = 2(k - LCS), and k - LCS is the number of
    one bits among the low k bits of the row vector, so the ratio ED/2k is a
    popcount over k.
    """
    width = max(i, j)
    full = (1 << width) - 1
    pad = full ^ ((1 << j) - 1)
    v = full
    wn, wd = 0, 1
    for k in range(1, width + 1):
        m = rmasks.get(s[i - k], 0) if k <= i else pad
        u = v & m
        v = ((v + u) | (v - u)) & full
        pc = (v & ((1 << k) - 1)).bit_count()
        if pc * bd >= bn * k:
            return None
        if pc * wd > wn * k:
            wn, wd = pc, k
    return wn, wd


def decode_min_rsd_naive(s: Sequence[int], received: Sequence[int]) -> DecodedIndices:
    """Reference implementation: score every prefix of S at every step."""
    from .strings_core import relative_suffix_distance

    s, r = list(s), list(received)
    out = []
    for j in range(1, len(r) + 1):
        scores = [relative_suffix_distance(s[:i], r[:j]) for i in range(1, len(s) + 1)]
        out.append(1 + min(range(len(scores)), key=lambda x: (scores[x], x)) if scores else 1)
    return tuple(out)


def decode_min_rspd(s: Sequence[int], received: Sequence[int], eps) -> DecodedIndices:
    """Output the unique prefix S[1..i] with RSPD(S[1..i], R[1..j]) <= 1 - eps.

    A single decision table over S x R answers the threshold question for
    every pair of prefixes at once (see ``rspd_within_table``), so each column
    j is the streaming answer after R[1..j]. If no prefix or several qualify
    the output is None.
    """
    eps = as_fraction(eps)
    s, r = list(s), list(received)
    h = rspd_within_table(s, r, 1 - eps)
    out = []
    for j in range(1, len(r) + 1):
        hits = [i for i in range(1, len(s) + 1) if h[i][j] == 0]
        out.append(hits[0] if len(hits) == 1 else None)
    return tuple(out)


def global_rounds(beta) -> int:
    beta = as_fraction(beta)
    if not 0 < beta <= 1:
        raise ValueError("beta must lie in (0, 1]")
    return math.ceil(1 / beta)


def decode_global(s: Sequence[int], received: Sequence[int], beta) -> DecodedIndices:
    """Repeated LCS decoding.

    Round r matches S against the received symbols left unmatched by rounds
    1..r-1. R[t] is decoded as i iff S[i] was matched in exactly one round
    (necessarily to R[t]).
    """
    s, r = list(s), list(received)
    rounds = global_rounds(beta)
    unmatched = list(range(len(r)))
    matched_to: dict[int, list[int]] = {}
    for _ in range(rounds):
        if not unmatched:
            break
        m = longest_common_subsequence(s, [r[t] for t in unmatched])
        if not len(m):
            break
        used = set()
        for i, x in m:
            t = unmatched[x - 1]
            matched_to.setdefault(i, []).append(t)
            used.add(t)
        unmatched = [t for t in unmatched if t not in used]
    out: list[int | None] = [None] * len(r)
    for i, ts in matched_to.items():
        if len(ts) == 1:
            out[ts[0]] = i
    return tuple(out)


def _greedy_embed(short: Sequence[int], long: Sequence[int]) -> list[int] | None:
    """Leftmost 0-based positions of ``long`` hosting ``short`` as a subsequence."""
    pos = []
    x = 0
    for c in short:
        while x < len(long) and long[x] != c:
            x += 1
        if x == len(long):
            return None
        pos.append(x)
        x += 1
    return pos


def _rightmost_embed(short, long):
    rev = _greedy_embed(list(reversed(short)), list(reversed(long)))
    if rev is None:
        return None
    return [len(long) - 1 - x for x in reversed(rev)]


def decode_deletion_greedy(s: Sequence[int], received: Sequence[int]) -> DecodedIndices:
    """Match each received symbol to the leftmost usable position of S."""
    pos = _greedy_embed(list(received), list(s))
    if pos is None:
        raise ChannelContractError("received string is not a subsequence of S")
    return tuple(x + 1 for x in pos)


def decode_two_sided(s: Sequence[int], received: Sequence[int], mode: str) -> DecodedIndices:
    """Error-free decoding from the leftmost and rightmost saturating matchings.

    A pair is output only if both extreme matchings agree on it, which forces
    every saturating matching (the true one included) to contain it.
    """
    s, r = list(s), list(received)
    out: list[int | None] = [None] * len(r)
    if mode == "ins_only":
        left, right = _greedy_embed(s, r), _rightmost_embed(s, r)
        if left is None:
            raise ChannelContractError("S is not a subsequence of the received string")
        for i, (a, b) in enumerate(zip(left, right), start=1):
            if a == b:
                out[a] = i
    elif mode == "del_only":
        left, right = _greedy_embed(r, s), _rightmost_embed(r, s)
        if left is None:
            raise ChannelContractError("received string is not a subsequence of S")
        for t, (a, b) in enumerate(zip(left, right)):
            if a == b:
                out[t] = a + 1
    else:
        raise ValueError(f"two-sided decoding needs ins_only or del_only, not {mode!r}")
    return tuple(out)


def decode(name: str, s, received, eps=None, beta=None) -> DecodedIndices:
    if name == "min_rsd":
        return decode_min_rsd(s, received)
    if name == "min_rspd":
        return decode_min_rspd(s, received, eps)
    if name == "global":
        return decode_global(s, received, beta)
    if name == "deletion_greedy":
        return decode_deletion_greedy(s, received)
    if name == "two_sided_ins":
        return decode_two_sided(s, received, "ins_only")
    if name == "two_sided_del":
        return decode_two_sided(s, received, "del_only")
    raise ValueError(f"unknown decoder {name!r}")


ERROR_FREE = frozenset({"two_sided_ins", "two_sided_del"})
DECODER_MODES = {
    "min_rsd": MODES,
    "min_rspd": MODES,
    "global": MODES,
    "deletion_greedy": ("del_only",),
    "two_sided_ins": ("ins_only",),
    "two_sided_del": ("del_only",),
}


# ---------------------------------------------------------------------------
# accounting


@dataclass(frozen=True)
class MisdecodingReport:
    transmitted_total: int
    correctly_decoded: int
    misdecodings: int
    error_free_violations: int


def count_misdecodings(t: Transcript, guesses: Sequence) -> MisdecodingReport:
    if len(guesses) != len(t.received):
        raise ValueError(f"{len(guesses)} guesses for {len(t.received)} received symbols")
    transmitted = correct = wrong = 0
    for origin, g in zip(t.origin, guesses):
        if origin is not None:
            transmitted += 1
            correct += g == origin
        if g is not None and g != origin:
            wrong += 1
    return MisdecodingReport(transmitted, correct, transmitted - correct, wrong)


@dataclass(frozen=True)
class Bound:
    value: Fraction
    strict: bool = False

    def holds(self, x) -> bool:
        return x < self.value if self.strict else x <= self.value


def misdecoding_bound(decoder: str, n: int, eps, d_i: int, d_r: int, beta=None, property: str = "full_sync") -> Bound:
    """The quoted misdecoding guarantee, evaluated on the actual action counts.

    With r = ceil(1/beta) rounds the global decoder's argument gives
    |received|/r + r*eps*n, which equals the usual form when 1/beta is an
    integer.
    """
    eps = as_fraction(eps)
    one = 1 - eps
    if decoder == "min_rsd":
        if property == "self_matching":
            return Bound(n * (4 * Fraction(d_i + d_r, n) + 6 * eps) if n else Fraction(0))
        return Bound(2 * Fraction(d_i + d_r) / one - d_r)
    if decoder == "min_rspd":
        if d_i == d_r == 0:
            return Bound(Fraction(0))
        return Bound(d_i / one + d_r * eps / one, strict=True)
    if decoder == "global":
        r = global_rounds(beta)
        return Bound(Fraction(n + d_i - d_r, r) + r * eps * n)
    if decoder in ("deletion_greedy", "two_sided_del"):
        return Bound(eps / one * d_r)
    if decoder == "two_sided_ins":
        return Bound(d_i / one)
    raise ValueError(f"unknown decoder {decoder!r}")
