"""Insertion-deletion codes from a half-error code plus a synchronization string.

Encoding pairs the i-th inner codeword symbol with S[i]. Decoding runs an
indexing decoder on the received sync coordinates, places each message
coordinate at the index it was decoded to (erasing indices claimed zero or
several times), and hands the resulting half-error word to the inner code.
"""
from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import asdict, dataclass
from fractions import Fraction

from .construction import FULL_SYNC, SELF_MATCHING, SyncString, recommended_alphabet_size
from .indexing import ERROR_FREE, action_budget, decode, global_rounds, misdecoding_bound
from .sync_properties import as_fraction
from .rs import DecodeFailure, InterleavedRS

__all__ = [
    "DecodeFailure",
    "InfeasibleParams",
    "InsdelCodeParams",
    "code_params",
    "inner_code",
    "insdel_encode",
    "indexing_procedure",
    "insdel_decode",
    "half_error_weight",
    "rs_encode",
    "rs_decode_half_errors",
    "dumps_codeword",
    "loads_codeword",
]


class InfeasibleParams(ValueError):
    pass


@dataclass(frozen=True)
class InsdelCodeParams:
    n: int
    delta: Fraction
    eps: Fraction  # target slack
    sync_eps: Fraction  # quality of the attached string
    sync_property: str
    decoder: str
    beta: Fraction | None
    q_sync: int
    m: int  # inner field GF(2^m)
    r: int  # field elements per inner symbol
    budget: int  # floor(n * delta)
    k_bound: int  # misdecoding guarantee of the decoder at this budget
    radius: int  # half-errors the inner code must absorb
    k_msg: int

    @property
    def q_inner(self) -> int:
        return 1 << (self.m * self.r)

    @property
    def error_free(self) -> bool:
        return self.decoder in ERROR_FREE

    @property
    def inner_rate(self) -> float:
        return self.k_msg / self.n

    @property
    def rate(self) -> float:
        """Message bits over transmitted bits: k log q_C / (n (log q_C + log q_S))."""
        lc, ls = self.m * self.r, math.log2(self.q_sync)
        return self.k_msg * lc / (self.n * (lc + ls))

    @property
    def rate_lower_bound(self) -> float:
        """R_C (1 - log q_S / log q_C), the form used in the rate theorem."""
        return self.inner_rate * (1 - math.log2(self.q_sync) / (self.m * self.r))

    def as_dict(self) -> dict:
        d = asdict(self)
        for key in ("delta", "eps", "sync_eps", "beta"):
            if d[key] is not None:
                d[key] = str(d[key])
        d.update(q_inner_bits=self.m * self.r, rate=self.rate, rate_lower_bound=self.rate_lower_bound)
        return d


def _exact_sqrt(x: Fraction) -> Fraction | None:
    p, q = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if p * p == x.numerator and q * q == x.denominator:
        return Fraction(p, q)
    return None


def worst_case_misdecodings(decoder: str, n: int, eps, budget: int, beta=None, property: str = FULL_SYNC) -> int:
    """Largest integer count allowed by the decoder's guarantee over all
    splits of the budget into insertions and deletions."""
    worst = 0
    for d_i in range(budget + 1):
        b = misdecoding_bound(decoder, n, eps, d_i, budget - d_i, beta, property)
        v = b.value
        cap = math.ceil(v) - 1 if b.strict else math.floor(v)
        worst = max(worst, max(cap, 0))
    return worst


def code_params(
    delta,
    eps,
    n: int,
    decoder: str = "global",
    sync_eps=None,
    beta=None,
    m: int | None = None,
    r: int | None = None,
    q_sync: int | None = None,
    sync_property: str | None = None,
) -> InsdelCodeParams:
    """Size the inner code for a decoder and an adversary budget of n*delta.

    With the global decoder the default follows the rate theorem's recipe:
    sync_eps = (eps/6)^2 on a self-matching string and beta = sqrt(sync_eps).
    Other decoders use a full synchronization string at sync_eps = eps
    unless ``sync_property`` says otherwise.
    The inner alphabet is GF(2^m)^r with r chosen so that
    log q_sync / log q_inner <= eps/3.
    """
    delta, eps = as_fraction(delta), as_fraction(eps)
    if not 0 < eps < 1 or delta < 0:
        raise InfeasibleParams("need 0 < eps < 1 and delta >= 0")
    if decoder == "global":
        sync_eps = (eps / 6) ** 2 if sync_eps is None else as_fraction(sync_eps)
        prop = SELF_MATCHING
        if beta is None:
            beta = _exact_sqrt(sync_eps) or Fraction(math.sqrt(sync_eps)).limit_denominator(1 << 16)
        beta = as_fraction(beta)
        global_rounds(beta)
    else:
        sync_eps = eps if sync_eps is None else as_fraction(sync_eps)
        prop = FULL_SYNC
        beta = None
    if sync_property is not None:
        prop = sync_property
    if q_sync is None:
        q_sync = recommended_alphabet_size(sync_eps, prop)
    if m is None:
        m = max(8, (n - 1).bit_length())
    if n > (1 << m):
        raise InfeasibleParams(f"n={n} exceeds the field size 2^{m}")
    if r is None:
        r = max(1, math.ceil(3 * math.log2(q_sync) / (float(eps) * m)))
    budget = action_budget(n, delta)
    k_bound = worst_case_misdecodings(decoder, n, sync_eps, budget, beta, prop)
    radius = budget + (k_bound if decoder in ERROR_FREE else 2 * k_bound)
    k_msg = n - radius
    if k_msg < 1:
        raise InfeasibleParams(
            f"radius {radius} = budget {budget} + misdecodings leaves no room for a message at n={n}"
        )
    return InsdelCodeParams(n, delta, eps, sync_eps, prop, decoder, beta, q_sync, m, r, budget, k_bound, radius, k_msg)


def inner_code(params: InsdelCodeParams) -> InterleavedRS:
    return InterleavedRS(params.n, params.k_msg, params.m, params.r)


def rs_encode(msg: Sequence[int], params: InsdelCodeParams) -> list[int]:
    return inner_code(params).encode(list(msg))


def rs_decode_half_errors(word: Sequence[int | None], params: InsdelCodeParams) -> list[int]:
    """Message from a half-error word; DecodeFailure outside the radius."""
    return inner_code(params).decode(word)


def _check_string(params: InsdelCodeParams, s: SyncString | Sequence[int]) -> None:
    if len(s) != params.n:
        raise ValueError(f"sync string length {len(s)} != n={params.n}")


def insdel_encode(msg: Sequence[int], params: InsdelCodeParams, s, code: InterleavedRS | None = None) -> list[tuple[int, int]]:
    _check_string(params, s)
    code = code or inner_code(params)
    return list(zip(code.encode(list(msg)), list(s)))


def indexing_procedure(received: Sequence[tuple[int, int]], params: InsdelCodeParams, s) -> list[int | None]:
    """Half-error word: position i holds the message coordinate of the unique
    received symbol decoded to i, or None if zero or several claim i."""
    _check_string(params, s)
    sync = [p[1] for p in received]
    guesses = decode(params.decoder, list(s), sync, eps=params.sync_eps, beta=params.beta)
    return word_from_guesses(received, guesses, params.n)


def word_from_guesses(received, guesses, n: int) -> list[int | None]:
    claims: dict[int, list[int]] = {}
    for j, g in enumerate(guesses):
        if g is not None:
            claims.setdefault(g, []).append(j)
    word: list[int | None] = [None] * n
    for i, js in claims.items():
        if len(js) == 1:
            word[i - 1] = received[js[0]][0]
    return word


def insdel_decode(received: Sequence[tuple[int, int]], params: InsdelCodeParams, s, code: InterleavedRS | None = None) -> list[int]:
    """The original message, or DecodeFailure."""
    code = code or inner_code(params)
    word = indexing_procedure(received, params, s)
    if params.error_free:
        return code.decode_erasures(word)
    return code.decode(word)


def half_error_weight(word: Sequence[int | None], codeword: Sequence[int]) -> int:
    """Erasures count one, wrong symbols count two."""
    if len(word) != len(codeword):
        raise ValueError("length mismatch")
    return sum(1 if w is None else 2 * (w != c) for w, c in zip(word, codeword))


def dumps_codeword(word: Sequence[tuple[int, int]]) -> str:
    """One ``inner sync`` pair per line."""
    return "".join(f"{a} {b}\n" for a, b in word)


def loads_codeword(text: str) -> list[tuple[int, int]]:
    out = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        parts = line.split()
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise ValueError(f"line {lineno}: expected two non-negative integers")
        out.append((int(parts[0]), int(parts[1])))
    return out
