"""Randomized constructions of certified synchronization and self-matching
strings, plus their on-disk format."""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .sync_properties import as_fraction, check_self_matching, check_synchronization
from .strings_core import SymbolString

FULL_SYNC = "full_sync"
SELF_MATCHING = "self_matching"
PROPERTIES = (FULL_SYNC, SELF_MATCHING)

# Engineering defaults; the existence proofs only fix these up to constants.
DEFAULT_C2 = 4
DEFAULT_C3 = 8


class ConstructionError(RuntimeError):
    def __init__(self, message: str, seed):
        super().__init__(f"{message} (seed={seed})")
        self.seed = seed


@dataclass(frozen=True)
class SyncString:
    """A string certified to have ``property`` at level ``eps``."""

    body: SymbolString
    eps: Fraction
    property: str
    seed: int
    attempts: int = 0  # resamplings (full_sync) or redraws (self_matching)

    @property
    def alphabet_size(self) -> int:
        return self.body.alphabet_size

    def __len__(self) -> int:
        return len(self.body)

    def __getitem__(self, idx):
        return self.body[idx]

    def __iter__(self):
        return iter(self.body)

    def verify(self, eps=None):
        eps = self.eps if eps is None else eps
        if self.property == FULL_SYNC:
            return check_synchronization(self.body, eps)
        return check_self_matching(self.body, eps)


def _ceil(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def _check(eps, prop) -> Fraction:
    eps = as_fraction(eps)
    if not 0 < eps < 1:
        raise ValueError(f"eps must lie in (0, 1), got {eps}")
    if prop not in PROPERTIES:
        raise ValueError(f"unknown property {prop!r}")
    return eps


def sync_alphabet_factors(eps, c2: int = DEFAULT_C2, q2: int | None = None) -> tuple[int, int]:
    """(t, q2) for the full-sync alphabet of symbols (i mod t, R_i)."""
    eps = _check(eps, FULL_SYNC)
    t = _ceil(c2 / eps**2)
    if q2 is None:
        q2 = math.ceil(49 * math.e**2 / float(eps) ** 2)
    return t, q2


def recommended_alphabet_size(eps, property: str, c2: int = DEFAULT_C2, q2: int | None = None, c3: int = DEFAULT_C3) -> int:
    eps = _check(eps, property)
    if property == FULL_SYNC:
        t, q2 = sync_alphabet_factors(eps, c2, q2)
        return t * q2
    return _ceil(c3 / eps**3)


def construct_sync_string(
    n: int,
    eps,
    seed: int = 0,
    c2: int = DEFAULT_C2,
    q2: int | None = None,
    max_resamples: int | None = None,
) -> SyncString:
    """Sample symbols (i mod t, R_i) and resample the first violating
    interval until the string certifies as eps-synchronized."""
    eps = _check(eps, FULL_SYNC)
    if n < 1:
        raise ValueError("n must be positive")
    t, q2 = sync_alphabet_factors(eps, c2, q2)
    cap = 100 * n if max_resamples is None else max_resamples
    rng = random.Random(seed)
    r = [rng.randrange(q2) for _ in range(n)]
    resamples = 0
    while True:
        body = [(i % t) * q2 + r[i] for i in range(n)]
        verdict = check_synchronization(body, eps)
        if verdict.holds:
            return SyncString(SymbolString(body, t * q2), eps, FULL_SYNC, seed, resamples)
        if resamples >= cap:
            raise ConstructionError(f"no {eps}-synchronization string after {cap} resamplings", seed)
        w = verdict.witness
        for x in range(w.i - 1, w.k - 1):
            r[x] = rng.randrange(q2)
        resamples += 1


def construct_self_matching_string(
    n: int,
    eps,
    seed: int = 0,
    c3: int = DEFAULT_C3,
    alphabet_size: int | None = None,
    max_retries: int = 50,
) -> SyncString:
    """Draw uniform strings until one has the eps-self-matching property."""
    eps = _check(eps, SELF_MATCHING)
    if n < 1:
        raise ValueError("n must be positive")
    q = alphabet_size or recommended_alphabet_size(eps, SELF_MATCHING, c3=c3)
    rng = random.Random(seed)
    for attempt in range(max_retries + 1):
        body = [rng.randrange(q) for _ in range(n)]
        if check_self_matching(body, eps).holds:
            return SyncString(SymbolString(body, q), eps, SELF_MATCHING, seed, attempt)
    raise ConstructionError(f"no {eps}-self-matching string after {max_retries} retries", seed)


# ---------------------------------------------------------------------------
# file format


class FormatError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


def dumps(s: SyncString) -> str:
    eps = s.eps
    header = (
        f"syncstr v1 n={len(s)} q={s.alphabet_size} eps={eps.numerator}/{eps.denominator} "
        f"property={s.property} seed={s.seed}"
    )
    return header + "\n" + " ".join(map(str, s.body)) + "\n"


def loads(text: str, check: bool = False) -> SyncString:
    lines = text.split("\n")
    fields = lines[0].split()
    if fields[:2] != ["syncstr", "v1"]:
        raise FormatError("expected header 'syncstr v1 ...'", 1)
    kv = {}
    for f in fields[2:]:
        key, sep, val = f.partition("=")
        if not sep:
            raise FormatError(f"malformed header field {f!r}", 1)
        kv[key] = val
    missing = {"n", "q", "eps", "property", "seed"} - kv.keys()
    if missing:
        raise FormatError(f"header missing {sorted(missing)}", 1)
    try:
        n, q, seed = int(kv["n"]), int(kv["q"]), int(kv["seed"])
        eps = Fraction(kv["eps"])
    except ValueError as e:
        raise FormatError(str(e), 1) from None
    if kv["property"] not in PROPERTIES:
        raise FormatError(f"unknown property {kv['property']!r}", 1)
    symbols = []
    for lineno, line in enumerate(lines[1:], start=2):
        for tok in line.split():
            try:
                v = int(tok)
            except ValueError:
                raise FormatError(f"bad symbol {tok!r}", lineno) from None
            if not 0 <= v < q:
                raise FormatError(f"symbol {v} outside alphabet of size {q}", lineno)
            symbols.append(v)
    if len(symbols) != n:
        raise FormatError(f"header says n={n} but found {len(symbols)} symbols", 2)
    s = SyncString(SymbolString(symbols, q), eps, kv["property"], seed)
    if check and not s.verify().holds:
        raise FormatError(f"string does not have {s.property} at eps={eps}", 2)
    return s


def save(s: SyncString, path) -> None:
    Path(path).write_text(dumps(s))


def load(path, check: bool = False) -> SyncString:
    return loads(Path(path).read_text(), check)
