"""Systematic Reed-Solomon codes over GF(2^m) with errors-and-erasures decoding.

The codeword of a message (m_0..m_{k-1}) is the evaluation of the unique
polynomial f of degree < k with f(a_i) = m_i at the points a_0..a_{n-1},
where a_i is the field element with integer representation i. Decoding uses
Gao's algorithm (a partial extended Euclid on the interpolating polynomial).

``InterleavedRS`` runs r such codes side by side; its symbols are ints
packing r field elements, so an insertion or corruption of one symbol hits
all r coordinates at the same position. That keeps the minimum distance and
half-error radius of a single RS code while letting the alphabet grow.
"""
from __future__ import annotations

from collections.abc import Sequence

from .gf import GF2m, field


class DecodeFailure(Exception):
    """The word is not within the decoding radius of any codeword."""


class ReedSolomon:
    def __init__(self, n: int, k: int, m: int):
        self.gf: GF2m = field(m)
        if not 1 <= k <= n <= self.gf.size:
            raise ValueError(f"need 1 <= k <= n <= 2^{m}, got n={n}, k={k}")
        self.n, self.k, self.m = n, k, m
        self.points = list(range(n))
        self._parity = self._lagrange_rows(list(range(k)), range(k, n))

    @property
    def redundancy(self) -> int:
        return self.n - self.k

    def within_radius(self, erasures: int, corruptions: int) -> bool:
        """Half-error condition e + 2c < n - k + 1."""
        return erasures + 2 * corruptions <= self.n - self.k

    def _lagrange_rows(self, basis: list[int], targets) -> list[list[int]]:
        """rows[t][i] = L_i(a_t) for the Lagrange basis on the given points."""
        gf = self.gf
        weights = []
        for i in basis:
            w = 1
            for j in basis:
                if j != i:
                    w = gf.mul(w, i ^ j)
            weights.append(gf.inv(w))
        rows = []
        for t in targets:
            ell = 1
            for j in basis:
                ell = gf.mul(ell, t ^ j)
            rows.append([gf.div(gf.mul(ell, w), t ^ i) for i, w in zip(basis, weights)])
        return rows

    def encode(self, msg: Sequence[int]) -> list[int]:
        if len(msg) != self.k:
            raise ValueError(f"message length {len(msg)} != k={self.k}")
        gf = self.gf
        for v in msg:
            if not 0 <= v < gf.size:
                raise ValueError(f"symbol {v} outside GF(2^{self.m})")
        exp, log = gf.exp, gf.log
        out = list(msg)
        logs = [log[v] if v else None for v in msg]
        for row in self._parity:
            acc = 0
            for lv, c in zip(logs, row):
                if lv is not None and c:
                    acc ^= exp[lv + log[c]]
            out.append(acc)
        return out

    def decode(self, word: Sequence[int | None]) -> list[int]:
        """Recover the message from a word with None marking erasures."""
        return self.decode_codeword(word)[: self.k]

    def decode_codeword(self, word: Sequence[int | None]) -> list[int]:
        if len(word) != self.n:
            raise ValueError(f"word length {len(word)} != n={self.n}")
        gf = self.gf
        xs = [i for i, v in enumerate(word) if v is not None]
        ys = [word[i] for i in xs]
        erasures = self.n - len(xs)
        if erasures > self.n - self.k:
            raise DecodeFailure(f"{erasures} erasures exceed n - k = {self.n - self.k}")
        g1 = gf.interpolate(xs, ys)
        if gf.deg(g1) < self.k:
            f = g1
        else:
            r0, r1 = gf.from_roots(xs), g1
            v0, v1 = [], [1]
            stop = (len(xs) + self.k) / 2
            while gf.deg(r1) >= stop:
                q, rem = gf.pdivmod(r0, r1)
                r0, r1 = r1, rem
                v0, v1 = v1, gf.padd(v0, gf.pmul(q, v1))
            f, rem = gf.pdivmod(r1, v1)
            if rem or gf.deg(f) >= self.k:
                raise DecodeFailure("no codeword within the decoding radius")
        codeword = [gf.peval(f, a) for a in self.points]
        bad = sum(1 for i in xs if codeword[i] != word[i])
        if not self.within_radius(erasures, bad):
            raise DecodeFailure("no codeword within the decoding radius")
        return codeword

    def decode_erasures(self, word: Sequence[int | None]) -> list[int]:
        """Erasure-only decoding: every unerased symbol is trusted.

        Raises DecodeFailure if too many symbols are erased or the unerased
        symbols are not consistent with a single codeword.
        """
        return InterleavedRS(self.n, self.k, self.m, 1).decode_erasures(word)


class InterleavedRS:
    """r parallel RS codes; a symbol is an int holding r field elements.

    Coordinate c of a symbol v is (v >> (m*c)) & (2^m - 1).
    """

    def __init__(self, n: int, k: int, m: int, r: int):
        if r < 1:
            raise ValueError("r must be positive")
        self.base = ReedSolomon(n, k, m)
        self.gf = self.base.gf
        self.n, self.k, self.m, self.r = n, k, m, r
        self.symbol_bits = m * r
        self.alphabet_size = 1 << self.symbol_bits
        self._mask = (1 << m) - 1
        # byte-wise scaling tables make vector arithmetic cheap for m = 8
        self._tables = [bytes(self.gf.mul(c, x) for x in range(256)) for c in range(256)] if m == 8 else None
        # fixed combination used to locate errors shared by all coordinates
        self._mix = [self.gf.pow_alpha(7 * c + 1) for c in range(r)]

    @property
    def redundancy(self) -> int:
        return self.n - self.k

    def within_radius(self, erasures: int, corruptions: int) -> bool:
        return self.base.within_radius(erasures, corruptions)

    # -- vector helpers ----------------------------------------------------

    def split(self, v: int) -> list[int]:
        return [(v >> (self.m * c)) & self._mask for c in range(self.r)]

    def join(self, parts: Sequence[int]) -> int:
        v = 0
        for c, x in enumerate(parts):
            v |= x << (self.m * c)
        return v

    def _scale(self, v: int, c: int) -> int:
        if c == 0 or v == 0:
            return 0
        if self._tables is not None:
            nb = self.r
            return int.from_bytes(v.to_bytes(nb, "little").translate(self._tables[c]), "little")
        return self.join(self.gf.mul(c, x) for x in self.split(v))

    def _combine(self, rows: list[list[int]], vectors: list[int]) -> list[int]:
        out = []
        for row in rows:
            acc = 0
            for c, v in zip(row, vectors):
                if c and v:
                    acc ^= self._scale(v, c)
            out.append(acc)
        return out

    def _check_symbols(self, vs) -> None:
        for v in vs:
            if v is not None and not 0 <= v < self.alphabet_size:
                raise ValueError(f"symbol {v} outside alphabet of size 2^{self.symbol_bits}")

    # -- coding --------------------------------------------------------------

    def encode(self, msg: Sequence[int]) -> list[int]:
        if len(msg) != self.k:
            raise ValueError(f"message length {len(msg)} != k={self.k}")
        self._check_symbols(msg)
        return list(msg) + self._combine(self.base._parity, list(msg))

    def _from_clean(self, word: Sequence[int | None], clean: list[int]) -> list[int]:
        """Codeword interpolated from k trusted positions."""
        basis = clean[: self.k]
        missing = [t for t in range(self.k) if word[t] is None or t not in set(basis)]
        msg = list(word[: self.k])
        if missing:
            rows = self.base._lagrange_rows(basis, missing)
            vals = self._combine(rows, [word[i] for i in basis])
            for t, v in zip(missing, vals):
                msg[t] = v
        return self.encode(msg)

    def _mismatches(self, word, codeword) -> int:
        return sum(1 for w, c in zip(word, codeword) if w is not None and w != c)

    def decode_erasures(self, word: Sequence[int | None]) -> list[int]:
        """Trust every unerased symbol; return the message."""
        if len(word) != self.n:
            raise ValueError(f"word length {len(word)} != n={self.n}")
        self._check_symbols(word)
        clean = [i for i, v in enumerate(word) if v is not None]
        if len(clean) < self.k:
            raise DecodeFailure(f"{self.n - len(clean)} erasures exceed n - k = {self.n - self.k}")
        codeword = self._from_clean(word, clean)
        if self._mismatches(word, codeword):
            raise DecodeFailure("unerased symbols are not consistent with one codeword")
        return codeword[: self.k]

    def decode(self, word: Sequence[int | None]) -> list[int]:
        """Errors-and-erasures decoding: succeeds iff e + 2c <= n - k."""
        if len(word) != self.n:
            raise ValueError(f"word length {len(word)} != n={self.n}")
        self._check_symbols(word)
        erasures = sum(v is None for v in word)
        if erasures > self.n - self.k:
            raise DecodeFailure(f"{erasures} erasures exceed n - k = {self.n - self.k}")
        gf = self.gf
        # a random-looking linear mix of the coordinates is itself an RS
        # word whose error positions are (almost always) the union of the
        # coordinates' error positions
        mixed = []
        for v in word:
            if v is None:
                mixed.append(None)
            else:
                acc = 0
                for c, x in zip(self._mix, self.split(v)):
                    acc ^= gf.mul(c, x)
                mixed.append(acc)
        try:
            mixed_cw = self.base.decode_codeword(mixed)
            clean = [i for i, v in enumerate(mixed) if v is not None and v == mixed_cw[i]]
            codeword = self._from_clean(word, clean)
            if self.within_radius(erasures, self._mismatches(word, codeword)):
                return codeword[: self.k]
        except DecodeFailure:
            pass
        return self._decode_per_coordinate(word, erasures)

    def _decode_per_coordinate(self, word, erasures) -> list[int]:
        cols = [[None if v is None else (v >> (self.m * c)) & self._mask for v in word] for c in range(self.r)]
        decoded = [self.base.decode_codeword(col) for col in cols]
        codeword = [self.join(parts) for parts in zip(*decoded)]
        if not self.within_radius(erasures, self._mismatches(word, codeword)):
            raise DecodeFailure("no codeword within the decoding radius")
        return codeword[: self.k]
