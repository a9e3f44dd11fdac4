"""Arithmetic in GF(2^m) and dense polynomials over it.

Elements are ints in [0, 2^m). Polynomials are lists of coefficients, lowest
degree first, with no trailing zeros (the zero polynomial is []).
"""
from __future__ import annotations

from functools import lru_cache

# x^m + ... with x primitive
PRIMITIVE_POLYS = {
    2: 0x7, 3: 0xB, 4: 0x13, 5: 0x25, 6: 0x43, 7: 0x89, 8: 0x11D,
    9: 0x211, 10: 0x409, 11: 0x805, 12: 0x1053, 13: 0x201B, 14: 0x4443,
    15: 0x8003, 16: 0x1100B,
}


class GF2m:
    def __init__(self, m: int):
        if m not in PRIMITIVE_POLYS:
            raise ValueError(f"no primitive polynomial configured for m={m}")
        self.m = m
        self.size = 1 << m
        self.order = self.size - 1
        exp = [0] * (2 * self.order)
        log = [0] * self.size
        x = 1
        for i in range(self.order):
            exp[i] = x
            log[x] = i
            x <<= 1
            if x & self.size:
                x ^= PRIMITIVE_POLYS[m]
        for i in range(self.order, 2 * self.order):
            exp[i] = exp[i - self.order]
        self.exp, self.log = exp, log

    def __repr__(self) -> str:
        return f"GF(2^{self.m})"

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp[self.log[a] + self.log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.exp[self.order - self.log[a]]

    def div(self, a: int, b: int) -> int:
        if b == 0:
            raise ZeroDivisionError("division by 0")
        if a == 0:
            return 0
        return self.exp[self.log[a] - self.log[b] + self.order]

    def pow_alpha(self, e: int) -> int:
        return self.exp[e % self.order]

    # -- polynomials -------------------------------------------------------

    @staticmethod
    def trim(p: list[int]) -> list[int]:
        while p and p[-1] == 0:
            p.pop()
        return p

    @staticmethod
    def deg(p: list[int]) -> int:
        return len(p) - 1  # -1 for the zero polynomial

    def padd(self, a: list[int], b: list[int]) -> list[int]:
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] ^= c
        return self.trim(out)

    def pscale(self, p: list[int], c: int) -> list[int]:
        if c == 0:
            return []
        lc = self.log[c]
        exp, log = self.exp, self.log
        return [exp[log[x] + lc] if x else 0 for x in p]

    def pmul(self, a: list[int], b: list[int]) -> list[int]:
        if not a or not b:
            return []
        exp, log = self.exp, self.log
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            lx = log[x]
            for j, y in enumerate(b):
                if y:
                    out[i + j] ^= exp[lx + log[y]]
        return self.trim(out)

    def pdivmod(self, a: list[int], b: list[int]) -> tuple[list[int], list[int]]:
        if not b:
            raise ZeroDivisionError("polynomial division by zero")
        exp, log = self.exp, self.log
        rem = list(a)
        db = len(b) - 1
        if len(rem) - 1 < db:
            return [], self.trim(rem)
        quot = [0] * (len(rem) - db)
        lead_inv_log = self.order - log[b[-1]]
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i]
            if c == 0:
                continue
            lq = log[c] + lead_inv_log
            if lq >= self.order:
                lq -= self.order
            quot[i - db] = exp[lq]
            for j, y in enumerate(b):
                if y:
                    rem[i - db + j] ^= exp[lq + log[y]]
        return self.trim(quot), self.trim(rem[:db])

    def peval(self, p: list[int], x: int) -> int:
        acc = 0
        if x == 0:
            return p[0] if p else 0
        exp, log = self.exp, self.log
        lx = log[x]
        for c in reversed(p):
            acc = (exp[log[acc] + lx] if acc else 0) ^ c
        return acc

    def from_roots(self, roots) -> list[int]:
        """prod (x - r) over the given roots."""
        p = [1]
        exp, log = self.exp, self.log
        for r in roots:
            nxt = [0] * (len(p) + 1)
            for i, c in enumerate(p):
                nxt[i + 1] ^= c
                if c and r:
                    nxt[i] ^= exp[log[c] + log[r]]
            p = nxt
        return p

    def interpolate(self, xs: list[int], ys: list[int]) -> list[int]:
        """The unique polynomial of degree < len(xs) through the points (Newton form)."""
        k = len(xs)
        coef = list(ys)
        for level in range(1, k):
            for i in range(k - 1, level - 1, -1):
                num = coef[i] ^ coef[i - 1]
                den = xs[i] ^ xs[i - level]
                coef[i] = self.div(num, den)
        # expand the Newton form, innermost first
        p: list[int] = []
        for i in range(k - 1, -1, -1):
            # p = p * (x - xs[i]) + coef[i]
            p = self.padd(self.pmul(p, [xs[i], 1]) if p else [], [coef[i]])
        return p


@lru_cache(maxsize=None)
def field(m: int) -> GF2m:
    return GF2m(m)
