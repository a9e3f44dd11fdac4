import itertools
import random

import pytest

from syncstr.gf import GF2m, field
from syncstr.rs import DecodeFailure, InterleavedRS, ReedSolomon


@pytest.mark.parametrize("m", [2, 3, 4, 8])
def test_field_axioms(m):
    gf = field(m)
    for a in range(1, gf.size):
        assert gf.mul(a, gf.inv(a)) == 1
        assert gf.div(a, a) == 1
    rng = random.Random(m)
    for _ in range(200):
        a, b, c = (rng.randrange(gf.size) for _ in range(3))
        assert gf.mul(a, b ^ c) == gf.mul(a, b) ^ gf.mul(a, c)
        assert gf.mul(gf.mul(a, b), c) == gf.mul(a, gf.mul(b, c))
    # alpha generates the multiplicative group
    assert len({gf.pow_alpha(e) for e in range(gf.order)}) == gf.order


def test_field_errors():
    with pytest.raises(ValueError):
        GF2m(40)
    with pytest.raises(ZeroDivisionError):
        field(4).inv(0)


def test_polynomials():
    gf = field(4)
    rng = random.Random(1)
    for _ in range(100):
        a = gf.trim([rng.randrange(16) for _ in range(rng.randrange(6))])
        b = gf.trim([rng.randrange(16) for _ in range(rng.randrange(1, 5))])
        if not b:
            continue
        q, r = gf.pdivmod(a, b)
        assert gf.padd(gf.pmul(q, b), r) == a
        assert gf.deg(r) < gf.deg(b)
        xs = rng.sample(range(16), 5)
        p = gf.interpolate(xs, [gf.peval(a, x) for x in xs]) if gf.deg(a) < 5 else None
        if p is not None:
            assert p == a
    assert all(gf.peval(gf.from_roots([3, 7]), x) == 0 for x in (3, 7))


def test_encode_is_systematic():
    rs = ReedSolomon(10, 4, 4)
    msg = [1, 2, 3, 4]
    cw = rs.encode(msg)
    assert cw[:4] == msg and len(cw) == 10
    assert rs.decode(cw) == msg
    with pytest.raises(ValueError):
        rs.encode([1, 2, 3])
    with pytest.raises(ValueError):
        rs.encode([1, 2, 3, 16])


def test_every_half_error_budget_small_field():
    # n = 15 over GF(16): every erasure/corruption pattern inside the radius decodes,
    # one step outside it never returns a wrong message silently
    rng = random.Random(3)
    n, k, m = 15, 7, 4
    rs = ReedSolomon(n, k, m)
    red = n - k
    for _ in range(25):
        msg = [rng.randrange(16) for _ in range(k)]
        cw = rs.encode(msg)
        for e in range(red + 1):
            for c in range(0, (red - e) // 2 + 1):
                pos = rng.sample(range(n), e + c)
                word = list(cw)
                for p in pos[:e]:
                    word[p] = None
                for p in pos[e:]:
                    word[p] ^= rng.randrange(1, 16)
                assert rs.decode(word) == msg
        # beyond the radius: either an explicit failure or some codeword in radius
        for _ in range(20):
            word = list(cw)
            for p in rng.sample(range(n), red // 2 + 1):
                word[p] ^= rng.randrange(1, 16)
            try:
                out = rs.decode_codeword(word)
            except DecodeFailure:
                continue
            bad = sum(1 for a, b in zip(out, word) if a != b)
            assert 2 * bad <= red


def test_exhaustive_patterns_tiny_code():
    # n = 7, k = 3 over GF(8): every erasure set and every corruption value with e + 2c <= 4
    rs = ReedSolomon(7, 3, 3)
    msg = [6, 1, 4]
    cw = rs.encode(msg)
    count = 0
    for c in range(3):
        for e in range(5 - 2 * c):
            for pos in itertools.permutations(range(7), e + c):
                if list(pos[:e]) != sorted(pos[:e]) or list(pos[e:]) != sorted(pos[e:]):
                    continue
                for vals in itertools.product(range(1, 8), repeat=c):
                    word = list(cw)
                    for p in pos[:e]:
                        word[p] = None
                    for p, v in zip(pos[e:], vals):
                        word[p] ^= v
                    assert rs.decode(word) == msg
                    count += 1
    assert count == 2206  # sum of C(7,e) C(7-e,c) 7^c over e + 2c <= 4


def test_all_erasure_sets_tiny_code():
    rs = ReedSolomon(7, 3, 3)
    msg = [5, 0, 3]
    cw = rs.encode(msg)
    for e in range(5):
        for pos in itertools.combinations(range(7), e):
            word = [None if i in pos else v for i, v in enumerate(cw)]
            assert rs.decode(word) == msg
            assert rs.decode_erasures(word) == msg
    with pytest.raises(DecodeFailure):
        rs.decode([None] * 5 + cw[5:])


def test_erasure_decoding_detects_inconsistency():
    rs = ReedSolomon(12, 5, 4)
    cw = rs.encode([1, 2, 3, 4, 5])
    word = list(cw)
    word[0] = None
    word[7] ^= 1
    with pytest.raises(DecodeFailure):
        rs.decode_erasures(word)


@pytest.mark.parametrize("m, r", [(4, 3), (8, 5)])
def test_interleaved_within_radius(m, r):
    rng = random.Random(m * r)
    n = 15 if m == 4 else 64
    k = n // 2
    code = InterleavedRS(n, k, m, r)
    red = n - k
    for _ in range(30):
        msg = [rng.randrange(code.alphabet_size) for _ in range(k)]
        cw = code.encode(msg)
        assert cw[:k] == msg
        e = rng.randrange(red + 1)
        c = rng.randrange((red - e) // 2 + 1)
        pos = rng.sample(range(n), e + c)
        word = list(cw)
        for p in pos[:e]:
            word[p] = None
        for p in pos[e:]:
            # corrupt only some coordinates to exercise the mixed locator
            word[p] ^= rng.randrange(1, 1 << m) << (m * rng.randrange(r))
        assert code.decode(word) == msg
        if c == 0:
            assert code.decode_erasures(word) == msg


def test_interleaved_split_join():
    code = InterleavedRS(10, 4, 4, 3)
    v = 0xABC
    assert code.split(v) == [0xC, 0xB, 0xA]
    assert code.join(code.split(v)) == v
    with pytest.raises(ValueError):
        code.encode([1 << 12, 0, 0, 0])
