import math
import random
from fractions import Fraction

import pytest

from syncstr.construction import construct_self_matching_string, construct_sync_string
from syncstr.indexing import count_misdecodings, decode, simulate_channel
from syncstr.insdel_code import (
    DecodeFailure,
    InfeasibleParams,
    code_params,
    dumps_codeword,
    half_error_weight,
    indexing_procedure,
    inner_code,
    insdel_decode,
    insdel_encode,
    loads_codeword,
    rs_decode_half_errors,
    rs_encode,
    word_from_guesses,
)


@pytest.fixture(scope="module")
def small_setup():
    params = code_params(Fraction(1, 10), Fraction(1, 2), 64, decoder="min_rsd", q_sync=256)
    s = construct_sync_string(64, params.sync_eps, seed=1, q2=16)
    return params, s


def test_rate_formulas(small_setup):
    p, _ = small_setup
    lc, ls = p.m * p.r, math.log2(p.q_sync)
    assert p.rate == p.k_msg * lc / (p.n * (lc + ls))
    assert p.rate_lower_bound == pytest.approx(p.k_msg / p.n * (1 - ls / lc))
    assert p.rate >= p.rate_lower_bound
    assert ls / lc <= float(p.eps) / 3


def test_zero_delta_error_free():
    p = code_params(0, Fraction(1, 2), 32, decoder="two_sided_del", q_sync=64)
    assert p.radius == 0 and p.k_msg == 32 and p.k_bound == 0


def test_radius_accounting():
    p = code_params(Fraction(1, 10), Fraction(1, 2), 100, decoder="min_rsd", q_sync=256)
    assert p.radius == p.budget + 2 * p.k_bound
    p = code_params(Fraction(1, 10), Fraction(1, 2), 100, decoder="two_sided_ins", q_sync=256)
    assert p.radius == p.budget + p.k_bound
    assert p.error_free


def test_global_recipe_defaults():
    p = code_params(Fraction(1, 10), Fraction(1, 2), 256)
    assert p.decoder == "global" and p.sync_property == "self_matching"
    assert p.sync_eps == Fraction(1, 144) and p.beta == Fraction(1, 12)
    assert p.rate > 1 - 0.1 - 0.5


def test_infeasible():
    with pytest.raises(InfeasibleParams):
        code_params(Fraction(1, 2), Fraction(1, 2), 64, decoder="min_rsd", q_sync=256)
    with pytest.raises(InfeasibleParams):
        code_params(Fraction(1, 10), Fraction(1, 2), 300, decoder="min_rsd", q_sync=256, m=8)


def test_encode_projection_and_round_trip(small_setup):
    p, s = small_setup
    rng = random.Random(0)
    msg = [rng.randrange(p.q_inner) for _ in range(p.k_msg)]
    word = insdel_encode(msg, p, s)
    assert [b for _, b in word] == list(s.body)
    assert [a for a, _ in word] == rs_encode(msg, p)
    assert indexing_procedure(word, p, s) == rs_encode(msg, p)
    assert insdel_decode(word, p, s) == msg
    with pytest.raises(ValueError):
        insdel_encode(msg, p, s.body[:10])


def test_single_symbol_code():
    p = code_params(0, Fraction(1, 2), 1, decoder="two_sided_del", q_sync=4)
    s = construct_sync_string(1, p.sync_eps, seed=0)
    word = insdel_encode([7], p, s)
    assert word == [(7, s.body[0])]
    assert insdel_decode(word, p, s) == [7]


def test_rs_half_errors(small_setup):
    p, _ = small_setup
    msg = list(range(p.k_msg))
    cw = rs_encode(msg, p)
    red = p.n - p.k_msg
    word = [None] * (red - 2) + cw[red - 2:]
    word[-1] ^= 1
    assert rs_decode_half_errors(word, p) == msg
    word[-2] ^= 1
    with pytest.raises(DecodeFailure):
        rs_decode_half_errors(word, p)


def test_duplicate_claims_erase():
    received = [(5, 0), (6, 0), (7, 1)]
    assert word_from_guesses(received, (1, 1, 2), 3) == [None, 7, None]
    assert half_error_weight([None, 7, 9], [1, 7, 8]) == 1 + 0 + 2


@pytest.mark.parametrize("decoder, mode", [("min_rsd", "insdel"), ("min_rspd", "insdel"), ("global", "insdel"),
                                           ("deletion_greedy", "del_only"), ("two_sided_ins", "ins_only"),
                                           ("two_sided_del", "del_only")])
def test_half_error_bound_and_recovery(decoder, mode):
    n, delta = 64, Fraction(1, 16)
    if decoder == "global":
        p = code_params(delta, Fraction(1, 2), n, decoder, sync_eps=Fraction(1, 64), q_sync=4096)
        s = construct_self_matching_string(n, p.sync_eps, seed=0, alphabet_size=p.q_sync)
    else:
        p = code_params(delta, Fraction(1, 2), n, decoder, q_sync=256)
        s = construct_sync_string(n, p.sync_eps, seed=0, q2=16)
    code = inner_code(p)
    for k in range(20):
        rng = random.Random(k)
        msg = [rng.randrange(p.q_inner) for _ in range(p.k_msg)]
        sent = insdel_encode(msg, p, s, code)
        t = simulate_channel(s, ("uniform_random", "burst", "greedy_repeat")[k % 3], delta, mode, rng)
        received = [sent[o - 1] if o else (rng.randrange(p.q_inner), c) for o, c in zip(t.origin, t.received)]
        guesses = decode(decoder, s.body, t.received, eps=p.sync_eps, beta=p.beta)
        kk = count_misdecodings(t, guesses).misdecodings
        he = half_error_weight(indexing_procedure(received, p, s), [a for a, _ in sent])
        assert he <= p.budget + (1 if p.error_free else 2) * kk
        assert insdel_decode(received, p, s, code) == msg


def test_never_silently_wrong():
    # far outside the radius the decoder must fail loudly or return the message
    p = code_params(Fraction(1, 20), Fraction(1, 2), 40, decoder="min_rsd", q_sync=256)
    s = construct_sync_string(40, p.sync_eps, seed=3, q2=16)
    code = inner_code(p)
    for k in range(40):
        rng = random.Random(k)
        msg = [rng.randrange(p.q_inner) for _ in range(p.k_msg)]
        sent = insdel_encode(msg, p, s, code)
        t = simulate_channel(s, "uniform_random", Fraction(1, 2), "insdel", rng)
        received = [sent[o - 1] if o else (rng.randrange(p.q_inner), c) for o, c in zip(t.origin, t.received)]
        try:
            out = insdel_decode(received, p, s, code)
        except DecodeFailure:
            continue
        if out != msg:
            # only possible if the word landed within the radius of another codeword
            cw = code.encode(out)
            word = indexing_procedure(received, p, s)
            assert half_error_weight(word, cw) <= p.n - p.k_msg


def test_codeword_serialization():
    word = [(1, 2), (30, 4), (0, 0)]
    text = dumps_codeword(word)
    assert text == "1 2\n30 4\n0 0\n"
    assert loads_codeword(text) == word
    with pytest.raises(ValueError, match="line 2"):
        loads_codeword("1 2\n3\n")
