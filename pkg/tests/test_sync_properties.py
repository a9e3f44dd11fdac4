import random
from fractions import Fraction

import oracles as O
import pytest

from syncstr.construction import construct_sync_string
from syncstr.strings_core import all_strings, edit_distance, relative_suffix_distance
from syncstr.sync_properties import (
    SyncViolation,
    check_self_matching,
    check_synchronization,
    find_bad_indices,
    max_bad_self_matching,
)

EPS = (Fraction(1, 4), Fraction(1, 3), Fraction(1, 2), Fraction(2, 3), Fraction(3, 4))


def test_sync_examples():
    assert check_synchronization(list(range(12)), Fraction(1, 10)).holds
    v = check_synchronization([0, 0], Fraction(9, 10))
    assert not v.holds
    assert (v.witness.i, v.witness.j, v.witness.k, v.witness.ed) == (1, 2, 3, 0)
    assert v.witness.recheck([0, 0], Fraction(9, 10))


def test_sync_rejects_bad_eps():
    with pytest.raises(ValueError):
        check_synchronization([0, 1], 0)
    with pytest.raises(ValueError):
        check_synchronization([0, 1], 1)


def test_sync_first_violation_matches_oracle():
    rng = random.Random(11)
    for _ in range(600):
        n = rng.randrange(1, 9)
        s = [rng.randrange(rng.choice((2, 3, 5, 8))) for _ in range(n)]
        eps = rng.choice(EPS)
        v = check_synchronization(s, eps)
        ref = O.first_sync_violation(s, eps)
        assert v.holds == (ref is None)
        if ref is not None:
            (i, j, k), d = ref
            assert (v.witness.i, v.witness.j, v.witness.k, v.witness.ed) == (i, j, k, d)
            assert v.witness.recheck(s, eps)


def test_self_matching_examples():
    assert max_bad_self_matching(list(range(6)))[0] == 0
    count, m = max_bad_self_matching([0, 0])
    assert count == 1 and m.pairs in (((1, 2),), ((2, 1),))
    v = check_self_matching([0, 0, 0, 0], Fraction(1, 4))
    assert not v.holds
    assert v.witness.bad_pairs() == 3 and v.witness.is_valid([0] * 4, [0] * 4)
    assert check_self_matching(list(range(7)), Fraction(1, 100)).holds


def test_max_bad_matches_oracle():
    for s in all_strings(3, 6):
        count, m = max_bad_self_matching(s)
        assert count == O.max_bad(s)
        assert m.is_valid(s, s) and m.bad_pairs() == count == len(m)


def test_bad_indices_example():
    s = [0, 1, 0, 1] + list(range(2, 10))
    rep = find_bad_indices(s, Fraction(1, 2))
    assert rep.bad_indices == {1, 2, 3, 4}
    assert find_bad_indices(list(range(10)), Fraction(1, 2)).bad_indices == set()


def test_bad_indices_match_oracle():
    rng = random.Random(3)
    for _ in range(300):
        n = rng.randrange(1, 9)
        s = [rng.randrange(3) for _ in range(n)]
        eps = rng.choice(EPS)
        rep = find_bad_indices(s, eps)
        expected = set()
        for i in range(n):
            for j in range(i, n):
                if not O.self_matching_ok(s[i:j + 1], eps):
                    expected.update(range(i + 1, j + 2))
        assert rep.bad_indices == expected
        for k, (i, j) in rep.blamed_intervals.items():
            assert i <= k <= j
            assert not check_self_matching(s[i - 1:j], eps).holds


def test_equivalence_direction_b():
    # every substring passing eps/2-self-matching forces eps-synchronization
    rng = random.Random(8)
    seen = 0
    for _ in range(400):
        n = rng.randrange(2, 9)
        s = [rng.randrange(4) for _ in range(n)]
        eps = rng.choice(EPS)
        if all(check_self_matching(s[i:j], eps / 2).holds for i in range(n) for j in range(i + 1, n + 1)):
            seen += 1
            assert check_synchronization(s, eps).holds
    assert seen > 20


def test_sync_substrings_are_self_matching():
    s = construct_sync_string(60, Fraction(1, 2), seed=4, q2=4).body
    for i in range(0, 60, 7):
        for j in range(i + 1, 61, 9):
            assert check_self_matching(s[i:j], Fraction(1, 2)).holds


def test_bad_index_count_bound():
    # at most 3 n eps / eps' indices are eps'-bad when 3 eps < eps' < 1
    rng = random.Random(21)
    checked = 0
    for _ in range(200):
        n = rng.randrange(10, 40)
        s = [rng.randrange(rng.choice((20, 40, 80))) for _ in range(n)]
        eps = Fraction(max_bad_self_matching(s)[0] + 1, n)
        for eps2 in (Fraction(1, 2), Fraction(3, 4), Fraction(9, 10)):
            if 3 * eps < eps2 < 1:
                checked += 1
                assert len(find_bad_indices(s, eps2)) <= 3 * n * eps / eps2
    assert checked > 50


def test_rsd_at_non_bad_indices_counterexample():
    # index 3 is not 1/2-bad, yet the prefixes S[1,3] and S[1,5] sit at RSD exactly 1/2
    s, eps = [1, 2, 1, 0, 1], Fraction(1, 2)
    assert 3 not in find_bad_indices(s, eps).bad_indices
    assert relative_suffix_distance(s[:3], s[:5]) == Fraction(1, 2)


def test_rsd_at_non_bad_indices():
    # a bad-pair-free interval of length 2k only caps the LCS of its halves
    # at 2 eps k, so the separation that follows is 1 - 2 eps
    rng = random.Random(2)
    for _ in range(200):
        n = rng.randrange(4, 16)
        s = [rng.randrange(rng.choice((2, 3, 4, 6))) for _ in range(n)]
        eps = rng.choice(EPS)
        bad = find_bad_indices(s, eps).bad_indices
        for i in range(1, n + 1):
            if i in bad:
                continue
            for j in range(1, n + 1):
                if j != i:
                    assert relative_suffix_distance(s[:i], s[:j]) > 1 - 2 * eps


def test_witness_recheck_with_primitives_only():
    rng = random.Random(17)
    for _ in range(200):
        s = [rng.randrange(3) for _ in range(rng.randrange(2, 30))]
        v = check_synchronization(s, Fraction(1, 2))
        if not v.holds:
            w = v.witness
            assert isinstance(w, SyncViolation)
            assert edit_distance(s[w.i - 1:w.j - 1], s[w.j - 1:w.k - 1]) <= Fraction(1, 2) * (w.k - w.i)
