import random
from fractions import Fraction

import pytest

from rinfinity.braids import (
    BraidWord,
    artin_action,
    braid_equal,
    cable,
    delete_strand,
    format_braid,
    handle_reduce,
    is_trivial,
    parse_braid,
)


def random_word(rng, n, length):
    letters = []
    for _ in range(length):
        i = rng.randint(1, n - 1)
        letters.append(i if rng.random() < 0.5 else -i)
    return BraidWord(n, tuple(letters))


def test_invariants_of_empty_word():
    b = BraidWord(3)
    assert b.permutation() == (1, 2, 3)
    assert b.exponent_sum() == 0
    assert all(x == 0 for row in b.linking_matrix() for x in row)


def test_sigma1_on_two_strands():
    b = BraidWord(2, (1,))
    assert b.permutation() == (2, 1)
    assert b.exponent_sum() == 1
    assert not b.is_pure


def test_sigma1_squared_linking():
    b = BraidWord(2, (1, 1))
    assert b.is_pure
    assert b.exponent_sum() == 2
    assert b.linking_matrix()[0][1] == 1


def test_braid_relation():
    assert braid_equal(BraidWord(3, (1, 2, 1)), BraidWord(3, (2, 1, 2)))


def test_far_commutation():
    assert braid_equal(BraidWord(4, (1, 3)), BraidWord(4, (3, 1)))


def test_sigma1_squared_nontrivial():
    assert not braid_equal(BraidWord(2, (1, 1)), BraidWord(2))
    assert not is_trivial(BraidWord(2, (1, 1)))


def test_equal_implies_same_invariants():
    rng = random.Random(51)
    for _ in range(200):
        n = rng.randint(2, 5)
        b1 = random_word(rng, n, rng.randint(0, 8))
        b2 = random_word(rng, n, rng.randint(0, 8))
        if braid_equal(b1, b2):
            assert b1.permutation() == b2.permutation()
            assert b1.exponent_sum() == b2.exponent_sum()
            assert b1.crossing_counts() == b2.crossing_counts()


def test_braid_equal_matches_artin_oracle():
    rng = random.Random(53)
    for _ in range(300):
        n = rng.randint(2, 4)
        b1 = random_word(rng, n, rng.randint(0, 7))
        b2 = random_word(rng, n, rng.randint(0, 7))
        assert braid_equal(b1, b2) == (artin_action(b1) == artin_action(b2))


def test_handle_reduce_trivial_words():
    rng = random.Random(57)
    for _ in range(200):
        n = rng.randint(2, 5)
        w = random_word(rng, n, rng.randint(0, 10))
        assert len(handle_reduce(w * w.inverse()).letters) == 0


def test_permutation_composition():
    rng = random.Random(59)
    for _ in range(300):
        n = rng.randint(2, 5)
        b1 = random_word(rng, n, rng.randint(0, 8))
        b2 = random_word(rng, n, rng.randint(0, 8))
        p1, p2 = b1.permutation(), b2.permutation()
        assert (b1 * b2).permutation() == tuple(p2[p1[s] - 1] for s in range(n))


def test_linking_additive_on_pure_braids():
    rng = random.Random(61)
    count = 0
    while count < 100:
        n = rng.randint(2, 4)
        b1 = random_word(rng, n, rng.randint(0, 8))
        b2 = random_word(rng, n, rng.randint(0, 8))
        if not (b1.is_pure and b2.is_pure):
            continue
        l1, l2, l12 = b1.linking_matrix(), b2.linking_matrix(), (b1 * b2).linking_matrix()
        for i in range(n):
            for j in range(n):
                assert l12[i][j] == l1[i][j] + l2[i][j]
                assert l1[i][j].denominator == 1
        count += 1


def test_cable_empty_word():
    assert cable(BraidWord(3), 1) == BraidWord(4)


def test_cable_sigma1():
    assert cable(BraidWord(2, (1,)), 1) == BraidWord(3, (2, 1))
    assert cable(BraidWord(2, (-1,)), 1) == BraidWord(3, (-2, -1))
    assert cable(BraidWord(2, (1,)), 2) == BraidWord(3, (1, 2))


def test_cable_permutation_block_refinement():
    # Start positions above s shift by one, end positions above perm(s)
    # shift by one, and the doubled pair (s, s+1) lands in parallel on
    # (perm(s), perm(s)+1).
    rng = random.Random(67)
    for _ in range(1000):
        n = rng.randint(2, 5)
        b = random_word(rng, n, rng.randint(0, 8))
        s = rng.randint(1, n)
        perm = b.permutation()
        e_s = perm[s - 1]
        cperm = cable(b, s).permutation()
        assert cperm[s - 1] == e_s and cperm[s] == e_s + 1
        for t in range(1, n + 1):
            if t == s:
                continue
            new_start = t if t < s else t + 1
            expected_end = perm[t - 1] + (1 if perm[t - 1] > e_s else 0)
            assert cperm[new_start - 1] == expected_end


def test_cable_then_delete_roundtrip():
    rng = random.Random(71)
    for _ in range(300):
        n = rng.randint(2, 5)
        b = random_word(rng, n, rng.randint(0, 8))
        s = rng.randint(1, n)
        doubled = cable(b, s)
        assert delete_strand(doubled, s) == b or braid_equal(delete_strand(doubled, s), b)
        assert delete_strand(doubled, s + 1) == b or braid_equal(delete_strand(doubled, s + 1), b)


def test_parse_format_roundtrip():
    rng = random.Random(73)
    for _ in range(100):
        n = rng.randint(2, 5)
        b = random_word(rng, n, rng.randint(0, 8))
        assert parse_braid(format_braid(b), n) == b
    assert parse_braid("s1 s2' s1", 3) == BraidWord(3, (1, -2, 1))
    assert parse_braid("e", 3) == BraidWord(3)
