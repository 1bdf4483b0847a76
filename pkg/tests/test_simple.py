import random
from itertools import permutations

import pytest

from tanglekit.core import realized_multiset, validate_list, verify_realizes
from tanglekit.errors import CyclicOrder, LengthMismatch, NotSimple
from tanglekit.search import minimize_height
from tanglekit.simple import inversions, odd_even_realize, target_permutation


def test_inversions():
    assert inversions((1, 2, 3), (3, 1, 2)) == {(1, 3), (2, 3)}
    assert inversions((1, 2), (1, 2)) == frozenset()


def test_target_of_small(lst_l, lprime):
    tgt = target_permutation(lst_l)
    assert tgt.target == (2, 3, 1)
    assert tgt.inversion_pairs == {(1, 2), (1, 3)}
    with pytest.raises(NotSimple):
        target_permutation(lprime)
    with pytest.raises(CyclicOrder):
        target_permutation(validate_list(3, {(1, 3): 1}))


def test_reverse_three():
    t = odd_even_realize((1, 2, 3), (3, 2, 1))
    assert t.final == (3, 2, 1)
    assert t.height == 4
    assert verify_realizes(t, validate_list(3, {(1, 2): 1, (1, 3): 1, (2, 3): 1})).ok


def test_identity_target_has_no_moves():
    assert odd_even_realize((1, 2, 3), (1, 2, 3)).height == 1


def test_length_mismatch():
    with pytest.raises(LengthMismatch):
        odd_even_realize((1, 2, 3), (1, 2))


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_all_targets_small(n):
    start = tuple(range(1, n + 1))
    for target in permutations(start):
        t = odd_even_realize(start, target)
        got = realized_multiset(t)
        assert t.final == target
        assert all(c == 1 for _, _, c in got.entries)
        assert set(p for p, _ in got.items()) == inversions(start, target)
        assert t.height <= minimize_height(got).height + 1


def test_random_start_layers():
    rng = random.Random(7)
    for _ in range(200):
        start = list(range(1, 7))
        target = list(range(1, 7))
        rng.shuffle(start)
        rng.shuffle(target)
        t = odd_even_realize(tuple(start), tuple(target))
        assert t.final == tuple(target)
        assert t.height - 1 <= 6
