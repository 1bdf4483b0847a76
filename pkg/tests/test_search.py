import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tanglekit.core import Tangle, gen_ln, realized_multiset, validate_list, verify_realizes
from tanglekit.errors import BudgetExhausted, InfeasibleList, LimitReached
from tanglekit.search import (
    Status,
    check_unique_swap_order,
    count_realizations,
    decide_feasible,
    decide_many,
    enumerate_realizations,
    height_lower_bound,
    minimize_height,
    naive_feasible,
    swap_order_signature,
)

from .conftest import all_lists, random_tangle


# --- brute-force oracle ------------------------------------------------------


def all_moves(n):
    """Every non-empty set of pairwise non-adjacent positions in 1..n-1."""
    out = []
    for size in range(1, n):
        for combo in combinations(range(1, n), size):
            if all(b - a > 1 for a, b in zip(combo, combo[1:])):
                out.append(frozenset(combo))
    return out


def brute_realizations(lst):
    """All realizing tangles, found by trying every move sequence of length <= total.

    No pruning beyond the obvious one: a sequence realizing ``lst`` has at
    most ``total`` moves and never exceeds any count along the way.
    """
    n = lst.n
    moves = all_moves(n)
    found = []

    def rec(seq):
        t = Tangle.from_moves(tuple(range(1, n + 1)), seq)
        got = realized_multiset(t)
        if any(got[(i, j)] > lst[(i, j)] for i, j, _ in got.entries):
            return
        if got == lst:
            found.append(t)
            return
        for m in moves:
            rec(seq + [m])

    rec([])
    return found


SMALL = [
    validate_list(3, {(1, 2): 1, (1, 3): 1}),
    validate_list(4, {(1, 2): 1, (3, 4): 1}),
    validate_list(3, {(1, 2): 2}),
    validate_list(3, {(1, 2): 1, (2, 3): 1, (1, 3): 1}),
    validate_list(4, {(1, 2): 1, (2, 3): 2, (3, 4): 1}),
    validate_list(4, {(1, 2): 1, (1, 3): 1, (1, 4): 1}),
    gen_ln(3),
    gen_ln(4),
]


# --- decide_feasible -----------------------------------------------------------


def test_small_verdicts(lst_l, lprime):
    res = decide_feasible(lst_l)
    assert res.status is Status.FEASIBLE
    assert verify_realizes(res.witness, lst_l).ok
    assert decide_feasible(lprime).status is Status.INFEASIBLE
    assert decide_feasible(lprime).witness is None


def test_empty_list_is_feasible():
    res = decide_feasible(validate_list(4, {}))
    assert res.feasible and res.height == 1


@pytest.mark.parametrize("n", range(3, 8))
def test_ln_feasible(n):
    res = decide_feasible(gen_ln(n))
    assert res.feasible and verify_realizes(res.witness, gen_ln(n)).ok


def test_budget_exhausted():
    with pytest.raises(BudgetExhausted):
        decide_feasible(gen_ln(7), budget=3)


@pytest.mark.parametrize("n, total", [(2, 5), (3, 4), (4, 3)])
def test_decide_matches_naive_oracle(n, total):
    for lst in all_lists(n, total):
        assert decide_feasible(lst).feasible == naive_feasible(lst), lst


@pytest.mark.parametrize("n, total", [(3, 4), (4, 3)])
def test_prune_and_full_moves_agree(n, total):
    for lst in all_lists(n, total):
        want = decide_feasible(lst).feasible
        assert decide_feasible(lst, prune=False).feasible == want
        assert decide_feasible(lst, single_swap=False).feasible == want


def test_naive_matches_brute_force():
    for lst in SMALL:
        assert naive_feasible(lst) == bool(brute_realizations(lst))


def test_deterministic_witness():
    lst = gen_ln(6)
    a, b = decide_feasible(lst), decide_feasible(lst)
    assert a.witness == b.witness


@given(st.integers(0, 2**32), st.integers(2, 6), st.integers(0, 8))
@settings(max_examples=60, deadline=None)
def test_realized_lists_are_feasible(seed, n, k):
    # soundness in the other direction: every realized multiset is feasible
    t = random_tangle(random.Random(seed), n, k)
    lst = realized_multiset(t)
    res = decide_feasible(lst)
    assert res.feasible and verify_realizes(res.witness, lst).ok


def test_decide_many_order_and_parallel():
    lists = list(all_lists(3, 3))
    serial = decide_many(lists, threads=1)
    parallel = decide_many(lists, threads=2)
    assert [r.status for r in serial] == [r.status for r in parallel]
    assert [r.witness for r in serial] == [r.witness for r in parallel]
    assert decide_many([gen_ln(7)], budget=3) == [None]


# --- minimize_height -----------------------------------------------------------


def test_minimize_examples(lst_l, lprime):
    assert minimize_height(lst_l).height == 3
    res = minimize_height(validate_list(4, {(1, 2): 1, (3, 4): 1}))
    assert res.height == 2 and res.witness.moves == (frozenset({1, 3}),)
    assert minimize_height(lprime).status is Status.INFEASIBLE


@pytest.mark.parametrize("lst", SMALL, ids=str)
def test_minimize_matches_brute_force(lst):
    tangles = brute_realizations(lst)
    best = min(t.height for t in tangles)
    res = minimize_height(lst)
    assert res.height == best
    # lexicographically smallest move sequence among optimal tangles
    optimal = sorted(t.encoded_moves() for t in tangles if t.height == best)
    assert res.witness.encoded_moves() == optimal[0]
    assert height_lower_bound(lst) <= best - 1


@given(st.integers(0, 2**32), st.integers(2, 5), st.integers(0, 5))
@settings(max_examples=40, deadline=None)
def test_height_bound(seed, n, k):
    t = random_tangle(random.Random(seed), n, k)
    lst = realized_multiset(t)
    assert minimize_height(lst).height <= t.height
    assert height_lower_bound(lst) <= minimize_height(lst).height - 1


# --- enumeration ---------------------------------------------------------------


def test_enumerate_example():
    lst = validate_list(4, {(1, 2): 1, (3, 4): 1})
    seen = []
    assert enumerate_realizations(lst, seen.append) == 3
    assert [t.encoded_moves() for t in seen] == sorted(t.encoded_moves() for t in seen)
    assert {t.encoded_moves() for t in seen} == {((1, 3),), ((1,), (3,)), ((3,), (1,))}


@pytest.mark.parametrize("lst", SMALL, ids=str)
def test_enumerate_matches_brute_force(lst):
    seen = []
    enumerate_realizations(lst, seen.append)
    want = {t.encoded_moves() for t in brute_realizations(lst)}
    assert len(seen) == len(want) == count_realizations(lst)
    assert {t.encoded_moves() for t in seen} == want


def test_enumerate_limit_and_infeasible(lprime):
    with pytest.raises(LimitReached):
        enumerate_realizations(validate_list(4, {(1, 2): 1, (3, 4): 1}), lambda t: None, limit=2)
    assert enumerate_realizations(lprime, lambda t: None) == 0


# --- unique swap order -----------------------------------------------------------


def naive_signatures(lst):
    """Per-wire partner sequences of every single-swap realization."""
    sigs = set()
    for t in brute_realizations(lst):
        sigs.add(swap_order_signature(t))
    return sigs


def test_signature_of_small(small_tangle):
    assert swap_order_signature(small_tangle) == ((2, 3), (1,), (1,))


@pytest.mark.parametrize("n", [3, 4])
def test_ln_unique_against_brute_force(n):
    res = check_unique_swap_order(gen_ln(n))
    assert res.unique
    assert naive_signatures(gen_ln(n)) == set(res.signatures)
    assert res.realizations == len(brute_realizations(gen_ln(n)))


def test_not_unique_example():
    lst = validate_list(3, {(1, 2): 1, (2, 3): 1, (1, 3): 1})
    res = check_unique_swap_order(lst)
    assert not res.unique and len(res.signatures) == 2
    assert set(res.signatures) == naive_signatures(lst)


def test_unique_infeasible(lprime):
    with pytest.raises(InfeasibleList):
        check_unique_swap_order(lprime)
