from itertools import combinations, product

import pytest

from tanglekit.core import classify_list, parse_list, validate_list
from tanglekit.explore import ConjectureReport, enumerate_nonseparable_even, test_conjecture
from tanglekit.search import naive_feasible


def nonseparable_oracle(n, counts):
    """Direct check of the definition: no i<k<j with (i,k), (k,j) empty but (i,j) used."""
    c = lambda a, b: counts.get((a, b), 0)
    for i, k, j in combinations(range(1, n + 1), 3):
        if c(i, k) == 0 and c(k, j) == 0 and c(i, j) > 0:
            return False
    return True


@pytest.mark.parametrize("n, max_mult", [(2, 4), (3, 2), (3, 4), (4, 2)])
def test_enumeration_matches_definition(n, max_mult):
    pairs = list(combinations(range(1, n + 1), 2))
    want = []
    for vec in product(range(0, max_mult + 1, 2), repeat=len(pairs)):
        counts = dict(zip(pairs, vec))
        if nonseparable_oracle(n, counts):
            want.append(validate_list(n, counts))
    got = []
    assert enumerate_nonseparable_even(n, max_mult, got.append) == len(want)
    assert got == want
    assert all(classify_list(l)["even"] and classify_list(l)["nonseparable"] for l in got)


def test_enumeration_rejects():
    with pytest.raises(ValueError):
        enumerate_nonseparable_even(3, 3, print)
    with pytest.raises(ValueError):
        enumerate_nonseparable_even(1, 2, print)


def test_small_conjecture_runs():
    rep = test_conjecture(3, 2)
    assert rep.tested == 7 and rep.unknowns == [] and rep.counterexamples == []
    assert rep.feasible == 7
    # independent confirmation with the naive oracle
    lists = []
    enumerate_nonseparable_even(3, 2, lists.append)
    assert all(naive_feasible(l) for l in lists)


def test_report_format_is_deterministic():
    a, b = test_conjecture(2, 4), test_conjecture(2, 4)
    assert a.format() == b.format()
    assert "seconds" not in a.format() and "seconds" in a.format(timing=True)
    assert a.format().splitlines()[1:4] == ["wires 2", "max_mult 4", "tested 3"]


def test_budget_gives_unknowns():
    # a zero budget settles only the empty list, which needs no search
    rep = test_conjecture(3, 2, budget=0)
    assert rep.feasible == 1 and len(rep.unknowns) == 6 and rep.counterexamples == []


def test_counterexample_files():
    bad = validate_list(3, {(1, 2): 2, (1, 3): 2, (2, 3): 2})
    rep = ConjectureReport(3, 2, tested=1, counterexamples=[bad])
    files = rep.counterexample_files()
    assert list(files) == ["counterexample-1.list"]
    assert parse_list(files["counterexample-1.list"]) == bad
    assert "counterexample 1 1-2:2 1-3:2 2-3:2" in rep.format()
