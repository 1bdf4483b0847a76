import random
from itertools import combinations

import pytest

from tanglekit.core import SwapList, Tangle, identity, validate_list

# one line per acceptance criterion, printed in the terminal summary
ACCEPTANCE_LINES: dict[int, str] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None or report.when != "call":
        return
    number, title = marker.args
    verdict = "PASS" if report.passed else "FAIL"
    details = "; ".join(str(v) for k, v in item.user_properties if k == "detail")
    line = f"criterion {number:2d} {verdict}  {title}"
    ACCEPTANCE_LINES[number] = line + (f"  [{details}]" if details else "")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for number in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[number])


def random_tangle(rng: random.Random, n: int, moves: int) -> Tangle:
    layer = list(identity(n))
    out = []
    for _ in range(moves):
        free = list(range(1, n))
        rng.shuffle(free)
        move = set()
        for p in free:
            if p - 1 not in move and p + 1 not in move and (not move or rng.random() < 0.5):
                move.add(p)
        out.append(frozenset(move))
    return Tangle(tuple(layer), tuple(out))


def all_lists(n: int, max_total: int):
    """Every list on ``n`` wires with total multiplicity at most ``max_total``."""
    pairs = list(combinations(range(1, n + 1), 2))

    def rec(k, left, acc):
        if k == len(pairs):
            yield validate_list(n, [(i, j, c) for (i, j), c in zip(pairs, acc)])
            return
        for c in range(left + 1):
            yield from rec(k + 1, left - c, acc + [c])

    yield from rec(0, max_total, [])


@pytest.fixture
def lst_l() -> SwapList:
    return validate_list(3, {(1, 2): 1, (1, 3): 1})


@pytest.fixture
def lprime() -> SwapList:
    return validate_list(3, {(1, 2): 2, (1, 3): 1})


@pytest.fixture
def small_tangle() -> Tangle:
    return Tangle.from_moves((1, 2, 3), [{1}, {2}])


def random_formula(rng: random.Random, max_vars: int, max_clauses: int):
    from tanglekit.reduction import NaeFormula

    n = rng.randint(1, max_vars)
    clauses = tuple(
        tuple(rng.choice((1, -1)) * rng.randint(1, n) for _ in range(3))
        for _ in range(rng.randint(0, max_clauses))
    )
    return NaeFormula(n, clauses)


def random_positive_diff(rng: random.Random, max_vars: int, max_clauses: int):
    from tanglekit.reduction import PositiveDiffFormula

    n = rng.randint(3, max_vars)
    clauses = tuple(
        tuple(rng.sample(range(1, n + 1), 3)) for _ in range(rng.randint(1, max_clauses))
    )
    return PositiveDiffFormula(n, clauses)
