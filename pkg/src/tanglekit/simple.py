"""Odd-even transposition sort for simple lists.

A simple list (every count 0 or 1) is feasible exactly when its parity
tournament is transitive; the forced final layer then has the count-1 pairs
as its inversions, and odd-even transposition sort reaches it with at most
one layer more than the minimum.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .core import Layer, Pair, SwapList, Tangle, classify_list, pair, required_final_order
from .errors import LengthMismatch, NotSimple


@dataclass(frozen=True)
class SimpleListTarget:
    target: Layer
    inversion_pairs: frozenset[Pair]


def inversions(start: Layer, target: Layer) -> frozenset[Pair]:
    """Unordered wire pairs whose relative order differs between two layers."""
    rank = {w: k for k, w in enumerate(target)}
    return frozenset(
        pair(u, v) for u, v in combinations(start, 2) if rank[u] > rank[v]
    )


def target_permutation(lst: SwapList) -> SimpleListTarget:
    if not classify_list(lst).get("simple"):
        raise NotSimple(f"{lst} has a pair with count above 1")
    target = required_final_order(lst)  # raises CyclicOrder
    inv = inversions(tuple(range(1, lst.n + 1)), target)
    assert inv == frozenset(p for p, _ in lst.items())
    return SimpleListTarget(target, inv)


def odd_even_realize(start: Layer, target: Layer) -> Tangle:
    """Tangle from ``start`` to ``target`` built by odd-even transposition sort.

    Phases alternate between comparing positions (1,2), (3,4), ... and
    (2,3), (4,5), ..., starting with the first kind.  A compared pair swaps
    when it is out of order with respect to ``target``.  Phases without a
    swap add no layer.
    """
    start, target = tuple(start), tuple(target)
    if len(start) != len(target) or sorted(start) != sorted(target):
        raise LengthMismatch("start and target must be permutations of the same wires")
    rank = {w: k for k, w in enumerate(target)}
    n = len(start)
    cur = list(start)
    moves = []
    phase = 0
    idle = 0
    while idle < 2:
        move = frozenset(
            p + 1
            for p in range(phase, n - 1, 2)
            if rank[cur[p]] > rank[cur[p + 1]]
        )
        if move:
            for p in move:
                cur[p - 1], cur[p] = cur[p], cur[p - 1]
            moves.append(move)
            idle = 0
        else:
            idle += 1
        phase ^= 1
    return Tangle(start, tuple(moves))
