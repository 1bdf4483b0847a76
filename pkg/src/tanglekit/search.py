"""Exact search over tangle states.

A search state is the current layer plus the multiset of swaps still to be
performed.  Every move consumes at least one remaining swap, so the state
graph is finite and acyclic with depth at most the list's total
multiplicity.  All solvers here memoize on ``(layer, remaining)``; the path
that led to a state does not affect what can still be realized from it.

Remaining counts are stored as a tuple indexed by pair, in the order of
:meth:`SwapList.vector`.
"""

from __future__ import annotations

import enum
import os
import sys
import time
from collections.abc import Callable, Iterable, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

from .core import Layer, SwapList, Tangle, identity, verify_realizes
from .errors import BudgetExhausted, InfeasibleList, LimitReached

DEFAULT_MAX_NODES = 5_000_000
THREADS_ENV = "TANGLEKIT_THREADS"


class Status(enum.Enum):
    FEASIBLE = "FEASIBLE"
    INFEASIBLE = "INFEASIBLE"


@dataclass
class SearchStats:
    nodes: int = 0
    memoized: int = 0
    seconds: float = 0.0


@dataclass
class FeasibilityResult:
    status: Status
    witness: Optional[Tangle] = None
    stats: SearchStats = field(default_factory=SearchStats)

    @property
    def feasible(self) -> bool:
        return self.status is Status.FEASIBLE

    @property
    def height(self) -> Optional[int]:
        return None if self.witness is None else self.witness.height


class _Space:
    """Pair indexing and move generation for one wire count."""

    def __init__(self, n: int):
        self.n = n
        self.index = [[-1] * (n + 1) for _ in range(n + 1)]
        for k, (i, j) in enumerate(combinations(range(1, n + 1), 2)):
            self.index[i][j] = self.index[j][i] = k
        # positions are 0-based here; converted to 1-based in emitted moves
        self._independent: dict[tuple[int, ...], list[tuple[int, ...]]] = {}

    def eligible(self, layer: Layer, rem: tuple[int, ...]) -> tuple[int, ...]:
        idx = self.index
        return tuple(p for p in range(self.n - 1) if rem[idx[layer[p]][layer[p + 1]]])

    def moves(self, eligible: tuple[int, ...]) -> list[tuple[int, ...]]:
        """Non-empty sets of pairwise non-adjacent eligible positions, lex sorted."""
        cached = self._independent.get(eligible)
        if cached is not None:
            return cached
        out: list[tuple[int, ...]] = []

        def grow(prefix: tuple[int, ...], start: int) -> None:
            for k in range(start, len(eligible)):
                p = eligible[k]
                if prefix and p - prefix[-1] <= 1:
                    continue
                cur = prefix + (p,)
                out.append(cur)
                grow(cur, k + 1)

        grow((), 0)
        out.sort()
        self._independent[eligible] = out
        return out

    def apply(self, layer: Layer, rem: tuple[int, ...], move: Sequence[int]):
        lay = list(layer)
        r = list(rem)
        idx = self.index
        for p in move:
            r[idx[lay[p]][lay[p + 1]]] -= 1
            lay[p], lay[p + 1] = lay[p + 1], lay[p]
        return tuple(lay), tuple(r)

    def transitive(self, layer: Layer, rem: tuple[int, ...]) -> bool:
        """Whether the parity-forced final relation from this state is a linear order."""
        n = self.n
        idx = self.index
        score = [0] * (n + 1)
        for a in range(n):
            u = layer[a]
            row = idx[u]
            for b in range(a + 1, n):
                v = layer[b]
                if rem[row[v]] & 1:
                    score[v] += 1
                else:
                    score[u] += 1
        return len(set(score[1:])) == n

    def loads(self, rem: tuple[int, ...]) -> list[int]:
        out = [0] * (self.n + 1)
        k = 0
        for i in range(1, self.n + 1):
            for j in range(i + 1, self.n + 1):
                c = rem[k]
                if c:
                    out[i] += c
                    out[j] += c
                k += 1
        return out


def _tangle(n: int, moves: Iterable[Sequence[int]]) -> Tangle:
    return Tangle(identity(n), tuple(frozenset(p + 1 for p in m) for m in moves))


class _Budget:
    def __init__(self, limit: Optional[int]):
        self.limit = limit
        self.nodes = 0

    def tick(self) -> None:
        self.nodes += 1
        if self.limit is not None and self.nodes > self.limit:
            raise BudgetExhausted(f"node budget {self.limit} exhausted", nodes=self.nodes)


# ---------------------------------------------------------------------------
# Feasibility
# ---------------------------------------------------------------------------


def decide_feasible(
    lst: SwapList,
    budget: Optional[int] = None,
    *,
    prune: bool = True,
    single_swap: bool = True,
) -> FeasibilityResult:
    """Decide whether some tangle realizes ``lst``; return a witness if so.

    Depth-first search from the identity layer with a table of states known
    to be dead.  With ``single_swap`` every move holds exactly one swap;
    any tangle can be serialized that way, so the verdict is unchanged and
    the branching factor drops.  With ``prune`` a state is abandoned as soon
    as the parity tournament of its remaining swaps is cyclic.

    Raises :class:`BudgetExhausted` once more than ``budget`` states have
    been expanded.
    """
    t0 = time.perf_counter()
    space = _Space(lst.n)
    counter = _Budget(budget)
    dead: set = set()

    def successors(layer, rem):
        if single_swap:
            return [(p,) for p in space.eligible(layer, rem)]
        return space.moves(space.eligible(layer, rem))

    def dfs(layer: Layer, rem: tuple[int, ...], total: int):
        if total == 0:
            return []
        key = (layer, rem)
        if key in dead:
            return None
        counter.tick()
        if not prune or space.transitive(layer, rem):
            for move in successors(layer, rem):
                nxt_layer, nxt_rem = space.apply(layer, rem, move)
                found = dfs(nxt_layer, nxt_rem, total - len(move))
                if found is not None:
                    found.append(move)
                    return found
        dead.add(key)
        return None

    found = _deep(lst.total, dfs, identity(lst.n), lst.vector(), lst.total)
    stats = SearchStats(counter.nodes, len(dead), time.perf_counter() - t0)
    if found is None:
        return FeasibilityResult(Status.INFEASIBLE, None, stats)
    witness = _tangle(lst.n, reversed(found))
    assert verify_realizes(witness, lst).ok
    return FeasibilityResult(Status.FEASIBLE, witness, stats)


def _deep(depth: int, fn, *args):
    # recursion depth grows with the list's total multiplicity
    need = 2 * depth + 200
    if need > sys.getrecursionlimit():
        sys.setrecursionlimit(need)
    return fn(*args)


def naive_feasible(lst: SwapList) -> bool:
    """Reference decision procedure: plain DFS over every non-empty move.

    No memo table, no pruning, no serialization of parallel swaps.  Only
    usable on tiny lists; it exists to cross-check :func:`decide_feasible`.
    """
    n = lst.n
    counts = {(i, j): c for i, j, c in lst.entries}

    def independent_sets(eligible: list[int]):
        for size in range(1, len(eligible) + 1):
            for combo in combinations(eligible, size):
                if all(b - a > 1 for a, b in zip(combo, combo[1:])):
                    yield combo

    def rec(layer: list[int], left: int) -> bool:
        if left == 0:
            return True
        eligible = []
        for p in range(n - 1):
            a, b = layer[p], layer[p + 1]
            if counts.get((min(a, b), max(a, b)), 0) > 0:
                eligible.append(p)
        for combo in independent_sets(eligible):
            for p in combo:
                a, b = layer[p], layer[p + 1]
                counts[(min(a, b), max(a, b))] -= 1
                layer[p], layer[p + 1] = b, a
            ok = rec(layer, left - len(combo))
            for p in combo:
                a, b = layer[p], layer[p + 1]
                counts[(min(a, b), max(a, b))] += 1
                layer[p], layer[p + 1] = b, a
            if ok:
                return True
        return False

    return rec(list(range(1, n + 1)), lst.total)


def _decide_quiet(args) -> Optional[FeasibilityResult]:
    lst, budget, kwargs = args
    try:
        return decide_feasible(lst, budget, **kwargs)
    except BudgetExhausted:
        return None


def default_threads() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def decide_many(
    lists: Sequence[SwapList],
    budget: Optional[int] = None,
    threads: Optional[int] = None,
    **kwargs,
) -> list[Optional[FeasibilityResult]]:
    """Run :func:`decide_feasible` over many lists, in input order.

    Entries are ``None`` where the budget ran out.  With ``threads > 1`` the
    lists are distributed over worker processes; results are identical to
    the serial run apart from timing stats.
    """
    threads = default_threads() if threads is None else max(1, threads)
    jobs = [(lst, budget, kwargs) for lst in lists]
    if threads == 1 or len(jobs) < 2:
        return [_decide_quiet(job) for job in jobs]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(_decide_quiet, jobs, chunksize=max(1, len(jobs) // (4 * threads))))


# ---------------------------------------------------------------------------
# Height minimization
# ---------------------------------------------------------------------------


def height_lower_bound(lst: SwapList) -> int:
    """Lower bound on the number of *moves* of any realizing tangle."""
    if lst.total == 0:
        return 0
    per_move = max(1, lst.n // 2)
    return max(max(lst.loads()), -(-lst.total // per_move))


def minimize_height(lst: SwapList, budget: Optional[int] = None) -> FeasibilityResult:
    """Find a realizing tangle with the fewest layers.

    Feasibility is settled first; then depth-limited searches with full
    parallel moves run for increasing move counts, starting at
    :func:`height_lower_bound`.  Moves are tried in lexicographic order, so
    the witness is the lexicographically smallest move sequence among all
    minimum-height realizations.
    """
    t0 = time.perf_counter()
    first = decide_feasible(lst, budget)
    if not first.feasible:
        return first
    counter = _Budget(None if budget is None else max(0, budget - first.stats.nodes))
    space = _Space(lst.n)
    per_move = max(1, lst.n // 2)
    failed: dict = {}

    def bounded(layer: Layer, rem: tuple[int, ...], total: int, left: int):
        if total == 0:
            return []
        key = (layer, rem)
        if failed.get(key, -1) >= left:
            return None
        counter.tick()
        if left * per_move >= total and max(space.loads(rem)) <= left and space.transitive(layer, rem):
            for move in space.moves(space.eligible(layer, rem)):
                nl, nr = space.apply(layer, rem, move)
                found = bounded(nl, nr, total - len(move), left - 1)
                if found is not None:
                    found.append(move)
                    return found
        failed[key] = left
        return None

    upper = first.witness.height - 1
    start = identity(lst.n)
    for moves in range(height_lower_bound(lst), upper + 1):
        found = _deep(lst.total, bounded, start, lst.vector(), lst.total, moves)
        if found is not None:
            witness = _tangle(lst.n, reversed(found))
            break
    else:  # pragma: no cover - the serial witness always fits within upper
        raise AssertionError("iterative deepening passed the known upper bound")
    assert verify_realizes(witness, lst).ok
    stats = SearchStats(
        first.stats.nodes + counter.nodes,
        first.stats.memoized + len(failed),
        time.perf_counter() - t0,
    )
    return FeasibilityResult(Status.FEASIBLE, witness, stats)


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------


def count_realizations(lst: SwapList) -> int:
    """Number of distinct realizing tangles (with non-empty moves)."""
    return _Enumerator(lst).count(identity(lst.n), lst.vector(), lst.total)


class _Enumerator:
    def __init__(self, lst: SwapList):
        self.space = _Space(lst.n)
        self.memo: dict = {}

    def count(self, layer: Layer, rem: tuple[int, ...], total: int) -> int:
        if total == 0:
            return 1
        key = (layer, rem)
        got = self.memo.get(key)
        if got is not None:
            return got
        space = self.space
        value = 0
        if space.transitive(layer, rem):
            for move in space.moves(space.eligible(layer, rem)):
                nl, nr = space.apply(layer, rem, move)
                value += self.count(nl, nr, total - len(move))
        self.memo[key] = value
        return value


def enumerate_realizations(
    lst: SwapList,
    visitor: Callable[[Tangle], object],
    limit: Optional[int] = None,
) -> int:
    """Call ``visitor`` on every tangle realizing ``lst``; return how many.

    Tangles are visited in lexicographic order of their move sequences
    (each move encoded as its sorted positions).  Branches with no
    completion are skipped using memoized completion counts.  Raises
    :class:`LimitReached` before visiting tangle number ``limit + 1``.
    """
    en = _Enumerator(lst)
    space = en.space
    n = lst.n
    path: list[tuple[int, ...]] = []
    visited = 0

    def walk(layer: Layer, rem: tuple[int, ...], total: int) -> None:
        nonlocal visited
        if total == 0:
            if limit is not None and visited >= limit:
                raise LimitReached(f"more than {limit} realizations")
            visited += 1
            visitor(_tangle(n, path))
            return
        for move in space.moves(space.eligible(layer, rem)):
            nl, nr = space.apply(layer, rem, move)
            left = total - len(move)
            if en.count(nl, nr, left) == 0:
                continue
            path.append(move)
            walk(nl, nr, left)
            path.pop()

    if en.count(identity(n), lst.vector(), lst.total):
        _deep(lst.total, walk, identity(n), lst.vector(), lst.total)
    return visited


def swap_order_signature(t: Tangle) -> tuple[tuple[int, ...], ...]:
    """Per wire (1..n), the partners it swaps with in top-to-bottom order."""
    seq: list[list[int]] = [[] for _ in range(t.n + 1)]
    for layer, move in zip(t.layers, t.moves):
        for p in sorted(move):
            u, v = layer[p - 1], layer[p]
            seq[u].append(v)
            seq[v].append(u)
    return tuple(tuple(s) for s in seq[1:])


@dataclass
class UniqueOrderResult:
    unique: bool
    signatures: list[tuple[tuple[int, ...], ...]]
    realizations: int


def check_unique_swap_order(lst: SwapList, limit: Optional[int] = None) -> UniqueOrderResult:
    """Whether all realizations of ``lst`` swap in the same order along every wire.

    ``signatures`` lists the distinct per-wire partner sequences in order of
    first appearance.  Raises :class:`InfeasibleList` if nothing realizes
    ``lst``.
    """
    seen: dict[tuple, None] = {}

    def visit(t: Tangle) -> None:
        seen.setdefault(swap_order_signature(t), None)

    count = enumerate_realizations(lst, visit, limit)
    if count == 0:
        raise InfeasibleList(f"{lst} has no realization")
    sigs = list(seen)
    return UniqueOrderResult(len(sigs) == 1, sigs, count)
