"""Tangle data model: swap lists, layers, moves, tangles.

Wires are named by their position in the initial layer, so wire ``w`` sits
at position ``w`` of the start layer ``(1, 2, ..., n)``.  Positions of a
move are 1-based left indices: position ``p`` exchanges the wires currently
at positions ``p`` and ``p + 1``.
"""

from __future__ import annotations

import io
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Optional, Union

import numpy as np

from .errors import (
    CyclicOrder,
    DuplicatePair,
    FormatError,
    InvalidTangle,
    NegativeCount,
    OutOfRange,
    OverlappingPositions,
    PositionOutOfRange,
    SelfPair,
    TooFewWires,
    WireCountMismatch,
)

Layer = tuple[int, ...]
Move = frozenset[int]
Pair = tuple[int, int]

RawEntries = Union[Mapping[Pair, int], Iterable[tuple[int, int, int]]]


def pair(i: int, j: int) -> Pair:
    return (i, j) if i < j else (j, i)


def identity(n: int) -> Layer:
    return tuple(range(1, n + 1))


# ---------------------------------------------------------------------------
# Swap lists
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SwapList:
    """Symmetric multiset of swaps between ``n`` wires.

    ``entries`` holds ``(i, j, count)`` with ``i < j`` and ``count > 0``,
    sorted by pair.  Pairs that are absent have count 0.  Build instances
    with :func:`validate_list` (or :meth:`from_pairs`) rather than directly.
    """

    n: int
    entries: tuple[tuple[int, int, int], ...] = ()

    @classmethod
    def from_pairs(cls, n: int, counts: RawEntries) -> "SwapList":
        return validate_list(n, counts)

    @classmethod
    def from_matrix(cls, matrix) -> "SwapList":
        m = np.asarray(matrix, dtype=np.int64)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("swap matrix must be square")
        if not np.array_equal(m, m.T):
            raise ValueError("swap matrix must be symmetric")
        if np.any(np.diag(m) != 0):
            raise SelfPair("swap matrix has a nonzero diagonal entry")
        n = m.shape[0]
        return validate_list(
            n, [(i + 1, j + 1, int(m[i, j])) for i, j in combinations(range(n), 2)]
        )

    @cached_property
    def _lookup(self) -> dict[Pair, int]:
        return {(i, j): c for i, j, c in self.entries}

    def count(self, i: int, j: int) -> int:
        return self._lookup.get(pair(i, j), 0)

    def __getitem__(self, key: Pair) -> int:
        return self.count(*key)

    def items(self) -> Iterator[tuple[Pair, int]]:
        for i, j, c in self.entries:
            yield (i, j), c

    def as_dict(self) -> dict[Pair, int]:
        return dict(self._lookup)

    @property
    def total(self) -> int:
        return sum(c for _, _, c in self.entries)

    def load(self, wire: int) -> int:
        """Number of swaps that involve ``wire``."""
        return sum(c for i, j, c in self.entries if wire in (i, j))

    def loads(self) -> list[int]:
        out = [0] * (self.n + 1)
        for i, j, c in self.entries:
            out[i] += c
            out[j] += c
        return out[1:]

    def vector(self) -> tuple[int, ...]:
        """Counts of all pairs ``i < j`` in lexicographic pair order."""
        return tuple(self.count(i, j) for i, j in combinations(range(1, self.n + 1), 2))

    def matrix(self) -> np.ndarray:
        m = np.zeros((self.n, self.n), dtype=np.int64)
        for i, j, c in self.entries:
            m[i - 1, j - 1] = m[j - 1, i - 1] = c
        return m

    def __str__(self) -> str:
        body = ", ".join(f"({i},{j}):{c}" for i, j, c in self.entries)
        return f"SwapList(n={self.n}, {{{body}}})"


def validate_list(n: int, raw: RawEntries) -> SwapList:
    """Check raw pair counts and return the canonical :class:`SwapList`.

    ``raw`` is either a mapping ``{(i, j): count}`` or an iterable of
    ``(i, j, count)`` triples.  ``(i, j)`` and ``(j, i)`` name the same pair;
    giving both is a :class:`DuplicatePair` error, not a sum.
    """
    if n < 0:
        raise OutOfRange(f"wire count must be nonnegative, got {n}")
    if isinstance(raw, Mapping):
        triples: Iterable = ((i, j, c) for (i, j), c in raw.items())
    else:
        triples = raw
    seen: dict[Pair, int] = {}
    for i, j, c in triples:
        i, j, c = int(i), int(j), int(c)
        if i == j:
            raise SelfPair(f"wire {i} cannot swap with itself")
        for w in (i, j):
            if not 1 <= w <= n:
                raise OutOfRange(f"wire {w} outside [1, {n}]")
        if c < 0:
            raise NegativeCount(f"pair ({i},{j}) has negative count {c}")
        key = pair(i, j)
        if key in seen:
            raise DuplicatePair(f"pair {key} listed more than once")
        seen[key] = c
    entries = tuple(sorted((i, j, c) for (i, j), c in seen.items() if c > 0))
    return SwapList(n, entries)


def classify_list(lst: SwapList) -> dict[str, bool]:
    """Flags ``simple``, ``odd``, ``even`` and ``nonseparable``.

    simple: every count is at most 1.  odd: every nonzero count is odd.
    even: every count is even.  nonseparable: there is no ``i < k < j`` with
    zero counts on ``(i, k)`` and ``(k, j)`` but a positive count on ``(i, j)``.
    """
    counts = [c for _, _, c in lst.entries]
    nonseparable = True
    for i, j, _ in lst.entries:
        if any(lst.count(i, k) == 0 and lst.count(k, j) == 0 for k in range(i + 1, j)):
            nonseparable = False
            break
    return {
        "simple": all(c <= 1 for c in counts),
        "odd": all(c % 2 == 1 for c in counts),
        "even": all(c % 2 == 0 for c in counts),
        "nonseparable": nonseparable,
    }


def gen_ln(n: int, anchor: str = "right") -> SwapList:
    """The rigid list ``L_n``.

    Wires ``1..n-2`` swap pairwise once, the last two wires swap ``n - 1``
    times, and every other wire swaps twice with exactly one of the last two.
    With ``anchor="right"`` wire ``n-2`` pairs with wire ``n``, ``n-3`` with
    ``n-1``, alternating leftwards; all realizations then share one swap
    order along every wire.  ``anchor="left"`` alternates from wire 1
    instead (odd wires with ``n``).  Both agree for odd ``n``; for even ``n``
    the left-anchored list admits several swap orders.
    """
    if n < 3:
        raise TooFewWires(f"L_n needs at least 3 wires, got {n}")
    if anchor not in ("left", "right"):
        raise ValueError(f"anchor must be 'left' or 'right', got {anchor!r}")
    counts: dict[Pair, int] = {}
    for i, j in combinations(range(1, n - 1), 2):
        counts[(i, j)] = 1
    counts[(n - 1, n)] = n - 1
    for i in range(1, n - 1):
        with_last = (n - 2 - i) % 2 == 0 if anchor == "right" else i % 2 == 1
        counts[(i, n if with_last else n - 1)] = 2
    return validate_list(n, counts)


# ---------------------------------------------------------------------------
# Moves and tangles
# ---------------------------------------------------------------------------


def make_move(positions: Iterable[int], n: Optional[int] = None) -> Move:
    """Validate a set of swap positions and freeze it."""
    move = frozenset(int(p) for p in positions)
    if not move:
        raise InvalidTangle("a move must contain at least one swap")
    ordered = sorted(move)
    for p, q in zip(ordered, ordered[1:]):
        if q - p <= 1:
            raise OverlappingPositions(f"positions {p} and {q} share a wire")
    if ordered[0] < 1 or (n is not None and ordered[-1] > n - 1):
        raise PositionOutOfRange(f"positions {ordered} outside [1, {n - 1 if n else '?'}]")
    return move


def apply_move(layer: Layer, move: Iterable[int]) -> Layer:
    n = len(layer)
    move = make_move(move, n)
    out = list(layer)
    for p in move:
        out[p - 1], out[p] = out[p], out[p - 1]
    return tuple(out)


def move_between(a: Layer, b: Layer) -> Move:
    """Recover the move that turns layer ``a`` into layer ``b``."""
    if len(a) != len(b):
        raise InvalidTangle("consecutive layers differ in length")
    positions = []
    p = 0
    while p < len(a):
        if a[p] == b[p]:
            p += 1
            continue
        if p + 1 < len(a) and a[p] == b[p + 1] and a[p + 1] == b[p]:
            positions.append(p + 1)
            p += 2
            continue
        raise InvalidTangle(f"layers {a} and {b} are not one move apart")
    if not positions:
        raise InvalidTangle(f"consecutive layers {a} are equal")
    return frozenset(positions)


@dataclass(frozen=True)
class Tangle:
    """A start layer and the moves applied to it, top to bottom."""

    start: Layer
    moves: tuple[Move, ...] = ()

    @classmethod
    def from_moves(cls, start: Iterable[int], moves: Iterable[Iterable[int]]) -> "Tangle":
        start = tuple(start)
        t = cls(start, tuple(frozenset(m) for m in moves))
        t.layers  # validates every move
        return t

    @classmethod
    def from_layers(cls, layers: Iterable[Iterable[int]]) -> "Tangle":
        layers = [tuple(layer) for layer in layers]
        if not layers:
            raise InvalidTangle("a tangle has at least one layer")
        _check_layer(layers[0])
        moves = tuple(move_between(a, b) for a, b in zip(layers, layers[1:]))
        return cls(layers[0], moves)

    @property
    def n(self) -> int:
        return len(self.start)

    @property
    def height(self) -> int:
        return len(self.moves) + 1

    @cached_property
    def layers(self) -> tuple[Layer, ...]:
        _check_layer(self.start)
        out = [self.start]
        for k, move in enumerate(self.moves):
            try:
                out.append(apply_move(out[-1], move))
            except (OverlappingPositions, PositionOutOfRange, InvalidTangle) as exc:
                raise InvalidTangle(f"move {k + 1}: {exc}") from exc
        return tuple(out)

    @property
    def final(self) -> Layer:
        return self.layers[-1]

    def encoded_moves(self) -> tuple[tuple[int, ...], ...]:
        """Moves as sorted position tuples; the lexicographic sort key."""
        return tuple(tuple(sorted(m)) for m in self.moves)


def _check_layer(layer: Layer) -> None:
    if sorted(layer) != list(range(1, len(layer) + 1)):
        raise InvalidTangle(f"layer {layer} is not a permutation of 1..{len(layer)}")


def realized_multiset(t: Tangle) -> SwapList:
    counts: dict[Pair, int] = {}
    for layer, move in zip(t.layers, t.moves):
        for p in move:
            key = pair(layer[p - 1], layer[p])
            counts[key] = counts.get(key, 0) + 1
    return validate_list(t.n, counts)


@dataclass(frozen=True)
class Violation:
    pair: Pair
    expected: int
    actual: int

    def __str__(self) -> str:
        return f"pair {self.pair}: expected {self.expected}, got {self.actual}"


@dataclass(frozen=True)
class Verdict:
    ok: bool
    violation: Optional[Violation] = None

    def __bool__(self) -> bool:
        return self.ok


def verify_realizes(t: Tangle, lst: SwapList) -> Verdict:
    if t.n != lst.n:
        raise WireCountMismatch(f"tangle has {t.n} wires, list has {lst.n}")
    if t.start != identity(t.n):
        raise InvalidTangle("the start layer must be the identity order")
    got = realized_multiset(t)
    for i, j in combinations(range(1, t.n + 1), 2):
        want, have = lst.count(i, j), got.count(i, j)
        if want != have:
            return Verdict(False, Violation((i, j), want, have))
    return Verdict(True)


# ---------------------------------------------------------------------------
# Parity-forced final order
# ---------------------------------------------------------------------------


def parity_final_order(layer: Layer, counts: Mapping[Pair, int] | SwapList) -> Layer:
    """Final layer forced by pair-count parities, starting from ``layer``.

    Wire ``u`` ends left of ``v`` iff it is left of ``v`` now and their
    count is even, or right of it and the count is odd.  Raises
    :class:`CyclicOrder` when these relations are not a linear order.
    """
    lookup = counts.count if isinstance(counts, SwapList) else (
        lambda i, j: counts.get(pair(i, j), 0)
    )
    n = len(layer)
    pos = {w: k for k, w in enumerate(layer)}
    before: dict[int, set[int]] = {w: set() for w in layer}
    for u, v in combinations(layer, 2):  # u left of v now
        if lookup(u, v) % 2:
            before[v].add(u)
        else:
            before[u].add(v)
    by_score = sorted(layer, key=lambda w: (-len(before[w]), pos[w]))
    scores = [len(before[w]) for w in by_score]
    if scores == list(range(n - 1, -1, -1)):
        return tuple(by_score)
    for a in layer:
        for b in before[a]:
            for c in before[b]:
                if a in before[c]:
                    raise CyclicOrder(
                        f"parities force {a} < {b} < {c} < {a}", cycle=(a, b, c)
                    )
    raise CyclicOrder("parity relation is not transitive")  # pragma: no cover


def required_final_order(lst: SwapList) -> Layer:
    """Unique final layer of any tangle realizing ``lst`` (if one exists).

    This is a necessary condition only: a list can pass it and still be
    infeasible.
    """
    return parity_final_order(identity(lst.n), lst)


# ---------------------------------------------------------------------------
# Text formats
# ---------------------------------------------------------------------------


def _content_lines(text: str) -> Iterator[tuple[int, str]]:
    for lineno, line in enumerate(text.splitlines(), 1):
        body = line.split("#", 1)[0].strip()
        if body:
            yield lineno, body


def parse_list(text: str) -> SwapList:
    """Parse the line format ``wires <n>`` followed by ``<i> <j> <count>`` lines."""
    lines = _content_lines(text)
    try:
        lineno, header = next(lines)
    except StopIteration:
        raise FormatError("empty list file") from None
    parts = header.split()
    if len(parts) != 2 or parts[0] != "wires":
        raise FormatError(f"line {lineno}: expected 'wires <n>', got {header!r}")
    try:
        n = int(parts[1])
    except ValueError:
        raise FormatError(f"line {lineno}: bad wire count {parts[1]!r}") from None
    triples = []
    for lineno, body in lines:
        parts = body.split()
        if len(parts) != 3:
            raise FormatError(f"line {lineno}: expected '<i> <j> <count>', got {body!r}")
        try:
            i, j, c = (int(x) for x in parts)
        except ValueError:
            raise FormatError(f"line {lineno}: non-integer field in {body!r}") from None
        if i >= j:
            raise FormatError(f"line {lineno}: pair must be written with i < j")
        triples.append((i, j, c))
    return validate_list(n, triples)


def format_list(lst: SwapList, header: Iterable[str] = ()) -> str:
    """Serialize ``lst``; ``header`` lines are emitted as ``#`` comments after line 1."""
    out = io.StringIO()
    out.write(f"wires {lst.n}\n")
    for line in header:
        out.write(f"# {line}\n" if line else "#\n")
    for i, j, c in lst.entries:
        out.write(f"{i} {j} {c}\n")
    return out.getvalue()


def parse_tangle(text: str) -> Tangle:
    layers = []
    for lineno, body in _content_lines(text):
        try:
            layers.append(tuple(int(x) for x in body.split()))
        except ValueError:
            raise FormatError(f"line {lineno}: non-integer wire id in {body!r}") from None
    if not layers:
        raise FormatError("empty tangle file")
    if len({len(layer) for layer in layers}) != 1:
        raise FormatError("layers have different lengths")
    try:
        return Tangle.from_layers(layers)
    except InvalidTangle as exc:
        raise FormatError(str(exc)) from exc


def format_tangle(t: Tangle) -> str:
    return "".join(" ".join(map(str, layer)) + "\n" for layer in t.layers)

