"""From Not-All-Equal 3-SAT to tangle lists.

Pipeline:

1. :func:`to_positive_diff` rewrites an NAE 3-SAT formula so that every
   literal is positive and every clause has three distinct variables.
2. :func:`build_list` turns such a formula into a swap list whose wires
   form variable gadgets, clause gadgets, the loop pair ``lambda`` /
   ``lambda'`` and seven rigid ``phi`` wires.
3. :func:`embed_assignment` maps an NAE assignment onto the four
   ``lambda'``-``lambda`` loops, choosing for every clause which loop each
   of its variable wires visits.

Literals use DIMACS conventions: variable ``k`` is ``k``, its negation ``-k``.
"""

from __future__ import annotations

import io
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, permutations
from typing import Optional

import numpy as np

from .core import SwapList, format_list, parse_list, validate_list
from .errors import (
    ArmInterleaving,
    FormatError,
    FormulaError,
    NotNAE,
    TooManyVariables,
)

MAX_BRUTE_FORCE_VARS = 26

Clause = tuple[int, int, int]


# ---------------------------------------------------------------------------
# Formulas
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NaeFormula:
    num_vars: int
    clauses: tuple[Clause, ...]

    def __post_init__(self):
        for c in self.clauses:
            if len(c) != 3:
                raise FormulaError(f"clause {c} does not have three literals")
            for lit in c:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise FormulaError(f"literal {lit} outside 1..{self.num_vars}")


@dataclass(frozen=True)
class PositiveDiffFormula(NaeFormula):
    """NAE 3-SAT with positive literals and three distinct variables per clause."""

    def __post_init__(self):
        super().__post_init__()
        for c in self.clauses:
            if min(c) < 0:
                raise FormulaError(f"clause {c} has a negative literal")
            if len(set(c)) != 3:
                raise FormulaError(f"clause {c} repeats a variable")

    @classmethod
    def from_formula(cls, f: NaeFormula) -> "PositiveDiffFormula":
        return cls(f.num_vars, f.clauses)

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)


Assignment = tuple[bool, ...]


def nae_satisfied(f: NaeFormula, assignment: Sequence[bool]) -> bool:
    """No clause has all three literals with the same truth value."""
    for c in f.clauses:
        vals = {assignment[abs(lit) - 1] == (lit > 0) for lit in c}
        if len(vals) == 1:
            return False
    return True


def brute_force_nae(f: NaeFormula, chunk: int = 1 << 16) -> Optional[Assignment]:
    """First NAE-satisfying assignment in lexicographic order, or ``None``.

    Assignments are ordered as tuples ``(x_1, ..., x_n)`` with
    ``False < True``; they are scanned in vectorized blocks.
    """
    n = f.num_vars
    if n > MAX_BRUTE_FORCE_VARS:
        raise TooManyVariables(f"{n} variables exceed the limit of {MAX_BRUTE_FORCE_VARS}")
    if not f.clauses:
        return (False,) * n
    total = 1 << n
    lo, size = 0, min(chunk, 256)
    while lo < total:
        idx = np.arange(lo, min(total, lo + size), dtype=np.uint64)
        # bits[k]: value of variable k+1; variable 1 is the most significant bit
        bits = [((idx >> np.uint64(n - 1 - k)) & np.uint64(1)).astype(bool) for k in range(n)]
        ok = np.ones(idx.size, dtype=bool)
        for c in f.clauses:
            x, y, z = (bits[l - 1] if l > 0 else ~bits[-l - 1] for l in c)
            ok &= (x | y | z) & ~(x & y & z)
        good = np.flatnonzero(ok)
        if good.size:
            a = int(idx[good[0]])
            return tuple(bool((a >> (n - 1 - k)) & 1) for k in range(n))
        # small first block keeps easy instances cheap
        lo += size
        size = chunk
    return None


@dataclass(frozen=True)
class VariableTrace:
    """Where the variables of the source formula went.

    ``positive[i-1]`` / ``negative[i-1]`` are the new variables standing for
    ``v_i`` and ``not v_i``; ``abd`` is the shared fresh triple; ``fano``
    holds the seven extra variables used only when some clause repeats one
    variable three times.
    """

    positive: tuple[int, ...]
    negative: tuple[int, ...]
    abd: tuple[int, int, int]
    fano: tuple[int, ...] = ()

    def lift(self, assignment: Sequence[bool]) -> Assignment:
        """Source assignment read off a satisfying assignment of the rewrite."""
        return tuple(assignment[x - 1] for x in self.positive)


# lines of the Fano plane: its 3-uniform hypergraph has no proper 2-colouring
_FANO_LINES = ((1, 2, 3), (1, 4, 5), (1, 6, 7), (2, 4, 6), (2, 5, 7), (3, 4, 7), (3, 5, 6))


def to_positive_diff(f: NaeFormula) -> tuple[PositiveDiffFormula, VariableTrace]:
    """Rewrite ``f`` into an equisatisfiable positive, distinct-variable formula.

    ``v_i`` becomes ``x_i = i`` and ``not v_i`` becomes ``y_i = n + i``; the
    clause ``(x_i, y_i, y_i)`` ties them together.  Fresh ``a, b, d`` get the
    clause ``(a, b, d)``, and every clause with a repeated variable
    ``(p, p, q)`` is replaced by ``(p, q, a)``, ``(p, q, b)``, ``(p, q, d)``.
    A clause on a single variable is never NAE-satisfiable; it is replaced
    by the Fano plane on seven fresh variables, added once.
    """
    n = f.num_vars
    pos = tuple(range(1, n + 1))
    neg = tuple(range(n + 1, 2 * n + 1))
    a, b, d = 2 * n + 1, 2 * n + 2, 2 * n + 3
    nxt = 2 * n + 4

    def sub(lit: int) -> int:
        return pos[lit - 1] if lit > 0 else neg[-lit - 1]

    raw = [tuple(sub(lit) for lit in c) for c in f.clauses]
    raw += [(pos[i], neg[i], neg[i]) for i in range(n)]
    out: list[Clause] = []
    fano: tuple[int, ...] = ()
    for c in raw:
        distinct = tuple(dict.fromkeys(c))
        if len(distinct) == 3:
            out.append(c)
        elif len(distinct) == 2:
            out.extend(distinct + (z,) for z in (a, b, d))
        elif not fano:
            fano = tuple(range(nxt, nxt + 7))
            out.extend(tuple(fano[k - 1] for k in line) for line in _FANO_LINES)
    out.append((a, b, d))
    num = 2 * n + 3 + len(fano)
    return PositiveDiffFormula(num, tuple(out)), VariableTrace(pos, neg, (a, b, d), fano)


# ---------------------------------------------------------------------------
# Formula text format
# ---------------------------------------------------------------------------


def parse_formula(text: str) -> NaeFormula:
    """DIMACS-style ``p nae3 <vars> <clauses>`` followed by ``l1 l2 l3 0`` lines."""
    header = None
    clauses = []
    for lineno, line in enumerate(text.splitlines(), 1):
        body = line.strip()
        if not body or body.startswith("c") or body.startswith("#"):
            continue
        parts = body.split()
        if parts[0] == "p":
            if header is not None:
                raise FormatError(f"line {lineno}: second header")
            if len(parts) != 4 or parts[1] != "nae3":
                raise FormatError(f"line {lineno}: expected 'p nae3 <vars> <clauses>'")
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise FormatError(f"line {lineno}: bad header numbers") from None
            continue
        if header is None:
            raise FormatError(f"line {lineno}: clause before header")
        try:
            nums = [int(x) for x in parts]
        except ValueError:
            raise FormatError(f"line {lineno}: non-integer literal") from None
        if len(nums) != 4 or nums[3] != 0 or 0 in nums[:3]:
            raise FormatError(f"line {lineno}: expected three literals and a 0 terminator")
        clauses.append(tuple(nums[:3]))
    if header is None:
        raise FormatError("missing 'p nae3' header")
    if len(clauses) != header[1]:
        raise FormatError(f"header announces {header[1]} clauses, found {len(clauses)}")
    try:
        return NaeFormula(header[0], tuple(clauses))
    except FormulaError as exc:
        raise FormatError(str(exc)) from exc


def format_formula(f: NaeFormula, comments: Iterable[str] = ()) -> str:
    out = io.StringIO()
    for line in comments:
        out.write(f"c {line}\n")
    out.write(f"p nae3 {f.num_vars} {len(f.clauses)}\n")
    for c in f.clauses:
        out.write(" ".join(map(str, c)) + " 0\n")
    return out.getvalue()


def parse_assignment(text: str, num_vars: int) -> Assignment:
    """Signed literals (optionally after a leading ``v``), ``0``-terminated.

    Every variable must appear exactly once.
    """
    values: dict[int, bool] = {}
    for line in text.splitlines():
        body = line.strip()
        if not body or body[0] in "c#":
            continue
        for tok in body.split():
            if tok == "v":
                continue
            try:
                lit = int(tok)
            except ValueError:
                raise FormatError(f"bad literal {tok!r}") from None
            if lit == 0:
                continue
            if abs(lit) > num_vars:
                raise FormatError(f"literal {lit} outside 1..{num_vars}")
            if abs(lit) in values:
                raise FormatError(f"variable {abs(lit)} assigned twice")
            values[abs(lit)] = lit > 0
    if len(values) != num_vars:
        missing = sorted(set(range(1, num_vars + 1)) - set(values))
        raise FormatError(f"unassigned variables {missing}")
    return tuple(values[k] for k in range(1, num_vars + 1))


def format_assignment(a: Sequence[bool]) -> str:
    return "v " + " ".join(str(k if v else -k) for k, v in enumerate(a, 1)) + " 0\n"


# ---------------------------------------------------------------------------
# Gadget roles
# ---------------------------------------------------------------------------

VARIABLE_KINDS = ("alpha", "beta", "alpha'", "beta'", "v")
CLAUSE_KINDS = ("psi", "gamma", "c")


@dataclass(frozen=True, order=True)
class Role:
    """Named job of one wire in a reduction instance.

    ``idx`` depends on ``kind``: ``()`` for lambda/lambda'; ``(i,)`` for
    alpha, alpha', v; ``(i, t)`` for beta, beta'; ``(j,)`` for c;
    ``(j, k)`` for gamma; ``(j, k, t)`` for psi; ``(k,)`` for phi.
    """

    kind: str
    idx: tuple[int, ...] = ()

    @property
    def name(self) -> str:
        if not self.idx:
            return self.kind
        return f"{self.kind}[{','.join(map(str, self.idx))}]"

    def __str__(self) -> str:
        return self.name

    @classmethod
    def parse(cls, text: str) -> "Role":
        if "[" not in text:
            return cls(text)
        kind, rest = text.split("[", 1)
        return cls(kind, tuple(int(x) for x in rest.rstrip("]").split(",")))


LAMBDA = Role("lambda")
LAMBDA_P = Role("lambda'")


def variable_left(i: int) -> list[Role]:
    """``V_i``: beta_{i,5} < ... < beta_{i,1} < alpha_i."""
    return [Role("beta", (i, t)) for t in range(5, 0, -1)] + [Role("alpha", (i,))]


def variable_right(i: int) -> list[Role]:
    """``V'_i``: alpha'_i < beta'_{i,1} < ... < beta'_{i,5} < v_i."""
    return (
        [Role("alpha'", (i,))]
        + [Role("beta'", (i, t)) for t in range(1, 6)]
        + [Role("v", (i,))]
    )


def occurrence_group(j: int, k: int) -> list[Role]:
    """``D^k_j``: psi_{j,3} < psi_{j,2} < psi_{j,1} < gamma^k_j."""
    return [Role("psi", (j, k, t)) for t in (3, 2, 1)] + [Role("gamma", (j, k))]


def clause_group(j: int) -> list[Role]:
    """``C_j``: D^3_j < D^2_j < D^1_j < c_j."""
    return occurrence_group(j, 3) + occurrence_group(j, 2) + occurrence_group(j, 1) + [
        Role("c", (j,))
    ]


def wire_order(num_vars: int, num_clauses: int) -> list[Role]:
    """All roles in initial left-to-right order: V < C < lambda < lambda' < E < V'."""
    roles: list[Role] = []
    for i in range(num_vars, 0, -1):
        roles += variable_left(i)
    for j in range(num_clauses, 0, -1):
        roles += clause_group(j)
    roles += [LAMBDA, LAMBDA_P]
    roles += [Role("phi", (k,)) for k in range(1, 8)]
    for i in range(1, num_vars + 1):
        roles += variable_right(i)
    return roles


@dataclass(frozen=True)
class GadgetContext:
    """Formula-dependent data that multiplicities depend on.

    ``variable_pair_count`` is the count for two variable wires ``v_i``,
    ``v_j``; 8 gives two swaps in each of the four loops, 6 follows the
    blanket "six swaps with all of V'_i" rule instead.
    """

    formula: PositiveDiffFormula
    variable_pair_count: int = 8

    @cached_property
    def membership(self) -> frozenset[tuple[int, int]]:
        """Pairs ``(variable, clause)`` with the variable occurring in the clause."""
        return frozenset(
            (w, j) for j, c in enumerate(self.formula.clauses, 1) for w in c
        )

    def occurrence(self, j: int, k: int) -> int:
        """The ``k``-th variable of clause ``j``."""
        return self.formula.clauses[j - 1][k - 1]


def _odd(t: int) -> bool:
    return t % 2 == 1


def _rule(a: Role, b: Role, ctx: GadgetContext) -> Optional[int]:
    """Count for ``{a, b}`` if a rule keyed on ``a``'s role covers it."""
    ka, kb = a.kind, b.kind

    if ka == "lambda" and kb == "lambda'":
        return 8

    if ka == "v":
        (i,) = a.idx
        if kb == "lambda":
            return 4
        if kb == "lambda'":
            return 0
        if kb == "beta'" and b.idx[0] == i:
            return 4
        if kb == "c" and (i, b.idx[0]) in ctx.membership:
            return 2
        if kb == "psi" and b.idx[2] == 2 and ctx.occurrence(*b.idx[:2]) == i:
            return 2
        if kb in ("alpha", "alpha'", "beta'") and b.idx[0] < i:
            return 6
        if kb == "v" and b.idx[0] < i:
            return ctx.variable_pair_count
        return None

    if ka in ("alpha", "alpha'"):
        (i,) = a.idx
        if kb in ("lambda", "lambda'", "phi"):
            return 2
        if kb in VARIABLE_KINDS and b.idx[0] < i:
            return 2
        return None

    if ka == "beta":
        i, t = a.idx
        if kb == "beta" and b.idx[0] == i:
            return 1
        if kb == "lambda" and _odd(t):
            return 2
        if kb == "lambda'" and not _odd(t):
            return 2
        if kb in ("alpha'", "alpha", "beta") and b.idx[0] < i:
            return 2
        return None

    if ka == "beta'":
        i, t = a.idx
        if kb == "beta'" and b.idx[0] == i:
            return 1
        if kb == "lambda" and not _odd(t):
            return 2
        if kb == "lambda'" and _odd(t):
            return 2
        if kb in ("alpha", "alpha'", "beta'", "v") and b.idx[0] < i:
            return 2
        return None

    if ka == "phi":
        (k,) = a.idx
        if kb == "phi":
            return 1
        if _odd(k) and kb in ("lambda", "c", "gamma"):
            return 2
        if not _odd(k) and kb == "lambda'":
            return 2
        return None

    if ka in CLAUSE_KINDS:
        if kb in ("alpha", "beta", "alpha'"):
            return 2
        if kb == "lambda'":
            if ka in ("c", "gamma"):
                return 8
            if ka == "psi" and a.idx[2] == 2:
                return 2
            return None
        j = a.idx[0]
        if kb not in CLAUSE_KINDS or b.idx[0] != j:
            return None
        if ka == "c":
            if kb == "gamma":
                return 2
            if kb == "psi" and b.idx[2] in (1, 3):
                return 2
            return None
        if ka == "gamma":
            # D^l_j sits left of D^k_j for l > k
            if kb in ("gamma", "psi") and b.idx[1] < a.idx[1]:
                return 8
            return None
        # psi
        jk = a.idx[:2]
        if kb == "psi" and b.idx[:2] == jk:
            return 1
        if kb in ("gamma", "psi") and b.idx[1] < a.idx[1]:
            return 2
        return None

    return None


def pair_multiplicity(a: Role, b: Role, ctx: GadgetContext) -> int:
    """Swap count between the wires playing roles ``a`` and ``b``.

    Each rule is keyed on one endpoint's role; a pair covered by no rule
    has count 0.  A pair covered from both sides with different counts
    would be a bug in the rule table and raises ``AssertionError``.
    """
    if a == b:
        raise ValueError(f"role {a} paired with itself")
    found = [r for r in (_rule(a, b, ctx), _rule(b, a, ctx)) if r is not None]
    if not found:
        return 0
    assert len(set(found)) == 1, (a, b, found)
    return found[0]


@dataclass(frozen=True)
class ReductionInstance:
    formula: PositiveDiffFormula
    list: SwapList
    roles: tuple[Role, ...]  # roles[w - 1] is the role of wire w

    @cached_property
    def wire_of(self) -> dict[Role, int]:
        return {r: w for w, r in enumerate(self.roles, 1)}

    def count(self, a: Role, b: Role) -> int:
        return self.list.count(self.wire_of[a], self.wire_of[b])


def build_list(f: PositiveDiffFormula, variable_pair_count: int = 8) -> ReductionInstance:
    """Swap list of the reduction for ``f``, with wires in initial order."""
    if not isinstance(f, PositiveDiffFormula):
        f = PositiveDiffFormula.from_formula(f)
    ctx = GadgetContext(f, variable_pair_count)
    roles = wire_order(f.num_vars, f.num_clauses)
    counts = {}
    for (wa, ra), (wb, rb) in combinations(enumerate(roles, 1), 2):
        c = pair_multiplicity(ra, rb, ctx)
        if c:
            counts[(wa, wb)] = c
    return ReductionInstance(f, validate_list(len(roles), counts), tuple(roles))


def format_instance(inst: ReductionInstance) -> str:
    f = inst.formula
    header = [f"reduction of a {f.num_vars}-variable, {f.num_clauses}-clause formula"]
    header += [f"clause {j} " + " ".join(map(str, c)) for j, c in enumerate(f.clauses, 1)]
    header += [f"role {w} {r.name}" for w, r in enumerate(inst.roles, 1)]
    return format_list(inst.list, header)


def parse_roles(text: str) -> dict[int, Role]:
    """Role table from the ``# role <wire> <name>`` comments of an instance file."""
    roles = {}
    for line in text.splitlines():
        parts = line.split()
        if len(parts) == 4 and parts[0] == "#" and parts[1] == "role":
            roles[int(parts[2])] = Role.parse(parts[3])
    return roles


def parse_instance(text: str) -> ReductionInstance:
    """Inverse of :func:`format_instance`."""
    lst = parse_list(text)
    roles = parse_roles(text)
    clauses = []
    for line in text.splitlines():
        parts = line.split()
        if len(parts) == 6 and parts[:2] == ["#", "clause"]:
            clauses.append(tuple(int(x) for x in parts[3:]))
    num_vars = sum(1 for r in roles.values() if r.kind == "v")
    if sorted(roles) != list(range(1, lst.n + 1)):
        raise FormatError("role table does not cover every wire")
    f = PositiveDiffFormula(num_vars, tuple(clauses))
    return ReductionInstance(f, lst, tuple(roles[w] for w in range(1, lst.n + 1)))


# ---------------------------------------------------------------------------
# Embedding an assignment into the loops
# ---------------------------------------------------------------------------

TRUE_LOOPS = (1, 2)
FALSE_LOOPS = (3, 4)


@dataclass(frozen=True)
class LoopPlan:
    """Which ``lambda'``-``lambda`` loop each variable wire meets each clause in.

    ``clause_loops[j-1]`` maps each variable of clause ``j`` to its loop.
    ``arm_order[l-1]`` lists the ``(clause, variable)`` visits in loop ``l``
    from left to right; clause wires never swap with each other, so arms
    appear in the order ``c_m, ..., c_1``.
    """

    sides: tuple[bool, ...]
    clause_loops: tuple[dict[int, int], ...]
    arm_order: tuple[tuple[tuple[int, int], ...], ...] = field(default=())

    def format(self) -> str:
        out = io.StringIO()
        for w, side in enumerate(self.sides, 1):
            out.write(f"variable {w} {'true' if side else 'false'} loops {TRUE_LOOPS if side else FALSE_LOOPS}\n")
        for j, m in enumerate(self.clause_loops, 1):
            body = " ".join(f"{w}->{l}" for w, l in sorted(m.items()))
            out.write(f"clause {j} {body}\n")
        for l, arms in enumerate(self.arm_order, 1):
            body = " ".join(f"c{j}:v{w}" for j, w in arms)
            out.write(f"loop {l} {body}".rstrip() + "\n")
        return out.getvalue()


def _interleaved(sequence: Sequence[int]) -> Optional[tuple[int, int]]:
    """First variable pair whose visits alternate at least four times (a..b..a..b)."""
    for a, b in combinations(sorted(set(sequence)), 2):
        runs: list[int] = []
        for w in sequence:
            if w in (a, b) and (not runs or runs[-1] != w):
                runs.append(w)
        if len(runs) >= 4:
            return a, b
    return None


def _arm_order(m: int, maps: Sequence[dict[int, int]]) -> tuple[tuple[tuple[int, int], ...], ...]:
    loops: list[list[tuple[int, int]]] = [[] for _ in range(4)]
    for j in range(m, 0, -1):
        for w, l in sorted(maps[j - 1].items()):
            loops[l - 1].append((j, w))
    return tuple(tuple(x) for x in loops)


def _clause_options(clause: Clause, a: Sequence[bool]) -> list[dict[int, int]]:
    """Injective side-respecting loop maps for one clause, greedy choice first."""
    true_vars = [w for w in clause if a[w - 1]]
    false_vars = [w for w in clause if not a[w - 1]]
    options = []
    for tl in _injections(true_vars, TRUE_LOOPS):
        for fl in _injections(false_vars, FALSE_LOOPS):
            options.append({**tl, **fl})
    return options


def _injections(vars_: Sequence[int], loops: Sequence[int]) -> list[dict[int, int]]:
    if len(vars_) > len(loops):
        return []
    return [dict(zip(vars_, p)) for p in permutations(loops, len(vars_))]


def embed_assignment(f: PositiveDiffFormula, a: Sequence[bool]) -> LoopPlan:
    """Assign every (clause, variable) incidence a loop on the variable's side.

    True variables use loops 1 and 2, false ones loops 3 and 4, and the
    three variables of a clause use three different loops.  Within one
    loop, two variable wires may cross at most twice, so their visits to the
    (fixed-order) clause arms must not alternate a, b, a, b.  Clauses are
    assigned in order, greedy option first, backtracking on interleaving.

    Raises :class:`NotNAE` if ``a`` leaves a clause monochromatic and
    :class:`ArmInterleaving` if no loop choice avoids alternation.
    """
    a = tuple(bool(x) for x in a)
    if len(a) != f.num_vars:
        raise ValueError(f"assignment has {len(a)} values for {f.num_vars} variables")
    for j, c in enumerate(f.clauses, 1):
        if len({a[w - 1] for w in c}) == 1:
            raise NotNAE(f"clause {j} {c} is monochromatic")
    m = len(f.clauses)
    options = [_clause_options(c, a) for c in f.clauses]
    chosen: list[dict[int, int]] = [{} for _ in range(m)]

    def consistent(upto: int) -> bool:
        # arms of clauses 1..upto only; a prefix violation persists
        for arms in _arm_order(m, chosen):
            seq = [w for j, w in arms if j <= upto]
            if _interleaved(seq):
                return False
        return True

    def place(j: int) -> bool:
        if j > m:
            return True
        for opt in options[j - 1]:
            chosen[j - 1] = opt
            if consistent(j) and place(j + 1):
                return True
        chosen[j - 1] = {}
        return False

    if not place(1):
        raise ArmInterleaving("every loop choice makes two variable wires alternate")
    return LoopPlan(a, tuple(chosen), _arm_order(m, chosen))
