"""
From a NAE formula to a gadget list
===================================

A formula with a negated literal is first rewritten into positive clauses
over distinct variables, then turned into a swap list whose wires carry
named roles. Finally an NAE assignment is mapped onto the four loops.
"""

from collections import Counter

from tanglekit.reduction import (
    NaeFormula,
    PositiveDiffFormula,
    Role,
    brute_force_nae,
    build_list,
    embed_assignment,
    to_positive_diff,
)

f = NaeFormula(3, ((1, 2, -3),))
g, trace = to_positive_diff(f)
print("rewritten:", g.num_vars, "variables,", g.num_clauses, "clauses")
sol = brute_force_nae(g)
print("first solution of the rewrite lifts to", trace.lift(sol))

# the gadget list grows by 13 wires per variable and per clause
small = PositiveDiffFormula(3, ((1, 2, 3),))
inst = build_list(small)
print("wires:", inst.list.n, " pairs:", len(inst.list.entries), " swaps:", inst.list.total)
print("count histogram:", dict(sorted(Counter(c for _, _, c in inst.list.entries).items())))
print("v[1] with lambda:", inst.count(Role("v", (1,)), Role("lambda")))

# loops for a five-variable formula
h = PositiveDiffFormula(5, ((1, 2, 3), (1, 3, 4), (2, 3, 4), (2, 3, 5)))
plan = embed_assignment(h, (True, False, False, True, True))
print(plan.format())
