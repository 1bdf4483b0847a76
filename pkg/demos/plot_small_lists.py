"""
Deciding feasibility of two small lists
=======================================

Two lists on three wires that differ in a single count: one is realized by
a tangle, the other is not.
"""

from tanglekit import decide_feasible, validate_list
from tanglekit.render import RenderOptions, render_tangle
from tanglekit.core import required_final_order
from tanglekit.errors import CyclicOrder

# wire 1 swaps once with wire 2 and once with wire 3
L = validate_list(3, {(1, 2): 1, (1, 3): 1})
res = decide_feasible(L)
print("L :", res.status.value, "height", res.height)
print(render_tangle(res.witness))

# one extra swap of (1, 2) makes the parity order cyclic
L_prime = validate_list(3, {(1, 2): 2, (1, 3): 1})
print("L':", decide_feasible(L_prime).status.value)
try:
    required_final_order(L_prime)
except CyclicOrder as exc:
    print("cycle among wires", exc.cycle)

# the same witness as SVG, with wire 1 in red
svg = render_tangle(res.witness, RenderOptions(format="svg", highlight=frozenset({1})))
print(svg.splitlines()[0][:60], "...")
