"""
Odd-even transposition sort
===========================

For a simple list the final layer is forced; odd-even transposition sort
reaches it with every pair swapping at most once. We compare its height
with the optimum from the exact solver.
"""

import random

from tanglekit import identity, minimize_height, validate_list
from tanglekit.simple import inversions, odd_even_realize

rng = random.Random(1)
for _ in range(5):
    target = list(range(1, 7))
    rng.shuffle(target)
    lst = validate_list(6, {p: 1 for p in inversions(identity(6), tuple(target))})
    t = odd_even_realize(identity(6), tuple(target))
    best = minimize_height(lst).height
    print(f"target {target}: odd-even height {t.height}, optimum {best}")
