"""
Searching for infeasible non-separable even lists
=================================================

Every non-separable list with even counts up to a bound is handed to the
exact solver. Infeasible verdicts would be double-checked by the naive
search before being reported.
"""

from tanglekit.explore import test_conjecture

for n, max_mult in [(3, 2), (3, 4), (4, 2)]:
    rep = test_conjecture(n, max_mult)
    print(rep.format(timing=True))
