"""
Rigid lists with a single swap order
====================================

For the family L_n every realization makes each wire meet its partners in
the same order. We enumerate all realizations for small n and compare the
per-wire swap sequences.
"""

import time

from tanglekit import gen_ln
from tanglekit.search import check_unique_swap_order, count_realizations

for n in range(3, 7):
    t0 = time.perf_counter()
    res = check_unique_swap_order(gen_ln(n))
    dt = time.perf_counter() - t0
    print(f"L_{n}: total {gen_ln(n).total:3d}  realizations {res.realizations:6d}"
          f"  unique {res.unique}  ({dt:.2f} s)")

# the matrix form, for n = 7
print(gen_ln(7).matrix())
print("realizations of L_7 (counted, not listed):", count_realizations(gen_ln(7)))
