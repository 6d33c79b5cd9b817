"""
Adaptive adversaries
====================

An adversary watches where each item lands and picks the next size
accordingly.  Here every built-in algorithm is played against the k = 3
and the k >= 4 strategies, and the move log of one game is shown.
"""

from cardbin import adversary
from cardbin.algorithms import make_algorithm

res = adversary.duel(adversary.AbsoluteK3(), make_algorithm("ff", 3))
for i, size, j in res.log:
    print(f"item {i:2d}  size {str(size):>7}  ->  bin {j}")
print(f"FF: {res.alg_bins} bins, certificate {res.opt_bins}, ratio {res.ratio}")
print()

for k in (4, 5, 6):
    for name in ("ff", "harmonic", "tf", "alg5"):
        if name == "alg5" and k != 5:
            continue
        res = adversary.duel(adversary.AbsoluteK4Plus(k), make_algorithm(name, k))
        print(f"k={k} {name:9s} ratio {res.ratio}")

# the four-batch inputs give asymptotic bounds instead
for k in (7, 10):
    res = adversary.batch_duel("ff", k, 6 * k)
    print(f"batches k={k}: FF ratios after each batch {[str(r) for r in res.ratios]}, "
          f"bound for any algorithm {adversary.lb_value(k)}")
