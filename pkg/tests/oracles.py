"""Reference implementations used only by the tests.

They are deliberately naive and share no code with the package beyond the
data model, so agreement is evidence rather than tautology.
"""

from fractions import Fraction
from functools import lru_cache
from math import gcd


def naive_first_fit(k, sizes):
    """Scan bins left to right; returns the list of groups of item indices."""
    bins = []
    for i, s in enumerate(sizes):
        for g in bins:
            if len(g) < k and sum(sizes[j] for j in g) + s <= 1:
                g.append(i)
                break
        else:
            bins.append([i])
    return bins


def subset_dp_opt(k, sizes):
    """OPT by dynamic programming over subsets (bitmasks)."""
    n = len(sizes)
    full = (1 << n) - 1
    fits = {}
    for mask in range(1, full + 1):
        members = [i for i in range(n) if mask >> i & 1]
        fits[mask] = len(members) <= k and sum(sizes[i] for i in members) <= 1

    @lru_cache(maxsize=None)
    def best(rest):
        if rest == 0:
            return 0
        low = rest & -rest
        others = rest ^ low
        out = n + 1
        sub = others
        while True:
            block = sub | low
            if fits[block]:
                out = min(out, 1 + best(rest ^ block))
            if sub == 0:
                break
            sub = (sub - 1) & others
        return out

    return best(full)


def _integer_sizes(sizes):
    den = 1
    for x in sizes:
        den = den * x.denominator // gcd(den, x.denominator)
    return [int(x * den) for x in sizes], den


def enumerate_opt(k, sizes):
    """OPT by walking every feasible set partition.

    Items join an existing block or open a new one, so each partition is
    produced exactly once; branches die only when a block would overflow.
    """
    ints, cap = _integer_sizes(sizes)
    n = len(ints)
    loads, counts = [], []
    best = [n]

    def walk(i):
        if i == n:
            best[0] = min(best[0], len(loads))
            return
        x = ints[i]
        for j in range(len(loads)):
            if counts[j] < k and loads[j] + x <= cap:
                loads[j] += x
                counts[j] += 1
                walk(i + 1)
                loads[j] -= x
                counts[j] -= 1
        loads.append(x)
        counts.append(1)
        walk(i + 1)
        loads.pop()
        counts.pop()

    walk(0)
    return best[0]


def level(sizes, group):
    return sum((sizes[i] for i in group), Fraction(0))
