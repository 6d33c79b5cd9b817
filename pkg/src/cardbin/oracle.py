"""Exact optimum for small instances by depth-first branch and bound."""

from __future__ import annotations

import math
from fractions import Fraction

from .algorithms import FirstFit
from .core import OPTIMAL, UPPER_BOUND, Certificate, Instance, Packing, trivial_lower_bound

DEFAULT_NODE_BUDGET = 10 ** 7


def decreasing_order(instance: Instance) -> list[int]:
    """Non-increasing size, ties by arrival index."""
    return sorted(range(instance.n), key=lambda i: (-instance.sizes[i], i))


def best_known_upper(instance: Instance) -> Certificate:
    """First Fit Decreasing under the cardinality bound."""
    order = decreasing_order(instance)
    ff = FirstFit(instance.k).feed(instance.sizes[i] for i in order)
    groups = [[order[t] for t in b.items] for b in ff.bins]
    return Certificate(Packing.from_groups(instance, groups), UPPER_BOUND)


class _Search:
    def __init__(self, instance: Instance, order: list[int], incumbent: list[list[int]],
                 budget: int):
        self.k = instance.k
        self.sizes = [instance.sizes[i] for i in order]
        self.order = order
        self.n = len(order)
        # suffix sums for the residual bound
        self.rest = [Fraction(0)] * (self.n + 1)
        for t in range(self.n - 1, -1, -1):
            self.rest[t] = self.rest[t + 1] + self.sizes[t]
        self.best = [list(g) for g in incumbent]
        self.global_lb = trivial_lower_bound(instance)
        self.budget = budget
        self.nodes = 0
        self.exhausted = False
        self.levels: list[Fraction] = []
        self.members: list[list[int]] = []

    def bound(self, t: int) -> int:
        # bins that must exist once items t.. are placed into the current bins plus new ones
        m = len(self.levels)
        free = m - sum(self.levels, Fraction(0))
        slots = m * self.k - sum(len(g) for g in self.members)
        by_size = math.ceil(max(Fraction(0), self.rest[t] - free))
        by_count = -(-max(0, (self.n - t) - slots) // self.k)
        return m + max(by_size, by_count)

    def dfs(self, t: int) -> bool:
        """Returns True once the incumbent is provably optimal."""
        self.nodes += 1
        if self.nodes > self.budget:
            self.exhausted = True
            return True
        if t == self.n:
            if len(self.levels) < len(self.best):
                self.best = [[self.order[x] for x in g] for g in self.members]
            return len(self.best) <= self.global_lb
        if self.bound(t) >= len(self.best):
            return False
        s = self.sizes[t]
        tried = set()
        for j in range(len(self.levels)):
            key = (self.levels[j], len(self.members[j]))
            if key in tried or len(self.members[j]) >= self.k or self.levels[j] + s > 1:
                continue
            tried.add(key)
            self.levels[j] += s
            self.members[j].append(t)
            done = self.dfs(t + 1)
            self.members[j].pop()
            self.levels[j] -= s
            if done:
                return True
        if len(self.levels) + 1 < len(self.best):
            self.levels.append(s)
            self.members.append([t])
            done = self.dfs(t + 1)
            self.members.pop()
            self.levels.pop()
            if done:
                return True
        return False


def exact_opt(instance: Instance, node_budget: int = DEFAULT_NODE_BUDGET) -> Certificate:
    """Minimum-bin packing, or the best incumbent if the node budget runs out.

    The claim on the returned certificate says which: ``optimal`` or
    ``feasible-upper-bound``.
    """
    if instance.n == 0:
        raise ValueError("exact_opt needs at least one item")
    seed = best_known_upper(instance)
    if seed.count == trivial_lower_bound(instance):
        return Certificate(seed.packing, OPTIMAL)
    search = _Search(instance, decreasing_order(instance), seed.packing.groups(), node_budget)
    search.dfs(0)
    packing = Packing.from_groups(instance, search.best)
    cert = Certificate(packing, UPPER_BOUND if search.exhausted else OPTIMAL)
    cert.nodes = search.nodes
    return cert
