"""Online algorithms with irrevocable placement, and replay-based checks.

Every algorithm follows the same contract: it is created with ``k``, is fed
sizes one at a time through :meth:`OnlineAlgorithm.place`, and answers with
the index of the bin it chose (``== num_bins`` meaning a new bin was opened).
The packing built so far is exposed read-only through :attr:`packing`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .core import (
    Bin,
    Certificate,
    InconsistentInputError,
    Instance,
    Packing,
    Report,
    UnsupportedParameterError,
    check_size,
)

HALF = Fraction(1, 2)
TWO_THIRDS = Fraction(2, 3)


@dataclass(frozen=True)
class PlacementTrace:
    algorithm: str
    k: int
    sizes: tuple[Fraction, ...]
    placements: tuple[int, ...]

    def lines(self) -> list[str]:
        return [f"place {i} -> {b}" for i, b in enumerate(self.placements)]


def read_trace_placements(text: str) -> list[int]:
    out = []
    for line in text.splitlines():
        line = line.strip()
        if line.startswith("place "):
            left, _, right = line[len("place "):].partition("->")
            if int(left) != len(out):
                raise InconsistentInputError(f"trace line out of order: {line!r}")
            out.append(int(right))
    return out


class OnlineAlgorithm:
    name = "abstract"

    def __init__(self, k: int):
        if not isinstance(k, int) or k < 2:
            raise UnsupportedParameterError(f"k must be an integer >= 2, got {k!r}")
        self.k = k
        self.sizes: list[Fraction] = []
        self.bins: list[Bin] = []
        self.placements: list[int] = []

    # subclasses decide; the base class does the bookkeeping
    def _choose(self, size: Fraction) -> int:
        raise NotImplementedError

    def _put(self, j: int, size: Fraction) -> None:
        if j == len(self.bins):
            self.bins.append(Bin())
        elif not 0 <= j < len(self.bins):
            raise AssertionError(f"{self.name} chose invalid bin {j}")
        b = self.bins[j]
        b.items.append(len(self.sizes))
        b.level += size
        self.sizes.append(size)
        self.placements.append(j)

    def place(self, size) -> int:
        size = check_size(size)
        j = self._choose(size)
        self._put(j, size)
        return j

    def feed(self, sizes: Iterable) -> "OnlineAlgorithm":
        for s in sizes:
            self.place(s)
        return self

    @property
    def num_bins(self) -> int:
        return len(self.bins)

    @property
    def packing(self) -> Packing:
        return Packing(Instance(self.k, tuple(self.sizes)), [b.copy() for b in self.bins])

    @property
    def trace(self) -> PlacementTrace:
        return PlacementTrace(self.name, self.k, tuple(self.sizes), tuple(self.placements))


class _LeftmostFit:
    """Max-tree over free capacities; finds the leftmost bin with room >= need.

    Closed bins hold -1 so they never match.
    """

    def __init__(self):
        self._size = 1
        self._tree = [-1, -1]
        self._n = 0

    def _grow(self):
        old = self._tree[self._size:self._size + self._n]
        self._size *= 2
        self._tree = [-1] * (2 * self._size)
        self._tree[self._size:self._size + len(old)] = old
        for v in range(self._size - 1, 0, -1):
            self._tree[v] = max(self._tree[2 * v], self._tree[2 * v + 1])

    def append(self, value) -> None:
        if self._n == self._size:
            self._grow()
        self._n += 1
        self.update(self._n - 1, value)

    def update(self, i: int, value) -> None:
        v = self._size + i
        self._tree[v] = value
        v //= 2
        while v:
            self._tree[v] = max(self._tree[2 * v], self._tree[2 * v + 1])
            v //= 2

    def leftmost(self, need) -> int | None:
        if self._tree[1] < need:
            return None
        v = 1
        while v < self._size:
            v = 2 * v if self._tree[2 * v] >= need else 2 * v + 1
        return v - self._size


class FirstFit(OnlineAlgorithm):
    """Minimum-index bin with level <= 1 - s and at most k - 1 items."""

    name = "ff"

    def __init__(self, k: int):
        super().__init__(k)
        self._index = _LeftmostFit()

    def _choose(self, size):
        j = self._index.leftmost(size)
        return len(self.bins) if j is None else j

    def _put(self, j, size):
        new = j == len(self.bins)
        super()._put(j, size)
        b = self.bins[j]
        free = -1 if b.count >= self.k else 1 - b.level
        if new:
            self._index.append(free)
        else:
            self._index.update(j, free)


class Harmonic(OnlineAlgorithm):
    """Class l holds sizes in (1/(l+1), 1/l] for l < k, class k holds (0, 1/k].

    Each class keeps one open bin that closes on its l-th item.
    """

    name = "harmonic"

    def __init__(self, k: int):
        super().__init__(k)
        self._open: dict[int, int] = {}

    def size_class(self, size: Fraction) -> int:
        return min(self.k, math.floor(1 / size))

    def _choose(self, size):
        return self._open.get(self.size_class(size), len(self.bins))

    def _put(self, j, size):
        cls = self.size_class(size)
        super()._put(j, size)
        if self.bins[j].count == cls:
            self._open.pop(cls, None)
        else:
            self._open[cls] = j


@dataclass(frozen=True)
class TFState:
    paired: frozenset[tuple[int, int]]
    fat: frozenset[int]
    thin: frozenset[int]


class ThinAndFat(OnlineAlgorithm):
    """Thin-and-Fat: absolute ratio 2 for every k >= 2.

    When several fat bins qualify in steps 1 and 5, or several thin partners
    in steps 3 and 5, the minimum index is taken.
    """

    name = "tf"

    def __init__(self, k: int):
        super().__init__(k)
        self.partner: dict[int, int] = {}
        self.fat: set[int] = set()
        self.thin: set[int] = set()
        self.last_step = 0

    @property
    def state(self) -> TFState:
        pairs = frozenset((a, b) for a, b in self.partner.items() if a < b)
        return TFState(pairs, frozenset(self.fat), frozenset(self.thin))

    def _classify(self, j: int) -> None:
        self.fat.discard(j)
        self.thin.discard(j)
        if j in self.partner:
            return
        if self.bins[j].count == self.k - 1:
            self.fat.add(j)
        else:
            self.thin.add(j)

    def _pair(self, a: int, b: int) -> None:
        self.partner[a] = b
        self.partner[b] = a
        for j in (a, b):
            self.fat.discard(j)
            self.thin.discard(j)

    def place(self, size) -> int:
        size = check_size(size)
        new = len(self.bins)
        blocked = sorted(j for j in self.fat if self.bins[j].level + size > 1)
        if blocked:
            self.last_step = 1
            self._put(new, size)
            self._pair(blocked[0], new)
            return new
        if not self.thin:
            self.last_step = 2
            self._put(new, size)
            self._classify(new)
            return new
        roomy = sorted(j for j in self.thin if self.bins[j].level + size <= 1)
        if roomy:
            self.last_step = 3
            j = roomy[0]
            self._put(j, size)
            self._classify(j)
            if j in self.fat:
                others = sorted(self.thin - {j})
                if others:
                    self._pair(j, others[0])
            return j
        if not self.fat:
            self.last_step = 4
            self._put(new, size)
            self._classify(new)
            return new
        self.last_step = 5
        j = min(self.fat)
        self._put(j, size)
        self._pair(j, min(self.thin))
        return j

    def invariant_violations(self) -> list[str]:
        out = []
        nonempty = set(range(len(self.bins)))
        paired = set(self.partner)
        if (paired | self.fat | self.thin) != nonempty or paired & self.fat or paired & self.thin \
                or self.fat & self.thin:
            out.append("paired/fat/thin do not partition the bins")
        for j in self.fat:
            if self.bins[j].count != self.k - 1:
                out.append(f"fat bin {j} has {self.bins[j].count} items")
        for j in self.thin:
            if not 1 <= self.bins[j].count <= self.k - 2:
                out.append(f"thin bin {j} has {self.bins[j].count} items")
        thin = sorted(self.thin)
        for x in range(len(thin)):
            for y in range(x + 1, len(thin)):
                a, b = thin[x], thin[y]
                if self.bins[a].level + self.bins[b].level <= 1:
                    out.append(f"thin bins {a},{b} have combined level <= 1")
        if self.fat and len(self.thin) > 1:
            out.append(f"{len(self.fat)} fat bins coexist with {len(self.thin)} thin bins")
        for a, b in self.state.paired:
            if self.bins[a].level + self.bins[b].level <= 1:
                out.append(f"pair {a},{b} has combined level <= 1")
            if self.bins[a].count + self.bins[b].count < self.k:
                out.append(f"pair {a},{b} has fewer than k items")
        return out


class Alg5(OnlineAlgorithm):
    """First Fit that only completes a 4-item bin if the result reaches level 1/2."""

    name = "alg5"

    def __init__(self, k: int = 5):
        if k != 5:
            raise UnsupportedParameterError(f"alg5 is defined only for k = 5, got k = {k}")
        super().__init__(k)

    def _choose(self, size):
        for j, b in enumerate(self.bins):
            if b.level > 1 - size or b.count > 4:
                continue
            if b.count == 4 and b.level + size < HALF:
                continue
            return j
        return len(self.bins)


ALGORITHMS: dict[str, type[OnlineAlgorithm]] = {
    "ff": FirstFit,
    "harmonic": Harmonic,
    "tf": ThinAndFat,
    "alg5": Alg5,
}


def make_algorithm(name: str, k: int) -> OnlineAlgorithm:
    try:
        cls = ALGORITHMS[name]
    except KeyError:
        raise UnsupportedParameterError(
            f"unknown algorithm {name!r}; choose from {', '.join(ALGORITHMS)}") from None
    return cls(k)


def run(name: str, instance: Instance) -> tuple[Packing, PlacementTrace]:
    alg = make_algorithm(name, instance.k).feed(instance.sizes)
    return alg.packing, alg.trace


def first_fit(instance: Instance) -> Packing:
    return FirstFit(instance.k).feed(instance.sizes).packing


def replay_ff(instance: Instance, packing: Packing) -> Packing:
    """Re-run FF and insist it reproduces ``packing`` bin for bin."""
    ff = first_fit(instance)
    if not ff.same_partition(packing):
        raise InconsistentInputError("packing is not the First Fit output for this instance")
    return ff


# -- invariant checks ---------------------------------------------------------

def check_ff_minimality(instance: Instance, trace: PlacementTrace | Iterable[int]) -> Report:
    """Each item went to the lowest-index bin that could take it."""
    placements = trace.placements if isinstance(trace, PlacementTrace) else tuple(trace)
    report = Report("ff-minimality")
    if len(placements) != instance.n:
        raise InconsistentInputError("trace length differs from instance length")
    levels: list[Fraction] = []
    counts: list[int] = []
    for i, (s, b) in enumerate(zip(instance.sizes, placements)):
        first = next((j for j in range(len(levels))
                      if counts[j] < instance.k and levels[j] <= 1 - s), len(levels))
        if b != first:
            report.fail(f"item {i} placed in bin {b}, first fitting bin is {first}")
        if b == len(levels):
            levels.append(Fraction(0))
            counts.append(0)
        elif b > len(levels):
            raise InconsistentInputError(f"item {i} placed in nonexistent bin {b}")
        levels[b] += s
        counts[b] += 1
    return report


def check_ff_structure(instance: Instance, ff_packing: Packing,
                       opt: Certificate | Packing) -> Report:
    """The two FF structure facts: one 1-bin item per OPT bin, and the level j/(j+1) rule."""
    replay_ff(instance, ff_packing)
    opt_packing = opt.packing if isinstance(opt, Certificate) else opt
    k = instance.k
    report = Report("ff-structure")
    one_bin_items = {b.items[0] for b in ff_packing.bins if b.count == 1}
    for j, b in enumerate(opt_packing.bins):
        hits = [i for i in b.items if i in one_bin_items]
        if len(hits) > 1:
            report.fail(f"OPT bin {j} holds {len(hits)} items of FF 1-bins: {hits}")
    for j in range(1, k):
        cap = Fraction(j, j + 1)
        low_exact = [x for x, b in enumerate(ff_packing.bins) if b.count == j and b.level <= cap]
        low_plus = [x for x, b in enumerate(ff_packing.bins)
                    if j <= b.count <= k - 1 and b.level <= cap]
        if len(low_exact) > 1:
            report.fail(f"{len(low_exact)} FF {j}-bins have level <= {cap}: {low_exact}")
        if len(low_plus) > 1:
            report.fail(f"{len(low_plus)} FF {j}+-bins have level <= {cap}: {low_plus}")
    return report


def reorder_permutation(instance: Instance, ff_packing: Packing) -> list[int]:
    replay_ff(instance, ff_packing)
    k = instance.k
    bin_of = ff_packing.bin_of()
    count = ff_packing.counts()
    full = [i for i in range(instance.n) if count[bin_of[i]] == k]
    middle = [i for i in range(instance.n) if 1 < count[bin_of[i]] < k]
    single = [i for i in range(instance.n) if count[bin_of[i]] == 1]
    return full + middle + single


def reorder_for_ff(instance: Instance, ff_packing: Packing) -> Instance:
    """Same items, reordered so FF emits k-bins first and 1-bins last."""
    return instance.permuted(reorder_permutation(instance, ff_packing))


def check_tf_invariants(instance: Instance) -> Report:
    """Run TF, checking the thin/fat/paired invariants after every placement."""
    report = Report("tf-invariants")
    tf = ThinAndFat(instance.k)
    for i, s in enumerate(instance.sizes):
        tf.place(s)
        for v in tf.invariant_violations():
            report.fail(f"after item {i} (step {tf.last_step}): {v}")
    report.detail["bins"] = tf.num_bins
    return report


def check_alg5_invariants(packing: Packing) -> Report:
    """5-bins reach level 1/2; at most one 2- or 3-bin has level <= 2/3."""
    report = Report("alg5-invariants")
    for j, b in enumerate(packing.bins):
        if b.count == 5 and b.level < HALF:
            report.fail(f"5-bin {j} has level {b.level} < 1/2")
    low = [j for j, b in enumerate(packing.bins) if b.count in (2, 3) and b.level <= TWO_THIRDS]
    if len(low) > 1:
        report.fail(f"{len(low)} regular bins have level <= 2/3: {low}")
    return report
