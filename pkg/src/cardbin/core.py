"""Exact data model for bin packing with a cardinality bound.

Sizes are :class:`fractions.Fraction` throughout; nothing in the package ever
touches a float except for display.  Items are identified by their arrival
index, so two equal sizes are still two distinct items.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction

OPTIMAL = "optimal"
UPPER_BOUND = "feasible-upper-bound"


class CardbinError(Exception):
    """Base class for every error raised by this package."""


class ParameterError(CardbinError, ValueError):
    pass


class UnsupportedParameterError(ParameterError):
    pass


class FormatError(CardbinError, ValueError):
    pass


class MalformedPackingError(CardbinError, ValueError):
    pass


class InconsistentInputError(CardbinError):
    pass


class UnsupportedVerificationError(CardbinError):
    pass


def as_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass a Fraction, int or 'p/q' string")
    return Fraction(value)


def check_size(size) -> Fraction:
    size = as_rational(size)
    if size <= 0:
        raise ParameterError(f"item size {size} is not positive")
    if size > 1:
        raise ParameterError(f"item size {size} exceeds 1")
    return size


@dataclass(frozen=True)
class Instance:
    """Cardinality bound ``k`` and the arrival-ordered item sizes."""

    k: int
    sizes: tuple[Fraction, ...] = ()

    def __post_init__(self):
        if not isinstance(self.k, int) or self.k < 2:
            raise ParameterError(f"cardinality bound must be an integer >= 2, got {self.k!r}")
        object.__setattr__(self, "sizes", tuple(check_size(s) for s in self.sizes))

    @property
    def n(self) -> int:
        return len(self.sizes)

    def __len__(self) -> int:
        return len(self.sizes)

    @property
    def total_size(self) -> Fraction:
        return sum(self.sizes, Fraction(0))

    def permuted(self, order: Sequence[int]) -> "Instance":
        if sorted(order) != list(range(self.n)):
            raise ParameterError("order is not a permutation of the item indices")
        return Instance(self.k, tuple(self.sizes[i] for i in order))

    def prefix(self, n: int) -> "Instance":
        return Instance(self.k, self.sizes[:n])


@dataclass
class Bin:
    items: list[int] = field(default_factory=list)
    level: Fraction = Fraction(0)

    @property
    def count(self) -> int:
        return len(self.items)

    def copy(self) -> "Bin":
        return Bin(list(self.items), self.level)


@dataclass
class Packing:
    """Bins in creation order over the items of ``instance``."""

    instance: Instance
    bins: list[Bin] = field(default_factory=list)

    @classmethod
    def from_groups(cls, instance: Instance, groups: Iterable[Iterable[int]]) -> "Packing":
        bins = []
        for j, group in enumerate(groups):
            items = list(group)
            for i in items:
                if not isinstance(i, int) or not 0 <= i < instance.n:
                    raise MalformedPackingError(
                        f"bin {j}: item index {i!r} out of range for {instance.n} items")
            bins.append(Bin(items, sum((instance.sizes[i] for i in items), Fraction(0))))
        return cls(instance, bins)

    @property
    def num_bins(self) -> int:
        return len(self.bins)

    def __len__(self) -> int:
        return len(self.bins)

    def groups(self) -> list[tuple[int, ...]]:
        return [tuple(b.items) for b in self.bins]

    def bin_of(self) -> dict[int, int]:
        return {i: j for j, b in enumerate(self.bins) for i in b.items}

    def counts(self) -> list[int]:
        return [b.count for b in self.bins]

    def levels(self) -> list[Fraction]:
        return [b.level for b in self.bins]

    def add(self, j: int, item: int) -> None:
        """Put ``item`` into bin ``j``; ``j == num_bins`` opens a new bin."""
        if j == len(self.bins):
            self.bins.append(Bin())
        b = self.bins[j]
        b.items.append(item)
        b.level += self.instance.sizes[item]

    def same_partition(self, other: "Packing") -> bool:
        return self.groups() == other.groups()


@dataclass
class Report:
    """Outcome of a check: ``ok`` plus human-readable violation lines."""

    name: str
    ok: bool = True
    violations: list[str] = field(default_factory=list)
    applicable: bool = True
    detail: dict = field(default_factory=dict)

    def fail(self, message: str) -> None:
        self.ok = False
        self.violations.append(message)

    def __bool__(self) -> bool:
        return self.ok

    def summary(self) -> str:
        if not self.applicable:
            return f"{self.name}: not-applicable"
        state = "pass" if self.ok else f"FAIL ({len(self.violations)} violations)"
        return f"{self.name}: {state}"


def validate_packing(instance: Instance, packing: Packing) -> Report:
    report = Report("packing")
    seen: dict[int, int] = {}
    for j, b in enumerate(packing.bins):
        for i in b.items:
            if not isinstance(i, int) or not 0 <= i < instance.n:
                raise MalformedPackingError(
                    f"bin {j}: item index {i!r} out of range for {instance.n} items")
        if not b.items:
            report.fail(f"bin {j}: empty")
        level = sum((instance.sizes[i] for i in b.items), Fraction(0))
        if level != b.level:
            report.fail(f"bin {j}: recorded level {b.level} != item total {level}")
        if level > 1:
            report.fail(f"bin {j}: level {level} > 1")
        if b.count > instance.k:
            report.fail(f"bin {j}: count {b.count} > k={instance.k}")
        for i in b.items:
            if i in seen:
                report.fail(f"item {i} packed in bins {seen[i]} and {j}")
            else:
                seen[i] = j
    missing = [i for i in range(instance.n) if i not in seen]
    if missing:
        report.fail(f"items not packed: {missing[:10]}{' ...' if len(missing) > 10 else ''}")
    return report


def trivial_lower_bound(instance: Instance) -> int:
    """max(ceil(total size), ceil(n / k)); never exceeds OPT."""
    if instance.n == 0:
        raise ParameterError("trivial_lower_bound needs a nonempty instance")
    return max(math.ceil(instance.total_size), -(-instance.n // instance.k))


@dataclass
class Certificate:
    packing: Packing
    claim: str = UPPER_BOUND
    claimed_count: int | None = None

    def __post_init__(self):
        if self.claim not in (OPTIMAL, UPPER_BOUND):
            raise ParameterError(f"unknown certificate claim {self.claim!r}")
        if self.claimed_count is None:
            self.claimed_count = self.packing.num_bins
        if self.claimed_count != self.packing.num_bins:
            raise ParameterError(
                f"claimed {self.claimed_count} bins but packing has {self.packing.num_bins}")
        report = validate_packing(self.packing.instance, self.packing)
        if not report.ok:
            raise MalformedPackingError("certificate is infeasible: " + "; ".join(report.violations[:3]))

    @property
    def count(self) -> int:
        return self.packing.num_bins

    @property
    def instance(self) -> Instance:
        return self.packing.instance

    @property
    def exact(self) -> bool:
        return self.claim == OPTIMAL


# -- text formats -----------------------------------------------------------

_FRACTION = re.compile(r"^(\d+)(?:/(\d+))?$")


def parse_fraction(text: str) -> Fraction:
    m = _FRACTION.match(text.strip())
    if not m:
        raise FormatError(f"malformed fraction {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise FormatError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_fraction(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, line


def read_instance(text: str) -> Instance:
    lines = list(_content_lines(text))
    if not lines or lines[0][1] != "BPCC v1":
        raise FormatError("instance must start with 'BPCC v1'")
    if len(lines) < 2:
        raise FormatError("missing 'k <integer>' line")
    lineno, line = lines[1]
    parts = line.split()
    if len(parts) != 2 or parts[0] != "k" or not parts[1].isdigit():
        raise FormatError(f"line {lineno}: expected 'k <integer>', got {line!r}")
    k = int(parts[1])
    if k < 2:
        raise FormatError(f"line {lineno}: k must be >= 2")
    sizes: list[Fraction] = []
    for lineno, line in lines[2:]:
        parts = line.split()
        if parts[0] != "item" or len(parts) not in (2, 3):
            raise FormatError(f"line {lineno}: expected 'item <num>/<den> [x<count>]', got {line!r}")
        size = parse_fraction(parts[1])
        if size <= 0:
            raise FormatError(f"line {lineno}: non-positive size {parts[1]}")
        if size > 1:
            raise FormatError(f"line {lineno}: size {parts[1]} exceeds 1")
        copies = 1
        if len(parts) == 3:
            if not (parts[2].startswith("x") and parts[2][1:].isdigit()):
                raise FormatError(f"line {lineno}: malformed repeat {parts[2]!r}")
            copies = int(parts[2][1:])
        sizes.extend([size] * copies)
    return Instance(k, tuple(sizes))


def write_instance(instance: Instance) -> str:
    out = ["BPCC v1", f"k {instance.k}"]
    sizes = instance.sizes
    i = 0
    while i < len(sizes):
        j = i
        while j < len(sizes) and sizes[j] == sizes[i]:
            j += 1
        run = j - i
        out.append(f"item {format_fraction(sizes[i])}" + (f" x{run}" if run > 1 else ""))
        i = j
    return "\n".join(out) + "\n"


def read_packing(text: str, instance: Instance) -> Packing:
    """Parse a packing file; trailing ``place`` lines of a trace file are ignored."""
    lines = [(n, l) for n, l in _content_lines(text) if not l.startswith("place ")]
    if not lines or lines[0][1] != "PACKING v1":
        raise FormatError("packing must start with 'PACKING v1'")
    if len(lines) < 2:
        raise FormatError("missing 'bins <m>' line")
    lineno, line = lines[1]
    parts = line.split()
    if len(parts) != 2 or parts[0] != "bins" or not parts[1].isdigit():
        raise FormatError(f"line {lineno}: expected 'bins <m>', got {line!r}")
    m = int(parts[1])
    body = lines[2:]
    if len(body) != m:
        raise FormatError(f"header announces {m} bins, found {len(body)}")
    groups = []
    for j, (lineno, line) in enumerate(body):
        head, sep, rest = line.partition(":")
        if not sep or head.split() != ["bin", str(j)]:
            raise FormatError(f"line {lineno}: expected 'bin {j}: ...', got {line!r}")
        try:
            groups.append([int(tok) for tok in rest.split()])
        except ValueError:
            raise FormatError(f"line {lineno}: non-integer item index") from None
    return Packing.from_groups(instance, groups)


def write_packing(packing: Packing) -> str:
    out = ["PACKING v1", f"bins {packing.num_bins}"]
    for j, b in enumerate(packing.bins):
        out.append(f"bin {j}: " + " ".join(map(str, b.items)))
    return "\n".join(out) + "\n"
