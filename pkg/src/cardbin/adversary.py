"""Lower-bound inputs: adaptive adversaries and static worst-case families.

Adaptive adversaries look only at the algorithm's public packing.  Static
generators return the instance together with a certificate packing and,
where one is known, the closed-form First Fit bin count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Generator

from .algorithms import OnlineAlgorithm, make_algorithm
from .core import (
    OPTIMAL,
    UPPER_BOUND,
    Certificate,
    Instance,
    Packing,
    ParameterError,
    UnsupportedParameterError,
)

F = Fraction


# -- adaptive adversaries -----------------------------------------------------

class AdaptiveAdversary:
    """Issues items one at a time after observing the algorithm's packing.

    Subclasses implement :meth:`_play` as a generator that yields sizes and
    receives the packing after each placement.  When it returns, it must have
    set ``self._groups`` to a certificate over all issued items.
    """

    name = "abstract"
    target_ratio = F(1)

    def __init__(self, k: int):
        self.k = k
        self.issued: list[Fraction] = []
        self._groups: list[list[int]] | None = None
        self._game: Generator | None = None

    def _play(self) -> Generator[Fraction, Packing, None]:
        raise NotImplementedError

    def next_item(self, view: Packing | None) -> Fraction | None:
        try:
            if self._game is None:
                self._game = self._play()
                size = next(self._game)
            else:
                size = self._game.send(view)
        except StopIteration:
            return None
        self.issued.append(size)
        return size

    def certificate(self) -> Certificate:
        if self._groups is None:
            raise ParameterError("the game has not finished")
        inst = Instance(self.k, tuple(self.issued))
        return Certificate(Packing.from_groups(inst, self._groups), OPTIMAL)

    @staticmethod
    def _bins_holding(view: Packing, items) -> set[int]:
        where = view.bin_of()
        return {where[i] for i in items}


class AbsoluteK4Plus(AdaptiveAdversary):
    """Forces ratio 2 on any online algorithm for k >= 4."""

    name = "abs-k4plus"
    target_ratio = F(2)

    def __init__(self, k: int = 4, eps: Fraction | None = None):
        if k < 4:
            raise ParameterError(f"abs-k4plus needs k >= 4, got {k}")
        eps = default_eps_k4plus(k) if eps is None else F(eps)
        if not 0 < eps < F(1, 3 * k):
            raise ParameterError(f"eps must lie in (0, 1/(3k)) = (0, 1/{3 * k}), got {eps}")
        # the two-bin certificate of the 1/2+eps branch needs this much room
        if (2 + -(-k // 2)) * eps > F(1, 6):
            raise ParameterError(f"eps = {eps} too large for a feasible certificate at k = {k}; "
                                 f"need (2 + ceil(k/2)) * eps <= 1/6")
        super().__init__(k)
        self.eps = eps

    def _play(self):
        k, eps = self.k, self.eps
        tiny = list(range(k))
        for _ in tiny:
            view = yield eps
        if len(view.bins) >= 2:
            self._groups = [tiny]
            return
        view = yield F(1, 3) + eps
        view = yield F(1, 3) + eps
        thirds = [k, k + 1]
        tiny_bin = view.bin_of()[0]
        if len(self._bins_holding(view, thirds) - {tiny_bin}) == 2:
            yield F(2, 3)
            self._groups = [[k + 2] + tiny[:k - 1], [tiny[k - 1]] + thirds]
            return
        yield F(1, 2) + eps
        yield F(1, 2) + eps
        half = k // 2
        self._groups = [[k + 2, k] + tiny[:half], [k + 3, k + 1] + tiny[half:]]


class AbsoluteK3(AdaptiveAdversary):
    """Forces ratio 7/4 on any online algorithm for k = 3."""

    name = "abs-k3"
    target_ratio = F(7, 4)

    def __init__(self, k: int = 3, eps: Fraction | None = None):
        if k != 3:
            raise ParameterError(f"abs-k3 is defined for k = 3 only, got {k}")
        eps = F(1, 100) if eps is None else F(eps)
        if not 0 < eps < F(1, 24):
            raise ParameterError(f"eps must lie in (0, 1/24), got {eps}")
        super().__init__(3)
        self.eps = eps

    def _play(self):
        eps = self.eps
        for _ in range(3):
            view = yield eps
        if len(view.bins) >= 2:
            self._groups = [[0, 1, 2]]
            return
        yield F(1, 3) + eps
        view = yield F(1, 3) + eps
        if len(self._bins_holding(view, [3, 4])) == 2:
            yield F(2, 3)
            self._groups = [[5, 0, 1], [3, 4, 2]]
            return
        yield F(1, 3) + 3 * eps
        view = yield F(1, 3) + 3 * eps
        if len(self._bins_holding(view, [5, 6])) == 2:
            yield F(2, 3) - 2 * eps
            yield F(2, 3) - 2 * eps
            self._groups = [[7, 3, 0], [8, 4, 1], [5, 6, 2]]
            return
        for _ in range(4):
            yield F(2, 3) - 4 * eps
        self._groups = [[7, 3, 0], [8, 4, 1], [9, 5, 2], [10, 6]]


def default_eps_k4plus(k: int) -> Fraction:
    eps = F(1, 100)
    if (2 + -(-k // 2)) * eps > F(1, 6) or eps >= F(1, 3 * k):
        eps = F(1, 6 * (k + 4))
    return eps


ADVERSARIES = {"abs-k3": AbsoluteK3, "abs-k4plus": AbsoluteK4Plus}


@dataclass
class DuelResult:
    adversary: str
    algorithm: str
    k: int
    packing: Packing
    certificate: Certificate
    ratio: Fraction
    log: list[tuple[int, Fraction, int]] = field(default_factory=list)

    @property
    def alg_bins(self) -> int:
        return self.packing.num_bins

    @property
    def opt_bins(self) -> int:
        return self.certificate.count


def duel(adversary: AdaptiveAdversary, algorithm: OnlineAlgorithm,
         on_place: Callable[[int, Fraction, int], None] | None = None,
         max_items: int = 10_000) -> DuelResult:
    if adversary.k != algorithm.k:
        raise ParameterError(f"adversary k={adversary.k} but algorithm k={algorithm.k}")
    log = []
    view = None
    while True:
        size = adversary.next_item(view)
        if size is None:
            break
        if len(log) >= max_items:
            raise ParameterError("adversary did not stop")
        j = algorithm.place(size)
        log.append((len(log), size, j))
        if on_place is not None:
            on_place(len(log) - 1, size, j)
        view = algorithm.packing
    cert = adversary.certificate()
    packing = algorithm.packing
    return DuelResult(adversary.name, algorithm.name, algorithm.k, packing, cert,
                      F(packing.num_bins, cert.count), log)


# -- batch instances ----------------------------------------------------------

BATCH_KS = (5, 7, 8, 9, 10, 11)


def _check_batch_k(k: int) -> None:
    if k in (6, 12):
        raise UnsupportedParameterError(
            f"batch construction gives no improved bound for k = {k}")
    if k not in BATCH_KS:
        raise UnsupportedParameterError(f"batch construction supports k in {BATCH_KS}, got {k}")


def lb_value(k: int) -> Fraction:
    """Lower bound on the asymptotic competitive ratio from the batch inputs."""
    _check_batch_k(k)
    if k == 5:
        return F(3, 2)
    if k in (7, 8):
        return F(k * k + 24 * k, k * k + 10 * k + 24)
    if k == 9:
        return F(189, 124)
    return F(k * k + 84 * k, k * k + 48 * k + 36)


def batch_phi(k: int) -> tuple[Fraction, Fraction]:
    """(phi_k, phi'_k): OPT(L1)/N and OPT(L2)/N."""
    _check_batch_k(k)
    if k == 5:
        return F(1, 10), F(3, 10)
    return F(k - 6, 6 * k), F(1, 6)


def batch_sizes(delta: Fraction) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    return F(1, 42) - 3 * delta, F(1, 7) + delta, F(1, 3) + delta, F(1, 2) + delta


@dataclass
class GeneratedFamily:
    name: str
    params: dict
    instance: Instance
    certificate: Certificate
    predicted_ff: int | None = None
    # item index boundaries between batches, for the batch family
    batch_ends: tuple[int, ...] = ()

    @property
    def predicted_ratio(self) -> Fraction | None:
        if self.predicted_ff is None:
            return None
        return F(self.predicted_ff, self.certificate.count)


def _chunks(seq, size):
    return [seq[i:i + size] for i in range(0, len(seq), size)]


def gen_batches(k: int, N: int, delta: Fraction = F(1, 4000), stop: int = 4) -> GeneratedFamily:
    _check_batch_k(k)
    delta = F(delta)
    if N <= 0 or N % (6 * k):
        raise ParameterError(f"N must be a positive multiple of 6k = {6 * k}, got {N}")
    if not 0 < delta < F(1, 2000):
        raise ParameterError(f"delta must lie in (0, 1/2000), got {delta}")
    if stop not in (1, 2, 3, 4):
        raise ParameterError(f"stop must be 1..4, got {stop}")
    phi, _ = batch_phi(k)
    n1 = k * phi * N
    assert n1.denominator == 1
    counts = [int(n1), N, N, N][:stop]
    sizes: list[Fraction] = []
    idx = []
    for c, s in zip(counts, batch_sizes(delta)):
        idx.append(list(range(len(sizes), len(sizes) + c)))
        sizes.extend([s] * c)
    inst = Instance(k, tuple(sizes))
    b1 = idx[0]
    if stop == 1:
        groups = _chunks(b1, k)
    elif stop == 2:
        if k == 5:
            groups = _chunks(b1 + idx[1], 5)
        else:
            groups = [six + ones for six, ones in zip(_chunks(idx[1], 6), _chunks(b1, k - 6))]
    elif stop == 3:
        per = 1 if k == 5 else 2
        thirds, sevenths = _chunks(idx[2], 2), _chunks(idx[1], 2)
        ones = _chunks(b1, per)
        groups = [t + s + (ones[j] if j < len(ones) else []) for j, (t, s) in
                  enumerate(zip(thirds, sevenths))]
    else:
        groups = [[idx[3][j], idx[2][j], idx[1][j]] + ([b1[j]] if j < len(b1) else [])
                  for j in range(N)]
    cert = Certificate(Packing.from_groups(inst, groups), OPTIMAL)
    ends = tuple(sum(counts[:i + 1]) for i in range(stop))
    return GeneratedFamily("batch", {"k": k, "N": N, "delta": delta, "stop": stop},
                           inst, cert, None, ends)


def batch_opt_counts(k: int, N: int) -> list[int]:
    phi, phi2 = batch_phi(k)
    return [int(phi * N), int(phi2 * N), N // 2, N]


# -- First Fit worst-case families --------------------------------------------

def gen_ff_killer_small(k: int, ell: int, eps: Fraction | None = None) -> GeneratedFamily:
    """Smallest, medium, largest items; FF uses 5kl - 4l bins against 2kl."""
    if k not in (2, 3, 4):
        raise ParameterError(f"small family supports k in 2..4, got {k}")
    if not isinstance(ell, int) or ell < 1:
        raise ParameterError(f"ell must be a positive integer, got {ell!r}")
    eps = F(1, 18 * k) if eps is None else F(eps)
    if not 0 < eps < F(1, 9 * k):
        raise ParameterError(f"eps must lie in (0, 1/(9k)) = (0, 1/{9 * k}), got {eps}")
    n_small = 2 * k * (k - 2) * ell
    n_big = 2 * k * ell
    sizes = [eps] * n_small + [F(1, 2) - k * eps] * n_big + [F(1, 2) + eps] * n_big
    inst = Instance(k, tuple(sizes))
    groups = []
    for j in range(n_big):
        smalls = list(range(j * (k - 2), (j + 1) * (k - 2)))
        groups.append([n_small + n_big + j, n_small + j] + smalls)
    cert = Certificate(Packing.from_groups(inst, groups), OPTIMAL)
    return GeneratedFamily("ff-small", {"k": k, "ell": ell, "eps": eps}, inst, cert,
                           5 * k * ell - 4 * ell)


def _default_eps_delta(ell, eps, delta):
    eps = F(1, 121) if eps is None else F(eps)
    delta = eps / 3 ** (ell + 5) if delta is None else F(delta)
    if not 0 < eps < F(1, 120):
        raise ParameterError(f"eps must lie in (0, 1/120), got {eps}")
    if not 0 < delta < eps / 3 ** (ell + 4):
        raise ParameterError("delta must lie in (0, eps / 3^(ell+4))")
    return eps, delta


def gen_ff_killer_mid(k: int, ell: int, eps: Fraction | None = None,
                      delta: Fraction | None = None) -> GeneratedFamily:
    """FF uses (8k-8)l/k - 1 bins against at most 3l, for 5 <= k <= 10."""
    if not 5 <= k <= 10:
        raise ParameterError(f"mid family supports k in 5..10, got {k}")
    if not isinstance(ell, int) or ell < 1 or ell % k:
        raise ParameterError(f"ell must be a positive multiple of k = {k}, got {ell!r}")
    eps, delta = _default_eps_delta(ell, eps, delta)
    quarter, half = F(1, 4), F(1, 2)
    sizes: list[Fraction] = []

    def emit(s):
        sizes.append(s)
        return len(sizes) - 1

    deltas = [emit(delta) for _ in range((3 * k - 8) * ell)]
    big_of = {}    # p -> index of 1/4 + eps/3^p
    small_of = {}  # p -> index of 1/4 - eps/3^p - 10 delta
    low30 = []
    for p in range(1, ell):
        big_of[p] = emit(quarter + eps / 3 ** p)
        small_of[p + 1] = emit(quarter - 10 * delta - eps / 3 ** (p + 1))
        low30.append(emit(quarter - 30 * delta))
    halves_low, quarters_high = [], []
    for _ in range(ell):
        halves_low.append(emit(half - 10 * delta))
        quarters_high.append(emit(quarter + 20 * delta))
    tops = [emit(half + delta) for _ in range(3 * ell)]
    inst = Instance(k, tuple(sizes))

    it = iter(deltas)
    take = lambda m: [next(it) for _ in range(m)]
    groups = []
    for j in range(ell):
        groups.append([tops[j], halves_low[j]] + take(k - 2))
    for j in range(ell):
        extra = [low30[j]] if j < len(low30) else []
        groups.append([tops[ell + j], quarters_high[j]] + extra + take(k - 3))
    for p in range(1, ell + 1):
        pair = [x for x in (big_of.get(p), small_of.get(p)) if x is not None]
        groups.append([tops[2 * ell + p - 1]] + pair + take(k - 3))
    cert = Certificate(Packing.from_groups(inst, groups), UPPER_BOUND)
    return GeneratedFamily("ff-mid", {"k": k, "ell": ell, "eps": eps, "delta": delta}, inst, cert,
                           (8 * k - 8) * ell // k - 1)


def gen_ff_killer_large(k: int, ell: int, eps: Fraction | None = None,
                        delta: Fraction | None = None) -> GeneratedFamily:
    """Classic FF lower-bound input padded with tiny items, for k >= 10."""
    if k < 10:
        raise ParameterError(f"large family needs k >= 10, got {k}")
    if not isinstance(ell, int) or ell < 2 or (ell - 1) % k or (ell - 1) % (k - 3):
        raise ParameterError(f"ell - 1 must be a positive multiple of k = {k} and of k - 3, "
                             f"got ell = {ell!r}")
    eps, delta = _default_eps_delta(ell, eps, delta)
    sixth, third, half = F(1, 6), F(1, 3), F(1, 2)
    sizes: list[Fraction] = []

    def emit(s):
        sizes.append(s)
        return len(sizes) - 1

    tiny = [emit(delta / k) for _ in range(10 * (k - 3) * (ell - 1))]

    def a_size(i, p):
        if i <= 3:
            return sixth + eps / 3 ** p - delta
        if i <= 5:
            return sixth + eps / 3 ** p - 2 * delta
        if i <= 7:
            return sixth - eps / 3 ** (p + 1) - delta
        return sixth - eps / 3 ** (p + 1) - 2 * delta

    def b_size(i, p):
        if i <= 5:
            return third + eps / 3 ** (p - 1) - i * delta
        return third - eps / 3 ** p - (i - 5) * delta

    a, b, c = {}, {}, {}
    for p in range(1, ell + 1):
        for i in (1, 2, 3, 6, 7, 4, 5, 8, 9, 10):
            a[i, p] = emit(a_size(i, p))
    for p in range(1, ell + 1):
        for j in range(1, 6):
            b[j, p] = emit(b_size(j, p))
            b[j + 5, p] = emit(b_size(j + 5, p))
    for i in range(1, 10 * ell + 1):
        c[i] = emit(half + delta / 2)
    inst = Instance(k, tuple(sizes))

    it = iter(tiny)
    take = lambda m: [next(it) for _ in range(m)]
    groups = []
    for p in range(1, ell + 1):
        for i in range(1, 6):
            groups.append([a[i, p], b[5 + i, p], c[5 * (p - 1) + i]] + take(k - 3))
    for p in range(3, ell + 1):
        for i in range(1, 6):
            groups.append([a[5 + i, p - 2], b[i, p], c[5 * (p + ell - 3) + i]] + take(k - 3))
    for i in range(1, 6):
        groups.append([c[10 * (ell - 1) + i], b[i, 1]])
    for i in range(1, 6):
        groups.append([c[10 * (ell - 1) + 5 + i], b[i, 2]])
    groups.append([a[i, ell] for i in range(6, 11)])
    groups.append([a[i, ell - 1] for i in range(6, 11)])
    cert = Certificate(Packing.from_groups(inst, groups), UPPER_BOUND)
    predicted = 10 * (k - 3) * (ell - 1) // k + 17 * ell
    return GeneratedFamily("ff-large", {"k": k, "ell": ell, "eps": eps, "delta": delta}, inst,
                           cert, predicted)


def smallest_ell(family: str, k: int, at_least: int = 1) -> int:
    """Smallest valid ell >= at_least for the given family and k."""
    ell = max(at_least, 1)
    if family == "ff-small":
        return ell
    if family == "ff-mid":
        return -(-ell // k) * k
    if family == "ff-large":
        step = math.lcm(k, k - 3)
        m = max(1, -(-(ell - 1) // step))
        return m * step + 1
    raise ParameterError(f"unknown family {family!r}")


def ff_family_for(k: int) -> str:
    if k <= 4:
        return "ff-small"
    if k <= 9:
        return "ff-mid"
    return "ff-large"


def gen_ff_family(k: int, ell: int | None = None, eps=None, delta=None) -> GeneratedFamily:
    family = ff_family_for(k)
    ell = smallest_ell(family, k, 1 if ell is None else ell)
    if family == "ff-small":
        return gen_ff_killer_small(k, ell, eps)
    if family == "ff-mid":
        return gen_ff_killer_mid(k, ell, eps, delta)
    return gen_ff_killer_large(k, ell, eps, delta)


@dataclass
class BatchDuelResult:
    algorithm: str
    k: int
    N: int
    bins_after: list[int]
    opt: list[int]

    @property
    def ratios(self) -> list[Fraction]:
        return [F(a, o) for a, o in zip(self.bins_after, self.opt)]

    @property
    def ratio(self) -> Fraction:
        return max(self.ratios)


def batch_duel(alg_name: str, k: int, N: int, delta: Fraction = F(1, 4000)) -> BatchDuelResult:
    """Feed all four batches; the algorithm's bin count after each batch is A(L_i).

    The reported ratio is the best over stop points, a valid per-algorithm
    lower bound that can fall short of :func:`lb_value` for clever algorithms.
    """
    fam = gen_batches(k, N, delta, 4)
    alg = make_algorithm(alg_name, k)
    after = []
    start = 0
    for end in fam.batch_ends:
        alg.feed(fam.instance.sizes[start:end])
        after.append(alg.num_bins)
        start = end
    return BatchDuelResult(alg_name, k, N, after, batch_opt_counts(k, N))
