"""Amortized weight functions for First Fit, turned into per-instance checks.

For a fixed role assignment the total weight of the input is the same
whether summed over FF's bins or over a certificate's bins.  The verifiers
check the two sides separately: every certificate bin weighs at most
:func:`opt_bin_bound`, and the FF total is at least ``FF - ff_total_slack``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .algorithms import replay_ff
from .core import (
    Certificate,
    InconsistentInputError,
    Instance,
    Packing,
    ParameterError,
    Report,
    UnsupportedVerificationError,
)

F = Fraction
HALF, THIRD, QUARTER, FIFTH, SIXTH = F(1, 2), F(1, 3), F(1, 4), F(1, 5), F(1, 6)
THREE_TENTHS = F(3, 10)


class Role(str, Enum):
    ALPHA = "alpha"
    ADDITIONAL = "additional"
    GAMMA1 = "gamma1"
    GAMMA2 = "gamma2"
    PHI = "phi"


def regime(k: int) -> str:
    if k < 2:
        raise ParameterError(f"k must be >= 2, got {k}")
    if k <= 5:
        return f"k={k}"
    if k <= 8:
        return "k=6..8"
    if k == 9:
        return "k=9"
    if k <= 19:
        return "k=10..19"
    return "k>=20"


def _uses_gamma(k: int) -> bool:
    return k >= 9


# -- bonus functions ------------------------------------------------------------

def bonus_68(k: int, a: Fraction) -> Fraction:
    slope = F(2 * (2 * k - 11), 3 * k)
    if a <= SIXTH:
        return F(0)
    if a <= QUARTER:
        return slope * a + F(7 - k, 3 * k)
    if a <= THIRD:
        return slope * a + F(10 - k, 3 * k)
    return F(2, k)


def bonus_9(a: Fraction) -> Fraction:
    if a <= SIXTH:
        return F(0)
    if a <= FIFTH:
        return F(32, 27) * a - F(5, 27)
    if a <= QUARTER:
        return -F(28, 27) * a + F(7, 27)
    if a <= THREE_TENTHS:
        return -F(28, 27) * a + F(10, 27)
    if a <= THIRD:
        return F(32, 27) * a - F(8, 27)
    return F(1, 9)


def bonus_10(k: int, a: Fraction) -> Fraction:
    if a <= SIXTH:
        return F(0)
    if k >= 20:
        return F(3, 5) * a - F(1, 10) if a <= THIRD else F(1, 10)
    steep = F(8, 5) - F(20, k)
    if a <= FIFTH:
        return F(3, 5) * a - F(1, 10)
    if a <= QUARTER:
        return steep * a - F(3, 10) + F(4, k)
    if a <= THREE_TENTHS:
        return steep * a - F(2, 5) + F(6, k)
    if a <= THIRD:
        return F(3, 5) * a - F(1, 10)
    return F(1, 10)


def bonus(k: int, a) -> Fraction:
    """Bonus part of the weight of a non-alpha item of size ``a <= 1/2``."""
    a = F(a)
    if not 0 < a <= HALF:
        raise ParameterError(f"bonus is defined on (0, 1/2], got {a}")
    if 6 <= k <= 8:
        return bonus_68(k, a)
    if k == 9:
        return bonus_9(a)
    if k >= 10:
        return bonus_10(k, a)
    raise ParameterError(f"no bonus function for k = {k}")


def _k5_weight(a: Fraction) -> Fraction:
    if a <= SIXTH:
        return F(1, 5)
    if a <= QUARTER:
        return F(4, 15)
    if a <= THIRD:
        return F(7, 15)
    if a <= HALF:
        return F(8, 15)
    return F(1)


def _k4_weight(a: Fraction) -> Fraction:
    if a > HALF:
        return F(1)
    if a > QUARTER:
        return HALF
    return QUARTER


def item_weight(k: int, role: Role | str, size) -> Fraction:
    role = Role(role)
    a = F(size)
    if not 0 < a <= 1:
        raise ParameterError(f"size {a} outside (0, 1]")
    if k == 3:
        raise UnsupportedVerificationError(
            "k = 3 weights depend on FF bin counts; use verify_k3_case1")
    if k == 4:
        return _k4_weight(a)
    if role is Role.ALPHA:
        return F(1, k)
    if k <= 8:
        if role is not Role.ADDITIONAL:
            raise ParameterError(f"role {role.value} is not used for k = {k}")
        if k == 2:
            return F(1)
        if k == 5:
            return _k5_weight(a)
        if a > HALF:
            return F(1)
        return F(1, k) + F(2 * (2 * k - 11), 3 * k) * a + bonus_68(k, a)
    if role is Role.ADDITIONAL:
        raise ParameterError(f"role additional is split into gamma/phi for k = {k}")
    if role is Role.GAMMA1:
        return F(1)
    if role is Role.GAMMA2:
        if k == 9:
            return F(16, 27)
        return F(7, 10) - F(1, k) if k <= 19 else F(13, 20)
    # phi
    if a > HALF:
        return F(1)
    if k == 9:
        return F(32, 27) * a + bonus_9(a)
    return F(6, 5) * a + bonus_10(k, a)


def opt_bin_bound(k: int) -> Fraction:
    """Upper bound on the weight of any certificate bin."""
    if k == 2:
        return F(3, 2)
    if k == 3:
        return F(11, 6)
    if k == 4:
        return F(2)
    if k == 5:
        return F(32, 15)
    if k <= 8:
        return F(8 * (k - 1), 3 * k)
    if k == 9:
        return F(64, 27)
    return F(27 * k - 30, 10 * k)


def ff_total_slack(k: int) -> Fraction:
    """The total weight is at least (FF bins) minus this."""
    if k <= 3:
        return F(0)
    if k == 4:
        return F(3, 4)
    if k == 5:
        return F(4)
    if k <= 8:
        return F(8)
    if k == 9:
        return F(7)
    return F(5)


def asymptotic_ff_ratio(k: int) -> Fraction:
    if k <= 4:
        return F(5, 2) - F(2, k)
    if k <= 9:
        return F(8, 3) - F(8, 3 * k)
    return F(27, 10) - F(3, k)


# -- roles ------------------------------------------------------------------------

def _packing_of(x: Certificate | Packing) -> Packing:
    return x.packing if isinstance(x, Certificate) else x


def assign_roles(k: int, ff_packing: Packing, opt: Certificate | Packing) -> list[Role]:
    opt = _packing_of(opt)
    if ff_packing.instance != opt.instance:
        raise InconsistentInputError("FF packing and certificate cover different instances")
    n = ff_packing.instance.n
    if ff_packing.instance.k != k:
        raise InconsistentInputError(f"instance has k = {ff_packing.instance.k}, asked for k = {k}")
    roles = [Role.ADDITIONAL] * n
    for b in ff_packing.bins:
        if b.count == k:
            for i in b.items:
                roles[i] = Role.ALPHA
    if not _uses_gamma(k):
        return roles
    sizes = ff_packing.instance.sizes
    for b in opt.bins:
        extra = sorted((i for i in b.items if roles[i] is not Role.ALPHA),
                       key=lambda i: (-sizes[i], i))
        if not extra:
            continue
        if len(extra) <= 2:
            roles[extra[0]] = Role.GAMMA1
            for i in extra[1:]:
                roles[i] = Role.GAMMA2
        else:
            for i in extra:
                roles[i] = Role.PHI
    return roles


def item_weights(k: int, instance: Instance, roles: list[Role]) -> list[Fraction]:
    if len(roles) != instance.n:
        raise InconsistentInputError("one role per item is required")
    return [item_weight(k, r, s) for r, s in zip(roles, instance.sizes)]


def verify_opt_bins(k: int, opt: Certificate | Packing, roles: list[Role]) -> Report:
    if k == 3:
        raise UnsupportedVerificationError(
            "k = 3 is verified only in Case 1; use verify_k3_case1")
    packing = _packing_of(opt)
    weights = item_weights(k, packing.instance, roles)
    bound = opt_bin_bound(k)
    report = Report("opt-bin-weights")
    heaviest = F(0)
    for j, b in enumerate(packing.bins):
        w = sum((weights[i] for i in b.items), F(0))
        heaviest = max(heaviest, w)
        if w > bound:
            report.fail(f"certificate bin {j} weighs {w} > {bound}")
    report.detail.update(bound=bound, heaviest=heaviest)
    return report


def verify_ff_total(k: int, ff_packing: Packing, roles: list[Role]) -> Report:
    if k == 3:
        raise UnsupportedVerificationError(
            "k = 3 is verified only in Case 1; use verify_k3_case1")
    instance = ff_packing.instance
    replay_ff(instance, ff_packing)
    total = sum(item_weights(k, instance, roles), F(0))
    need = ff_packing.num_bins - ff_total_slack(k)
    report = Report("ff-total-weight")
    if total < need:
        report.fail(f"total weight {total} < FF bins {ff_packing.num_bins} - "
                    f"{ff_total_slack(k)}")
    report.detail.update(total=total, ff_bins=ff_packing.num_bins)
    return report


def verify_k3_case1(ff_packing: Packing, opt: Certificate | Packing) -> Report:
    """Weight 1/i for an item of an FF i-bin; applies when #1-bins equals #OPT bins."""
    opt = _packing_of(opt)
    instance = ff_packing.instance
    if instance.k != 3:
        raise ParameterError("verify_k3_case1 needs k = 3")
    replay_ff(instance, ff_packing)
    report = Report("k3-case1")
    ones = sum(1 for b in ff_packing.bins if b.count == 1)
    if ones != opt.num_bins:
        report.applicable = False
        return report
    where = ff_packing.bin_of()
    counts = ff_packing.counts()
    heaviest = F(0)
    for j, b in enumerate(opt.bins):
        w = sum((F(1, counts[where[i]]) for i in b.items), F(0))
        heaviest = max(heaviest, w)
        if w > F(11, 6):
            report.fail(f"certificate bin {j} weighs {w} > 11/6")
    report.detail.update(bound=F(11, 6), heaviest=heaviest)
    return report


def verify_weights(k: int, ff_packing: Packing, opt: Certificate | Packing) -> list[Report]:
    """Both sides of the weight argument for one instance (k = 3: Case 1 only)."""
    if k == 3:
        return [verify_k3_case1(ff_packing, opt)]
    roles = assign_roles(k, ff_packing, opt)
    return [verify_opt_bins(k, opt, roles), verify_ff_total(k, ff_packing, roles)]


# -- finite-scale table -----------------------------------------------------------

@dataclass
class TableRow:
    k: int
    family: str
    ell: int
    ff_bins: int
    cert_bins: int
    cert_exact: bool
    asymptote: Fraction

    @property
    def ratio(self) -> Fraction:
        return F(self.ff_bins, self.cert_bins)


def ratio_table(k_from: int, k_to: int, ell: int | None = None) -> list[TableRow]:
    """Run FF on the worst-case family for each k and compare with the asymptote.

    ``ell`` is rounded up to the nearest value the family accepts; by default
    the smallest valid value is used.
    """
    from .adversary import gen_ff_family
    from .algorithms import first_fit

    rows = []
    for k in range(k_from, k_to + 1):
        fam = gen_ff_family(k, ell)
        ff = first_fit(fam.instance)
        rows.append(TableRow(k, fam.name, fam.params["ell"], ff.num_bins, fam.certificate.count,
                             fam.certificate.exact, asymptotic_ff_ratio(k)))
    return rows


def format_table(rows: list[TableRow]) -> str:
    head = f"{'k':>3}  {'family':<8} {'ell':>5} {'FF':>6} {'cert':>6}  {'ratio':<22} {'asymptote':<20}"
    out = [head]
    for r in rows:
        rel = "=" if r.cert_exact else ">="
        ratio = f"{rel}{r.ratio.numerator}/{r.ratio.denominator} ({float(r.ratio):.6f})"
        asym = f"{r.asymptote.numerator}/{r.asymptote.denominator} ({float(r.asymptote):.6f})"
        out.append(f"{r.k:>3}  {r.family:<8} {r.ell:>5} {r.ff_bins:>6} {r.cert_bins:>6}  "
                   f"{ratio:<22} {asym:<20}")
    return "\n".join(out)


# -- random sweeps ----------------------------------------------------------------

GRID = 60


def random_instance(rng: random.Random, k: int, max_n: int = 12, grid: int = GRID) -> Instance:
    """Between 1 and ``max_n`` sizes drawn uniformly from {1/grid, ..., grid/grid}."""
    n = rng.randint(1, max_n)
    return Instance(k, tuple(F(rng.randint(1, grid), grid) for _ in range(n)))


def random_instances(k: int, count: int, seed: int, max_n: int = 12,
                     grid: int = GRID) -> list[Instance]:
    rng = random.Random(f"{seed}:{k}")
    return [random_instance(rng, k, max_n, grid) for _ in range(count)]
