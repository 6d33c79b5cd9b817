from fractions import Fraction as F

import pytest
from hypothesis import given, settings

from cardbin import adversary as adv
from cardbin.core import OPTIMAL, UPPER_BOUND, Instance, trivial_lower_bound, validate_packing
from cardbin.oracle import best_known_upper, exact_opt
from oracles import enumerate_opt, subset_dp_opt
from strategies import instances


def test_exact_small_examples():
    assert exact_opt(Instance(3, (F(3, 5), F(1, 2), F(2, 5), F(3, 10)))).count == 2
    assert exact_opt(Instance(2, (F(1, 4),) * 4)).count == 2


def test_small_family_optimum_is_eight():
    fam = adv.gen_ff_killer_small(4, 1)
    assert best_known_upper(fam.instance).count <= 9
    cert = exact_opt(fam.instance)
    assert cert.exact and cert.count == 8


@settings(max_examples=200, deadline=None)
@given(instances(ks=(2, 3, 4, 5, 6), max_n=12))
def test_exact_matches_subset_dp(inst):
    cert = exact_opt(inst)
    assert cert.claim == OPTIMAL
    assert validate_packing(inst, cert.packing).ok
    assert cert.count == subset_dp_opt(inst.k, inst.sizes)


@settings(max_examples=100, deadline=None)
@given(instances(ks=(2, 3, 4, 5), max_n=8, top=30))
def test_exact_matches_partition_enumeration(inst):
    assert exact_opt(inst).count == enumerate_opt(inst.k, inst.sizes)


@given(instances(ks=(2, 3, 4, 5), max_n=12))
def test_ffd_is_an_upper_bound(inst):
    ffd = best_known_upper(inst)
    assert ffd.claim == UPPER_BOUND
    assert ffd.count >= exact_opt(inst).count >= trivial_lower_bound(inst)


def test_budget_exhaustion_is_reported_honestly():
    # FFD needs 5 bins here while the optimum is 4
    sizes = (8, 31, 23, 46, 17, 9, 2, 14, 24, 22, 31)
    inst = Instance(3, tuple(F(x, 60) for x in sizes))
    assert best_known_upper(inst).count == 5
    full = exact_opt(inst)
    assert full.exact and full.count == 4
    cut = exact_opt(inst, node_budget=1)
    assert cut.claim == UPPER_BOUND and cut.count == 5
    assert validate_packing(inst, cut.packing).ok


def test_empty_instance_rejected():
    with pytest.raises(ValueError):
        exact_opt(Instance(2, ()))
