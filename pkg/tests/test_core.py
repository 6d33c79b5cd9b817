from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cardbin import adversary as adv
from cardbin.core import (
    Certificate,
    FormatError,
    Instance,
    MalformedPackingError,
    Packing,
    ParameterError,
    as_rational,
    read_instance,
    read_packing,
    trivial_lower_bound,
    validate_packing,
    write_instance,
    write_packing,
)
from strategies import instances


def test_valid_packing_passes():
    inst = Instance(2, (F(1, 2),) * 3)
    assert validate_packing(inst, Packing.from_groups(inst, [[0, 1], [2]])).ok


def test_cardinality_breach_is_named():
    inst = Instance(2, (F(1, 2),) * 3)
    r = validate_packing(inst, Packing.from_groups(inst, [[0, 1, 2]]))
    assert not r.ok
    assert any("count 3 > k=2" in v for v in r.violations)


def test_size_breach_is_named():
    inst = Instance(3, (F(3, 5), F(3, 5)))
    r = validate_packing(inst, Packing.from_groups(inst, [[0, 1]]))
    assert any("level 6/5 > 1" in v for v in r.violations)


def test_missing_duplicate_and_empty():
    inst = Instance(3, (F(1, 5),) * 3)
    r = validate_packing(inst, Packing.from_groups(inst, [[0, 0], []]))
    text = " ".join(r.violations)
    assert "packed in bins 0 and 0" in text and "empty" in text and "not packed: [1, 2]" in text


def test_out_of_range_index_is_malformed():
    inst = Instance(2, (F(1, 2),))
    with pytest.raises(MalformedPackingError):
        Packing.from_groups(inst, [[0, 5]])


def test_trivial_lower_bound_examples():
    sizes = (F(2, 5),) * 5 + (F(1, 10),) * 2  # total 11/5 over 7 items
    assert trivial_lower_bound(Instance(3, sizes)) == 3
    assert trivial_lower_bound(Instance(5, (F(1, 100),) * 10)) == 2


def test_trivial_lower_bound_on_small_family():
    fam = adv.gen_ff_killer_small(4, 1)
    assert fam.instance.n == 32 and fam.instance.total_size > 7
    assert trivial_lower_bound(fam.instance) >= 8


def test_instance_rejects_bad_sizes():
    with pytest.raises(ParameterError):
        Instance(2, (F(0),))
    with pytest.raises(ParameterError):
        Instance(2, (F(3, 2),))
    with pytest.raises(ParameterError):
        Instance(1, (F(1, 2),))
    with pytest.raises(TypeError):
        as_rational(0.5)


def test_read_instance_run_length_and_normalization():
    inst = read_instance("BPCC v1\n# comment\nk 2\nitem 1/2 x3\nitem 3/6\n")
    assert inst == Instance(2, (F(1, 2),) * 4)


@pytest.mark.parametrize("text", [
    "BPCC v2\nk 2\nitem 1/2\n",
    "BPCC v1\nk two\n",
    "BPCC v1\nk 2\nitem 0/3\n",
    "BPCC v1\nk 2\nitem 5/4\n",
    "BPCC v1\nk 2\nitem 1.5\n",
    "BPCC v1\nk 2\nitem 1/0\n",
    "BPCC v1\nk 2\nitem 1/2 3\n",
])
def test_read_instance_rejects(text):
    with pytest.raises(FormatError):
        read_instance(text)


def test_batch_instance_round_trip():
    fam = adv.gen_batches(7, 42, stop=4)
    assert read_instance(write_instance(fam.instance)) == fam.instance


@given(instances(ks=(2, 3, 7, 20)))
def test_instance_round_trip(inst):
    assert read_instance(write_instance(inst)) == inst


@given(instances(), st.randoms(use_true_random=False))
def test_packing_round_trip(inst, rnd):
    groups = [[i] for i in range(inst.n)]
    rnd.shuffle(groups)
    p = Packing.from_groups(inst, groups)
    assert read_packing(write_packing(p), inst).same_partition(p)


def test_read_packing_errors():
    inst = Instance(2, (F(1, 2),) * 2)
    with pytest.raises(FormatError):
        read_packing("PACKING v1\nbins 2\nbin 0: 0 1\n", inst)
    with pytest.raises(FormatError):
        read_packing("PACKING v1\nbins 1\nbin 1: 0 1\n", inst)
    with pytest.raises(FormatError):
        read_packing("PACKING v1\nbins 1\nbin 0: a\n", inst)


def test_certificate_rejects_infeasible_and_miscounted():
    inst = Instance(2, (F(1, 2),) * 3)
    with pytest.raises(MalformedPackingError):
        Certificate(Packing.from_groups(inst, [[0, 1, 2]]))
    with pytest.raises(ParameterError):
        Certificate(Packing.from_groups(inst, [[0, 1], [2]]), claimed_count=1)
    with pytest.raises(ParameterError):
        Certificate(Packing.from_groups(inst, [[0, 1], [2]]), claim="probably")
