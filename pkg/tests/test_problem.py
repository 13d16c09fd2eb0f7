import json

import numpy as np
import pytest

from ssrsearch.errors import CapacityError, ValidationError
from ssrsearch.problem import (Schedule, build_layout, count_solutions,
                               count_solutions_naive, decode_basis,
                               encode_schedule, enumerate_feasible_paths,
                               is_feasible_path, job_widths, load_instance,
                               marked_mask, new_instance, satisfies_resources,
                               space_sizes)


def test_new_instance_paper_experiment():
    inst = new_instance(2, 2, 4, [0, 0])
    assert (inst.machines, inst.jobs, inst.window) == (2, 2, 4)
    assert inst.offsets == (0, 0)


def test_new_instance_singleton_and_offset_normalization():
    assert new_instance(1, 1, 4, [0]).offsets == (0,)
    assert new_instance(2, 1, 4, [3, 5]).offsets == (0, 2)


@pytest.mark.parametrize("bad", [dict(machines=2, jobs=2, window=3),
                                 dict(machines=2, jobs=2, window=0),
                                 dict(machines=0, jobs=2, window=4),
                                 dict(machines=2, jobs=0, window=4)])
def test_new_instance_validation(bad):
    with pytest.raises(ValidationError):
        new_instance(**bad)


def test_new_instance_offset_validation():
    with pytest.raises(ValidationError):
        new_instance(2, 2, 4, [0])
    with pytest.raises(ValidationError):
        new_instance(2, 2, 4, [0, -1])


def test_load_instance_roundtrip(tmp_path):
    path = tmp_path / "inst.json"
    path.write_text(json.dumps({"machines": 2, "jobs": 2, "window": 4, "offsets": [0, 0]}))
    inst = load_instance(str(path))
    assert inst == new_instance(2, 2, 4, [0, 0])


def test_load_instance_rejects_unknown_and_missing_keys(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"machines": 2, "jobs": 2, "window": 4,
                                "offsets": [0, 0], "extra": 1}))
    with pytest.raises(ValidationError):
        load_instance(str(path))
    path.write_text(json.dumps({"machines": 2, "jobs": 2, "window": 4}))
    with pytest.raises(ValidationError):
        load_instance(str(path))


def test_job_widths_match_date_counts():
    # C=4, O=0: 4 dates for job 1, 7 for job 2 -> widths 2 and 3
    assert job_widths(new_instance(2, 2, 4)) == (2, 3)
    assert job_widths(new_instance(2, 6, 4)) == (2, 3, 4, 4, 4, 5)
    # an offset of two widens both windows
    assert job_widths(new_instance(2, 2, 4, [0, 2])) == (3, 4)


def test_layout_full_mode_counts():
    lay = build_layout(new_instance(2, 2, 4), "full")
    assert [tuple(r.width for r in regs) for regs in lay.data_regs] == [(2, 3), (2, 3)]
    assert len(lay.flag_wires) == 4      # 2 I (K-1)
    assert len(lay.overlap_wires) == 2   # I(I-1)K/2
    assert lay.resource_wire is not None
    assert lay.compare_spare is None
    assert lay.n_wires == 17
    # all spans pairwise disjoint and covering 0..16
    wires = [w for regs in lay.data_regs for r in regs for w in r.wires]
    wires += list(lay.flag_wires) + list(lay.overlap_wires) + [lay.resource_wire]
    assert sorted(wires) == list(range(17))


def test_layout_reduced_mode_counts():
    lay = build_layout(new_instance(2, 2, 4), "reduced")
    assert lay.n_data_wires == 10
    assert len(lay.coin_wires) == 2
    assert len(lay.flag_wires) == 0
    assert len(lay.overlap_wires) == 2
    assert lay.n_wires == 15


def test_layout_single_register():
    lay = build_layout(new_instance(1, 1, 4), "full")
    assert lay.data_regs[0][0].width == 2
    assert lay.overlap_wires == ()


def test_layout_fresh_coins():
    lay = build_layout(new_instance(2, 3, 4), "reduced", coin_style="fresh")
    assert len(lay.coin_regs) == 2
    assert len(lay.coin_wires) == 4


def test_layout_capacity_error():
    with pytest.raises(CapacityError):
        build_layout(new_instance(4, 3, 4), "full")


def test_decode_all_zero_is_earliest_dates():
    lay = build_layout(new_instance(2, 2, 4), "reduced", oracle_wires=False)
    assert decode_basis(lay, 0).dates == ((0, 0), (0, 0))


def test_decode_worked_pattern():
    # data bits q1..q5 = 01|010 (most significant first) encode dates (1, 2)
    inst = new_instance(1, 2, 4)
    lay = build_layout(inst, "reduced", oracle_wires=False)
    idx = encode_schedule(lay, Schedule(((1, 2),)))
    assert decode_basis(lay, idx).dates == ((1, 2),)
    assert idx == 0b01001  # value 1 on wires 0-1, value 2 on wires 2-4


def test_encode_decode_roundtrip_all_patterns():
    inst = new_instance(2, 2, 4)
    lay = build_layout(inst, "reduced", oracle_wires=False)
    for idx in range(1 << 10):
        assert encode_schedule(lay, decode_basis(lay, idx)) == idx


def test_feasible_path_examples():
    inst = new_instance(2, 2, 4)
    assert is_feasible_path(inst, 0, (0, 0))
    assert not is_feasible_path(inst, 0, (0, 4))  # increment equals the window
    off = new_instance(2, 2, 4, [0, 2])
    assert not is_feasible_path(off, 1, (1, 2))   # before machine 2's window
    assert is_feasible_path(off, 1, (2, 2))


def test_resource_examples():
    inst = new_instance(2, 2, 4)
    assert satisfies_resources(inst, Schedule(((0, 1), (1, 2))))
    assert not satisfies_resources(inst, Schedule(((0, 1), (0, 3))))
    inst3 = new_instance(3, 1, 4)
    assert not satisfies_resources(inst3, Schedule(((0,), (1,), (0,))))


@pytest.mark.parametrize("ik,expected", [((2, 1), 12), ((2, 2), 164), ((1, 2), 16)])
def test_count_solutions_known_values(ik, expected):
    i_count, k_count = ik
    assert count_solutions(new_instance(i_count, k_count, 4)) == expected


@pytest.mark.parametrize("spec", [(2, 1, 4, None), (2, 2, 4, None), (1, 2, 4, None),
                                  (3, 1, 4, None), (2, 1, 4, [0, 2]),
                                  (2, 2, 4, [0, 1]), (3, 2, 2, None)])
def test_backtracking_agrees_with_naive(spec):
    i_count, k_count, window, offsets = spec
    inst = new_instance(i_count, k_count, window, offsets)
    assert count_solutions(inst) == count_solutions_naive(inst)


def test_single_machine_counts_every_path():
    for k_count in (1, 2, 3):
        inst = new_instance(1, k_count, 4)
        assert count_solutions(inst) == 4 ** k_count
        assert len(enumerate_feasible_paths(inst, 0)) == 4 ** k_count


def test_count_budget():
    with pytest.raises(CapacityError):
        count_solutions(new_instance(2, 30, 4))
    with pytest.raises(CapacityError):
        count_solutions_naive(new_instance(2, 5, 4))


def test_space_sizes_paper_instance():
    sizes = space_sizes(new_instance(2, 2, 4))
    assert (sizes.n_full, sizes.n_reduced, sizes.m_solutions) == (1024, 256, 164)
    assert abs((sizes.n_full / sizes.m_solutions) ** 0.5 - 2.50) < 1e-2
    assert abs((sizes.n_reduced / sizes.m_solutions) ** 0.5 - 1.25) < 1e-2


def test_space_sizes_trivial_instance():
    sizes = space_sizes(new_instance(1, 1, 4))
    assert (sizes.n_full, sizes.n_reduced, sizes.m_solutions) == (4, 4, 4)


def test_space_size_ordering():
    for spec in [(2, 2, 4), (2, 3, 4), (3, 2, 4)]:
        sizes = space_sizes(new_instance(*spec))
        assert sizes.m_solutions <= sizes.n_reduced <= sizes.n_full


def test_marked_mask_size_and_membership():
    inst = new_instance(2, 2, 4)
    mask = marked_mask(inst)
    assert mask.size == 164
    lay = build_layout(inst, "reduced", oracle_wires=False)
    members = set(int(i) for i in mask)
    for idx in members:
        sched = decode_basis(lay, idx)
        assert satisfies_resources(inst, sched)
        assert all(is_feasible_path(inst, i, sched.dates[i]) for i in range(2))


def test_marked_mask_single_machine_single_job():
    mask = marked_mask(new_instance(1, 1, 4))
    assert set(int(i) for i in mask) == {0, 1, 2, 3}


def test_marked_mask_spot_check_against_predicates():
    inst = new_instance(2, 3, 4)
    lay = build_layout(inst, "reduced", oracle_wires=False)
    mask = set(int(i) for i in marked_mask(inst))
    rng = np.random.default_rng(11)
    for idx in rng.integers(0, 1 << lay.n_data_wires, size=1000):
        sched = decode_basis(lay, int(idx))
        expected = satisfies_resources(inst, sched) and \
            all(is_feasible_path(inst, i, sched.dates[i]) for i in range(inst.machines))
        assert (int(idx) in mask) == expected


def test_marked_mask_budget():
    with pytest.raises(CapacityError):
        marked_mask(new_instance(2, 3, 4), budget=100)
