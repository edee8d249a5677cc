import random
from fractions import Fraction

import pytest

from cbd import (
    NotDeterministic,
    analyze,
    analyze_deterministic,
    is_deterministic,
    validate_system,
)
from helpers import (
    M,
    P,
    c2_system,
    four_cycle_name_system,
    order_effect_system,
    pm_registry,
    rand_deterministic,
    rand_system,
    relabel,
)

F = Fraction


def test_analyze_order_effect():
    report = analyze(order_effect_system())
    assert report.consistent
    assert report.delta_sum == 0
    assert report.system_delta == F(1, 2)
    assert report.cnt == F(1, 2)
    assert report.contextual
    assert not report.deterministic
    assert report.n_variables == 4


def test_analyze_single_context_noncontextual():
    sys_ = validate_system(
        pm_registry("q1", "q2"),
        [("c1", ("q1", "q2"), {(P, P): F(1, 2), (M, M): F(1, 2)})],
    )
    report = analyze(sys_)
    assert report.system_delta == 0
    assert report.cnt == 0
    assert not report.contextual
    assert report.pair_deltas == ()


def test_analyze_inconsistent_pair_instance():
    # frozen from the brute-force enumeration oracle
    sys_ = c2_system(F(1, 2), F(1, 2), F(1, 2), F(1, 4), F(1, 2), F(0))
    report = analyze(sys_)
    assert not report.consistent
    assert report.delta_sum == F(1, 4)
    assert report.system_delta == F(3, 4)
    assert report.cnt == F(1, 2)
    assert report.contextual


def test_witness_mass_and_support():
    report = analyze(order_effect_system())
    total = sum(w for _, w in report.witness.weights)
    assert total == 1
    assert all(w > 0 for _, w in report.witness.weights)
    assert len(report.witness.variables) == 4


def test_is_deterministic():
    assert is_deterministic(four_cycle_name_system())
    assert not is_deterministic(order_effect_system())
    near = validate_system(
        pm_registry("q1"),
        [("c1", ("q1",), {(P,): F(999, 1000), (M,): F(1, 1000)})],
    )
    assert not is_deterministic(near)


def test_analyze_deterministic_name_system():
    report = analyze_deterministic(four_cycle_name_system())
    assert [pd.delta for pd in report.pair_deltas] == [F(1)] * 4
    assert report.delta_sum == 4
    assert report.system_delta == 4
    assert report.cnt == 0
    assert not report.contextual
    assert report.deterministic
    assert not report.consistent
    # the unique coupling is the fixed values themselves
    assert report.witness.weights[0][1] == 1


def test_analyze_deterministic_all_agree():
    blocks = [
        ("c1", ("q1", "q2"), {(P, P): 1}),
        ("c2", ("q2", "q3"), {(P, P): 1}),
        ("c3", ("q1", "q3"), {(P, P): 1}),
    ]
    report = analyze_deterministic(
        validate_system(pm_registry("q1", "q2", "q3"), blocks)
    )
    assert report.delta_sum == 0
    assert report.system_delta == 0
    assert report.cnt == 0
    assert report.consistent


def test_analyze_deterministic_five_content_shape():
    # overlapping contexts of mixed arity; fixed values chosen arbitrarily
    blocks = [
        ("c1", ("q1", "q2", "q4"), {(P, M, P): 1}),
        ("c2", ("q1", "q3"), {(M, P): 1}),
        ("c3", ("q2", "q3", "q4", "q5"), {(P, P, M, M): 1}),
        ("c4", ("q3", "q5"), {(P, P): 1}),
    ]
    sys_ = validate_system(pm_registry("q1", "q2", "q3", "q4", "q5"), blocks)
    report = analyze_deterministic(sys_)
    assert report.cnt == 0
    assert not report.contextual
    # delta is 1 exactly where the fixed values differ
    expected = {
        ("q1", "c1", "c2"): F(1),
        ("q2", "c1", "c3"): F(1),
        ("q3", "c2", "c3"): F(0),
        ("q3", "c2", "c4"): F(0),
        ("q3", "c3", "c4"): F(0),
        ("q4", "c1", "c3"): F(1),
        ("q5", "c3", "c4"): F(1),
    }
    got = {(pd.content, pd.context_a, pd.context_b): pd.delta
           for pd in report.pair_deltas}
    assert got == expected


def test_analyze_deterministic_rejects_random_tables():
    with pytest.raises(NotDeterministic):
        analyze_deterministic(order_effect_system())


def test_fast_path_matches_lp_path():
    rng = random.Random(41)
    checked = 0
    while checked < 25:
        sys_ = rand_deterministic(rng, max_contents=4, max_contexts=4, max_block=2)
        atoms = 1
        for _, q in sys_.variables:
            atoms *= len(sys_.outcomes[q])
        if atoms > 16:
            continue
        fast = analyze(sys_)
        slow = analyze(sys_, deterministic_fast_path=False)
        assert fast == slow
        checked += 1


def test_relabeling_preserves_cnt():
    rng = random.Random(43)
    for _ in range(5):
        sys_ = rand_system(rng, max_atoms=64)
        a = analyze(sys_)
        b = analyze(relabel(sys_))
        assert a.cnt == b.cnt
        assert a.contextual == b.contextual
    fixed = analyze(order_effect_system())
    moved = analyze(relabel(order_effect_system()))
    assert fixed.cnt == moved.cnt
