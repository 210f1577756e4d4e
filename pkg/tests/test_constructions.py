import pytest

from divlab.bounds import div_Qk_formula, qk_degree_formula
from divlab.constructions import (
    SwapPlan,
    apply_swap,
    build_Fk,
    build_Pk,
    build_Qk,
    circular_shift,
    seed_Lk,
    shift_orbit,
    swap_is_intersecting,
)
from divlab.errors import BudgetExceeded, FamilyError
from divlab.setfam import (
    Family,
    complement_family,
    diversity,
    is_intersecting,
    is_regular,
    subset_from_elements,
)

from oracles import naive_orbit, naive_shift, subsets_at_least


def s(elements, n):
    return subset_from_elements(elements, n)


def test_circular_shift_examples():
    assert circular_shift(s([1, 2, 4], 7)).elements == (2, 3, 5)
    assert circular_shift(s([7], 7)).elements == (1,)


@pytest.mark.parametrize("n", [3, 7, 13, 63])
def test_shift_has_order_n(n):
    a = s([1, 2, n], n)
    cur = a
    for _ in range(n):
        cur = circular_shift(cur)
    assert cur == a


@pytest.mark.parametrize("elements, n", [([1, 2, 4], 7), ([1, 3], 9), ([2, 5, 6, 11], 11)])
def test_shift_matches_oracle(elements, n):
    assert set(circular_shift(s(elements, n)).elements) == naive_shift(set(elements), n)


def test_orbit_fano():
    orbit = shift_orbit(s([1, 2, 4], 7)).orbit
    expected = [{1, 2, 4}, {2, 3, 5}, {3, 4, 6}, {4, 5, 7}, {5, 6, 1}, {6, 7, 2}, {7, 1, 3}]
    assert {frozenset(x) for x in orbit.as_sets()} == {frozenset(x) for x in expected}


def test_orbit_singleton():
    assert shift_orbit(s([1], 3)).orbit.as_sets() == [(1,), (2,), (3,)]


def test_orbit_with_stabilizer():
    # {1,4,7} in [9] is fixed by shifting three times
    orbit = shift_orbit(s([1, 4, 7], 9))
    assert len(orbit.orbit) == 3
    assert 9 % len(orbit.orbit) == 0


@pytest.mark.parametrize("k", range(3, 21))
def test_orbit_closed_and_full(k):
    orb = shift_orbit(seed_Lk(k))
    assert len(orb.orbit) == 2 * k + 1
    assert orb.seed in orb.orbit
    assert all(circular_shift(a) in orb.orbit for a in orb.orbit)
    expected = naive_orbit(set(seed_Lk(k).elements), 2 * k + 1)
    assert {frozenset(a) for a in orb.orbit.as_sets()} == expected


def test_seed_lk():
    assert seed_Lk(3).elements == (1, 2, 4)
    assert seed_Lk(4).elements == (1, 2, 4, 7)
    assert seed_Lk(6).elements == (1, 2, 4, 7, 9, 11)
    for k in range(3, 31):
        assert len(seed_Lk(k)) == k and seed_Lk(k).n == 2 * k + 1
    with pytest.raises(FamilyError):
        seed_Lk(2)


@pytest.mark.parametrize("k", [3, 4, 12])
def test_build_fk(k):
    f = build_Fk(k)
    assert len(f) == 2 * k + 1 and f.n == 2 * k + 1
    assert set(f.sizes().tolist()) == {k}
    assert is_intersecting(f, method="pairwise")
    assert is_regular(f).degree == k


def test_build_qk_small():
    assert build_Qk(1).as_sets() == [(1, 2), (1, 3), (2, 3), (1, 2, 3)]
    q3 = build_Qk(3)
    assert len(q3) == 64
    assert {frozenset(x) for x in q3.as_sets()} == set(subsets_at_least(7, 4))
    assert diversity(q3).diversity == 22


@pytest.mark.parametrize("k", range(1, 9))
def test_qk_size_degree(k):
    q = build_Qk(k)
    assert len(q) == 1 << (2 * k)
    assert is_regular(q).degree == qk_degree_formula(k)


def test_qk_budget():
    with pytest.raises(BudgetExceeded):
        build_Qk(10, budget=1000)
    with pytest.raises(BudgetExceeded):
        build_Qk(15)
    with pytest.raises(FamilyError):
        build_Qk(0)


def test_qk_budget_env(monkeypatch):
    monkeypatch.setenv("DIVLAB_BUDGET_BYTES", "100")
    with pytest.raises(BudgetExceeded):
        build_Qk(3)


def test_build_p3():
    p = build_Pk(3)
    assert len(p) == 64
    assert is_intersecting(p)
    assert is_regular(p).degree == 41  # 3 + 42 - 4
    assert diversity(p).diversity == 23


def test_build_p5():
    p = build_Pk(5)
    assert len(p) == 1 << 10
    assert is_intersecting(p, method="pairwise")
    assert is_regular(p)
    assert diversity(p).diversity == div_Qk_formula(5) + 1


def test_apply_swap_reproduces_pk():
    plan = SwapPlan(build_Qk(3), build_Fk(3))
    assert apply_swap(plan) == build_Pk(3)
    assert swap_is_intersecting(plan)


def test_apply_swap_empty():
    q3 = build_Qk(3)
    assert apply_swap(SwapPlan(q3, Family(7))) == q3


def test_apply_swap_errors():
    q3 = build_Qk(3)
    a = s([1, 2, 4], 7)
    with pytest.raises(FamilyError, match="duplicate"):
        apply_swap(SwapPlan(q3, [a, a]))
    with pytest.raises(FamilyError, match="already in base"):
        apply_swap(SwapPlan(q3, [s([1, 2, 3, 4], 7)]))
    with pytest.raises(FamilyError, match="missing"):
        apply_swap(SwapPlan(complement_family(build_Fk(3)), [s([1, 2], 7)]))


def test_swap_intersection_matches_full_scan():
    q3 = build_Qk(3)
    plans = [
        [s([1, 2, 4], 7)],
        [s([1, 2, 4], 7), s([3, 5, 6], 7)],
        [s([1, 2], 7)],
        [s([1, 2, 3], 7), s([4, 5, 6], 7)],
        list(build_Fk(3)),
    ]
    for small in plans:
        plan = SwapPlan(q3, small)
        assert swap_is_intersecting(plan) == is_intersecting(apply_swap(plan))
        assert len(apply_swap(plan)) == len(q3)
