import random
from fractions import Fraction as F

import pytest

from sdeq.closed_form import (
    CASE_TAGS_A,
    CASE_TAGS_B,
    CaseParamError,
    ForbiddenInputError,
    auto_case_a,
    auto_case_b,
    seeds_a,
    seeds_b,
    solve_a_case,
    solve_a_case_sweep,
    solve_a_product,
    solve_a_product_sweep,
    solve_b_case,
    solve_b_case_sweep,
    solve_b_product,
    solve_b_product_sweep,
)
from sdeq.sampling import draw_admissible_a, draw_admissible_b
from sdeq.systems import (
    SystemAInitial,
    SystemAParams,
    SystemBInitial,
    SystemBParams,
    iterate_a,
    iterate_b,
)

ONES_A = SystemAInitial(1, 1, 1, 1)
ONES_B = SystemBInitial(1, 1, 1, 1, 1, 1)


def test_seeds():
    assert seeds_a(SystemAInitial(1, 2, 1, F(-1, 2))) == (F(1, 2), -2)
    assert seeds_b(ONES_B) == (1, 1, 1, 1)
    with pytest.raises(ForbiddenInputError):
        seeds_a(SystemAInitial(1, 1, 1, 0))
    with pytest.raises(ForbiddenInputError):
        seeds_b(SystemBInitial(1, 1, 1, 1, 0, 1))


def test_product_a_examples():
    assert solve_a_product(SystemAParams(1, 1), ONES_A, 2) == (F(1, 2), F(1, 2))
    assert solve_a_product(SystemAParams(3, -2), SystemAInitial(2, 3, 5, 7), 0) == (2, 5)
    assert solve_a_product(SystemAParams(3, -2), SystemAInitial(2, 3, 5, 7), 1) == (3, 7)
    assert solve_a_product(SystemAParams(2, 1), ONES_A, 2)[0] == F(1, 3)


def test_product_a_equals_iteration():
    rng = random.Random(101)
    for _ in range(40):
        params, ics = draw_admissible_a(rng, 30)
        t = iterate_a(params, ics, 30)
        us, vs = solve_a_product_sweep(params, ics, 30)
        assert us == list(t.first)
        assert vs == list(t.second)


def test_case_a_examples():
    u2, _ = solve_a_case("ABneq1", SystemAParams(2, 1), ONES_A, 2)
    assert u2 == F(1, 3)
    u4, v4 = solve_a_case("Aeq1Bneg1", SystemAParams(1, -1), SystemAInitial(1, 2, 1, 2), 4)
    assert (u4, v4) == (F(-1, 3), -3)
    u2, v2 = solve_a_case("NegNeg", SystemAParams(-1, -1), SystemAInitial(1, 2, 1, 3), 2)
    assert (u2, v2) == (F(1, 2), 1)


def test_case_a_initial_indices_unchanged():
    cases = {
        "Product": SystemAParams(2, F(1, 2)),
        "ABneq1": SystemAParams(2, 3),
        "Aeq1": SystemAParams(1, 3),
        "Beq1": SystemAParams(3, 1),
        "Aeq1Bneg1": SystemAParams(1, -1),
        "Beq1Aneg1": SystemAParams(-1, 1),
        "OnesOnes": SystemAParams(1, 1),
        "NegNeg": SystemAParams(-1, -1),
    }
    ics = SystemAInitial(F(2, 3), F(-5, 7), F(3), F(-1, 2))
    for tag, params in cases.items():
        assert solve_a_case(tag, params, ics, 0) == (ics.u0, ics.v0)
        assert solve_a_case(tag, params, ics, 1) == (ics.u1, ics.v1)


def test_case_a_against_oracle_per_tag():
    rng = random.Random(102)
    for tag in CASE_TAGS_A:
        for _ in range(12):
            params, ics = draw_admissible_a(rng, 30, tag)
            t = iterate_a(params, ics, 30)
            us, vs = solve_a_case_sweep(tag, params, ics, 30)
            assert us == list(t.first), (tag, params, ics)
            assert vs == list(t.second), (tag, params, ics)


def test_case_a_overlap_consistency():
    # on a = 1 (b generic) the unit-a formulas must equal the generic
    # a*b != 1 formulas exactly, and likewise for b = 1
    rng = random.Random(103)
    for _ in range(15):
        params, ics = draw_admissible_a(rng, 24, "Aeq1")
        assert solve_a_case_sweep("Aeq1", params, ics, 24) == solve_a_case_sweep(
            "ABneq1", params, ics, 24
        )
        params, ics = draw_admissible_a(rng, 24, "Beq1")
        assert solve_a_case_sweep("Beq1", params, ics, 24) == solve_a_case_sweep(
            "ABneq1", params, ics, 24
        )


def test_case_a_sign_pattern_mod4():
    # the odd-u branch at residue 3 alternates sign with the block index m:
    # u[4m+3] * (2*q-1)^(m+1) / (u1 * (q-1)^(2m+1)) == (-1)^m, q = v0*u1
    params = SystemAParams(1, -1)
    ics = SystemAInitial(1, 2, 1, 2)
    q = ics.v0 * ics.u1
    t = iterate_a(params, ics, 24)
    assert t.singular is None
    for m in range(5):
        u = t.first[4 * m + 3]
        ratio = u * (2 * q - 1) ** (m + 1) / (ics.u1 * (q - 1) ** (2 * m + 1))
        assert ratio == (-1) ** m


def test_auto_case_a():
    assert auto_case_a(SystemAParams(1, 1)) == "OnesOnes"
    assert auto_case_a(SystemAParams(-1, -1)) == "NegNeg"
    assert auto_case_a(SystemAParams(1, -1)) == "Aeq1Bneg1"
    assert auto_case_a(SystemAParams(-1, 1)) == "Beq1Aneg1"
    assert auto_case_a(SystemAParams(1, 5)) == "Aeq1"
    assert auto_case_a(SystemAParams(5, 1)) == "Beq1"
    assert auto_case_a(SystemAParams(2, 3)) == "ABneq1"
    assert auto_case_a(SystemAParams(2, F(1, 2))) == "Product"  # a*b = 1, no special form


def test_case_a_tag_param_mismatch():
    with pytest.raises(CaseParamError):
        solve_a_case("OnesOnes", SystemAParams(2, 1), ONES_A, 3)
    with pytest.raises(CaseParamError):
        solve_a_case("ABneq1", SystemAParams(2, F(1, 2)), ONES_A, 3)
    with pytest.raises(CaseParamError):
        solve_a_case("nope", SystemAParams(1, 1), ONES_A, 1)


def test_case_a_forbidden_input():
    # T[2] = T0 + 2 = 0 for u0*v1 = -1/2, so the closed form breaks at
    # index 3 (where iteration is singular as well)
    params = SystemAParams(1, 1)
    ics = SystemAInitial(1, 1, 1, F(-1, 2))
    us, vs = solve_a_case_sweep("OnesOnes", params, ics, 2)
    t = iterate_a(params, ics, 2)
    assert us == list(t.first) and vs == list(t.second)
    with pytest.raises(ForbiddenInputError) as info:
        solve_a_case_sweep("OnesOnes", params, ics, 5)
    assert info.value.index == 3
    with pytest.raises(ForbiddenInputError):
        solve_a_product(params, ics, 5)
    with pytest.raises(ForbiddenInputError):
        solve_a_product(params, SystemAInitial(0, 1, 1, 1), 3)


def test_product_b_examples():
    params = SystemBParams(1, 1, 1, 1)
    assert solve_b_product(params, ONES_B, 3)[0] == F(1, 2)
    assert solve_b_product(params, ONES_B, 5)[0] == F(1, 3)
    ics = SystemBInitial(2, 3, 5, 7, F(1, 2), F(-2, 3))
    for n in range(3):
        xs, ys = solve_b_product(SystemBParams(4, -1, 2, 3), ics, n)
        assert xs == (ics.x0, ics.x1, ics.x2)[n]
        assert ys == (ics.y0, ics.y1, ics.y2)[n]


def test_product_b_equals_iteration():
    rng = random.Random(104)
    for _ in range(25):
        params, ics = draw_admissible_b(rng, 25)
        t = iterate_b(params, ics, 25)
        xs, ys = solve_b_product_sweep(params, ics, 25)
        assert xs == list(t.first)
        assert ys == list(t.second)


def test_case_b_examples():
    assert solve_b_case("AllOnes", SystemBParams(1, 1, 1, 1), ONES_B, 4)[0] == 1
    assert solve_b_case("ACeq1", SystemBParams(1, 0, 1, 0), ONES_B, 4)[0] == 1
    assert solve_b_case("ACneq1", SystemBParams(2, 1, 1, 1), ONES_B, 3)[0] == F(1, 3)


def test_case_b_initial_indices_unchanged():
    cases = {
        "Product": SystemBParams(2, -1, 3, F(1, 5)),
        "ACneq1": SystemBParams(2, -1, 3, F(1, 5)),
        "ACeq1": SystemBParams(2, -1, F(1, 2), F(1, 5)),
        "UnitBD": SystemBParams(1, 1, -1, 1),
        "AllOnes": SystemBParams(1, 1, 1, 1),
    }
    ics = SystemBInitial(F(2, 3), F(-5, 7), 3, F(-1, 2), F(4, 9), -2)
    for tag, params in cases.items():
        for n in range(3):
            x, y = solve_b_case(tag, params, ics, n)
            assert x == (ics.x0, ics.x1, ics.x2)[n]
            assert y == (ics.y0, ics.y1, ics.y2)[n]


def test_case_b_against_oracle_per_tag():
    rng = random.Random(105)
    for tag in CASE_TAGS_B:
        for _ in range(10):
            params, ics = draw_admissible_b(rng, 28, tag)
            t = iterate_b(params, ics, 28)
            xs, ys = solve_b_case_sweep(tag, params, ics, 28)
            assert xs == list(t.first), (tag, params, ics)
            assert ys == list(t.second), (tag, params, ics)


def test_case_b_unit_bd_cross_check():
    # the unit-b,d family sits inside a*c != 1, so its residue-8 powers
    # must reproduce the generic geometric-ratio products exactly
    rng = random.Random(106)
    for _ in range(10):
        params, ics = draw_admissible_b(rng, 30, "UnitBD")
        assert solve_b_case_sweep("UnitBD", params, ics, 30) == solve_b_case_sweep(
            "ACneq1", params, ics, 30
        )


def test_case_b_product_routes_agree():
    # two independent evaluations of the general solution: residue-4 brace
    # products vs the parity split over the auxiliary closed form
    rng = random.Random(107)
    for _ in range(15):
        params, ics = draw_admissible_b(rng, 25)
        assert solve_b_case_sweep("Product", params, ics, 25) == solve_b_product_sweep(
            params, ics, 25
        )


def test_auto_case_b():
    assert auto_case_b(SystemBParams(1, 1, 1, 1)) == "AllOnes"
    assert auto_case_b(SystemBParams(1, 1, -1, 1)) == "UnitBD"
    assert auto_case_b(SystemBParams(2, 5, F(1, 2), 7)) == "ACeq1"
    assert auto_case_b(SystemBParams(2, 5, 3, 7)) == "ACneq1"


def test_case_b_tag_param_mismatch():
    with pytest.raises(CaseParamError):
        solve_b_case("AllOnes", SystemBParams(2, 1, 1, 1), ONES_B, 3)
    with pytest.raises(CaseParamError):
        solve_b_case("ACeq1", SystemBParams(2, 1, 1, 1), ONES_B, 3)
    with pytest.raises(CaseParamError):
        solve_b_case("UnitBD", SystemBParams(1, 1, -1, 2), ONES_B, 3)


def test_case_b_forbidden_input():
    # S[4] = S0*(a*c) + (d + b*c) = -2 + 2 = 0 for x0*y1 = -1/2 with all
    # parameters 1; the closed forms break at index 5
    params = SystemBParams(1, 1, 1, 1)
    ics = SystemBInitial(1, 1, 1, 1, F(-1, 2), 1)
    t = iterate_b(params, ics, 4)
    xs, ys = solve_b_case_sweep("AllOnes", params, ics, 4)
    assert xs == list(t.first) and ys == list(t.second)
    for evaluate in (
        lambda: solve_b_case_sweep("AllOnes", params, ics, 8),
        lambda: solve_b_product_sweep(params, ics, 8),
        lambda: solve_b_case_sweep("ACeq1", params, ics, 8),
    ):
        with pytest.raises(ForbiddenInputError) as info:
            evaluate()
        assert info.value.index == 5
