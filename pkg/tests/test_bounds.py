"""Analytic bounds, their aggregation, and grid propagation."""

import math
from fractions import Fraction

import pytest

from asymcover.bounds import (
    BoundRecord,
    Budget,
    FULL_BUDGET,
    LOWER_TAG_ORDER,
    UPPER_TAG_ORDER,
    asym_sphere_bound,
    best_bounds,
    diff_chain_lower,
    diff_lower,
    propagate,
    sphere_bound_symmetric,
    superdiag_exact,
    superdiag_lower,
)
from asymcover.cube import dominated, weight
from asymcover.ipsolve import ip_plus


def brute_ball_down_size(n, l, R):
    c = (1 << l) - 1
    return sum(
        1 for v in range(1 << n) if dominated(v, c) and l - weight(v) <= R
    )


def brute_asym_sphere(n, R):
    total = Fraction(0)
    for l in range(n + 1):
        denom = brute_ball_down_size(n, min(n, l + R), R)
        total += Fraction(math.comb(n, l), denom)
    return math.ceil(total)


def test_sphere_bound_symmetric():
    for n in range(1, 9):
        for R in range(n + 1):
            want = math.ceil((1 << n) / sum(math.comb(n, j) for j in range(R + 1)))
            assert sphere_bound_symmetric(n, R) == want


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6, 7])
def test_asym_sphere_matches_brute_force(n):
    for R in range(n + 1):
        assert asym_sphere_bound(n, R) == brute_asym_sphere(n, R)


def test_asym_sphere_dominates_symmetric():
    for n in range(1, 13):
        for R in range(1, n + 1):
            assert asym_sphere_bound(n, R) >= sphere_bound_symmetric(n, R)


def test_superdiag_values():
    assert superdiag_lower(6, 3) == 4
    assert superdiag_exact(6, 3)
    assert superdiag_lower(5, 2) == 5
    assert not superdiag_exact(5, 2)
    assert superdiag_lower(3, 1) == 3
    assert superdiag_lower(4, 4) == 1
    assert superdiag_exact(4, 4)


def test_diff_lower_arithmetic():
    assert diff_lower(6, 1, 10, 17) == 13
    assert diff_lower(6, 1, 10, 18) == 13
    assert diff_lower(6, 1, 10, 19) == 14
    assert diff_lower(5, 2, 3, 0) == 3
    with pytest.raises(ValueError):
        diff_lower(0, 1, 1, 1)
    with pytest.raises(ValueError):
        diff_lower(3, 1, 1, -1)


def test_diff_chain_beats_plain_ip_at_61():
    assert ip_plus(6, 1).value == 16
    assert diff_chain_lower(6, 1) == 17


def test_diff_chain_stays_below_known_optima():
    known = {(2, 1): 2, (3, 1): 3, (4, 1): 6, (5, 1): 10, (6, 1): 18, (5, 2): 5, (6, 2): 8}
    for (n, R), value in known.items():
        assert diff_chain_lower(n, R) <= value
    assert diff_chain_lower(3, 3) == 1


def test_bound_record_validation():
    rec = BoundRecord(4, 1, 6, 6, "i", "e")
    assert rec.exact
    assert not BoundRecord(4, 1, 5, 6, "i", "g").exact
    with pytest.raises(ValueError):
        BoundRecord(4, 1, 7, 6, "i", "g")
    with pytest.raises(ValueError):
        BoundRecord(4, 1, 0, 6, "i", "g")
    with pytest.raises(ValueError):
        BoundRecord(4, 1, 6, 17, "i", "g")


def test_best_bounds_pinned_cells():
    rec = best_bounds(6, 3, FULL_BUDGET)
    assert (rec.lower, rec.upper, rec.lower_tag, rec.upper_tag) == (4, 4, "superdiag", "d")
    rec = best_bounds(4, 1, Budget(use_exact=True))
    assert (rec.lower, rec.upper, rec.lower_tag, rec.upper_tag) == (6, 6, "i", "e")


def test_best_bounds_radius_zero():
    rec = best_bounds(5, 0)
    assert (rec.lower, rec.upper) == (32, 32)
    assert rec.lower_tag == rec.upper_tag == "sphere"


def test_best_bounds_default_budget_82():
    rec = best_bounds(8, 2)
    assert (rec.lower, rec.lower_tag) == (20, "mono")
    assert (rec.upper, rec.upper_tag) == (24, "g")


def test_best_bounds_budget_gating():
    no_ip = best_bounds(8, 2, Budget(use_ip=False))
    assert no_ip.lower_tag in ("sphere", "superdiag")
    analytic = best_bounds(9, 2, Budget(use_ip=False, use_greedy=False))
    assert analytic.upper_tag in ("d", "general")
    seeded = best_bounds(8, 2, Budget(use_greedy=False, nu_seeds=2))
    from asymcover.constructions import general_upper_size, random_code_nu

    sampled = min(len(random_code_nu(8, 2, s)) for s in range(2))
    analytic_upper = general_upper_size(8, 6)
    assert seeded.upper == min(sampled, analytic_upper)
    assert seeded.upper_tag == ("nu" if sampled <= analytic_upper else "general")


def test_best_bounds_tags_come_from_known_orders():
    for n in range(1, 9):
        for R in range(n + 1):
            rec = best_bounds(n, R)
            assert rec.lower_tag in LOWER_TAG_ORDER
            assert rec.upper_tag in UPPER_TAG_ORDER


def test_best_bounds_brackets_nest_as_budget_grows():
    lean = best_bounds(6, 1, Budget(use_ip=False, use_greedy=False))
    default = best_bounds(6, 1)
    full = best_bounds(6, 1, FULL_BUDGET)
    assert lean.lower <= default.lower <= full.lower
    assert lean.upper >= default.upper >= full.upper
    assert full.exact


def seed_grid(n_max, r_max):
    grid = {}
    for n in range(1, n_max + 1):
        for R in range(1, min(n, r_max) + 1):
            grid[(n, R)] = BoundRecord(
                n, R, superdiag_lower(n, R), 1 << n, "superdiag", "sphere"
            )
    return grid


def test_propagate_reaches_13_8():
    out = propagate(seed_grid(13, 12))
    assert out[(13, 8)].lower >= 7


def test_propagate_monotone_and_idempotent():
    first = propagate(seed_grid(10, 9))
    for key, rec in first.items():
        seeded = seed_grid(10, 9)[key]
        assert rec.lower >= seeded.lower
        assert rec.upper <= seeded.upper
    second = propagate(first)
    assert {k: (r.lower, r.upper) for k, r in second.items()} == {
        k: (r.lower, r.upper) for k, r in first.items()
    }


def test_propagate_split_upper():
    grid = {
        (2, 1): BoundRecord(2, 1, 1, 2, "sphere", "d"),
        (4, 2): BoundRecord(4, 2, 1, 16, "sphere", "sphere"),
    }
    out = propagate(grid)
    assert out[(4, 2)].upper == 4
    assert out[(4, 2)].upper_tag == "s"


def test_propagate_uses_virtual_cells():
    grid = {(3, 2): BoundRecord(3, 2, 1, 8, "sphere", "sphere")}
    out = propagate(grid)
    # lower: the virtual (3,3)=1 cell forces >= 2
    assert out[(3, 2)].lower >= 2
    # upper: split with the virtual (1,0) cell (2 words) and (2,2) cell (1 word)
    assert out[(3, 2)].upper <= 4


def test_propagate_rejects_contradiction():
    grid = {
        (3, 1): BoundRecord(3, 1, 3, 3, "e", "e"),
        (4, 1): BoundRecord(4, 1, 1, 3, "sphere", "g"),
    }
    with pytest.raises(ValueError):
        propagate(grid)


def test_propagate_leaves_tight_grid_alone():
    grid = {
        (2, 1): BoundRecord(2, 1, 2, 2, "e", "e"),
        (3, 1): BoundRecord(3, 1, 3, 3, "e", "e"),
    }
    out = propagate(grid)
    assert out[(2, 1)] == grid[(2, 1)]
    assert out[(3, 1)] == grid[(3, 1)]
