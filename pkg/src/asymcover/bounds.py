"""Analytic bounds on K+(n,R) and bound aggregation.

Lower bounds: the two sphere-covering bounds, the superdiagonal values, the
covering integer program, and a difference chain built from the zero-count
program.  Upper bounds: diagonal codes, coradius splits, greedy and sampled
codes, exact search, and direct-sum splits applied during grid propagation.
Every bound value is computed with exact integer or rational arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache

from . import ipsolve
from .constructions import (
    GREEDY_MAX_N,
    diagonal_code,
    general_upper_size,
    greedy_code,
    random_code_nu,
)
from .cube import ball_size_down, binomial

LOWER_TAG_ORDER = ("superdiag", "i", "e", "mono", "sphere")
UPPER_TAG_ORDER = ("d", "e", "g", "nu", "s", "general", "sphere")


@dataclass(frozen=True)
class BoundRecord:
    """Bracket for one K+(n,R) cell with provenance tags for both ends."""

    n: int
    R: int
    lower: int
    upper: int
    lower_tag: str
    upper_tag: str

    def __post_init__(self) -> None:
        if self.n < 1 or self.R < 0:
            raise ValueError("need n >= 1 and R >= 0")
        if not 1 <= self.lower <= self.upper <= (1 << self.n):
            raise ValueError(
                f"invalid bracket [{self.lower}, {self.upper}] at (n={self.n}, R={self.R})"
            )

    @property
    def exact(self) -> bool:
        return self.lower == self.upper


@dataclass(frozen=True)
class Budget:
    """Which bound sources a cell is allowed to spend time on."""

    use_ip: bool = True
    use_greedy: bool = True
    use_exact: bool = False
    exact_max_n: int = 6
    exact_time_limit: float = 60.0
    exact_node_limit: int | None = None
    nu_seeds: int = 0
    seed: int = 0

    def __post_init__(self) -> None:
        if self.exact_max_n < 1 or self.nu_seeds < 0:
            raise ValueError("budget fields must be nonnegative")
        if self.exact_time_limit is not None and self.exact_time_limit <= 0:
            raise ValueError("exact_time_limit must be positive")


FULL_BUDGET = Budget(use_exact=True, nu_seeds=4)


def _check_cell(n: int, R: int) -> None:
    if n < 1 or R < 0 or R > n:
        raise ValueError("need 1 <= n and 0 <= R <= n")


def sphere_bound_symmetric(n: int, R: int) -> int:
    """ceil(2^n / sum_{j<=R} C(n,j)): every ball has the same size."""
    _check_cell(n, R)
    denom = ball_size_down(n, n, R)
    return -((-(1 << n)) // denom)


def asym_sphere_bound(n: int, R: int) -> int:
    """Levelwise sphere bound with exact rational accumulation.

    Vertices of weight l can only be covered from levels l..l+R, giving the
    per-level denominator sum_{j<=R} C(min(n, l+R), j).
    """
    _check_cell(n, R)
    total = sum(
        Fraction(binomial(n, l), ball_size_down(n, min(n, l + R), R))
        for l in range(n + 1)
    )
    return math.ceil(total)


def superdiag_lower(n: int, R: int) -> int:
    """Coradius-driven lower bound, exact at and beyond the threshold.

    With coradius r = n - R: K+(n,R) = r+1 once n >= r(r+1)/2, and
    K+(n,R) >= r+2 below that threshold.
    """
    _check_cell(n, R)
    r = n - R
    if r <= 0:
        return 1
    if n >= r * (r + 1) // 2:
        return r + 1
    return r + 2


def superdiag_exact(n: int, R: int) -> bool:
    """True when superdiag_lower(n, R) equals K+(n, R)."""
    _check_cell(n, R)
    r = n - R
    return r <= 0 or n >= r * (r + 1) // 2


def general_upper_value(n: int, coradius: int) -> int:
    """Formula target (floor(r/M)+1)^M with M = ceil(r^2/(2n-r)).

    This is the split-size formula evaluated at the smallest part count; in
    dimensions where no exact coradius split fits that part count the
    constructive size exceeds it, so bound aggregation uses the constructed
    size (general_upper_size), never this formula.
    """
    if not 1 <= coradius <= n:
        raise ValueError("need 1 <= coradius <= n")
    m = max(1, -(-(coradius * coradius) // (2 * n - coradius)))
    return (coradius // m + 1) ** m


def diff_lower(n: int, R: int, lower_prev: int, phi_lb: int) -> int:
    """Lift a K+(n-1,R) lower bound by ceil(phi_lb / n).

    Valid whenever phi_lb is at most the largest total zero count over
    minimum codes: deleting a coordinate of a minimum code loses at most
    one word per zero, averaged over the n coordinates.
    """
    if n < 1 or phi_lb < 0:
        raise ValueError("need n >= 1 and phi_lb >= 0")
    return lower_prev + -((-phi_lb) // n)


@lru_cache(maxsize=None)
def _ip_plus_value(n: int, R: int) -> int:
    return ipsolve.ip_plus(n, R).value


@lru_cache(maxsize=None)
def _ip_phi_value(n: int, R: int) -> int:
    return ipsolve.ip_phi(n, R).value


def diff_chain_lower(n: int, R: int) -> int:
    """Chain diff_lower from the anchor K+(max(1,R), R) = 1 up to n."""
    if R < 1 or n < R:
        raise ValueError("need 1 <= R <= n")
    value = 1
    for k in range(max(1, R) + 1, n + 1):
        value = diff_lower(k, R, value, _ip_phi_value(k, R))
    return value


def _pick(candidates: list[tuple[int, str]], order: tuple[str, ...], best) -> tuple[int, str]:
    target = best(v for v, _ in candidates)
    for tag in order:
        for v, t in candidates:
            if v == target and t == tag:
                return target, tag
    raise AssertionError("candidate tag outside the known order")


def best_bounds(n: int, R: int, budget: Budget = Budget()) -> BoundRecord:
    """Best bracket one cell can get from every in-budget bound source."""
    _check_cell(n, R)
    if R == 0:
        full = 1 << n
        return BoundRecord(n, R, full, full, "sphere", "sphere")

    lowers = [
        (asym_sphere_bound(n, R), "sphere"),
        (superdiag_lower(n, R), "superdiag"),
    ]
    if budget.use_ip and n <= ipsolve.MAX_IP_DIMENSION:
        lowers.append((_ip_plus_value(n, R), "i"))
        lowers.append((diff_chain_lower(n, R), "mono"))

    r = n - R
    uppers: list[tuple[int, str]] = []
    if r <= 0 or n >= r * (r + 1) // 2:
        uppers.append((max(1, r + 1), "d"))
    if r >= 1:
        uppers.append((general_upper_size(n, r), "general"))
    if budget.use_greedy and n <= GREEDY_MAX_N:
        uppers.append((len(greedy_code(n, R)), "g"))
    if budget.nu_seeds > 0 and n <= GREEDY_MAX_N:
        best_nu = min(
            len(random_code_nu(n, R, budget.seed + t)) for t in range(budget.nu_seeds)
        )
        uppers.append((best_nu, "nu"))
    if budget.use_exact and n <= min(budget.exact_max_n, 7):
        from . import exact as exact_search  # imported here to break the module cycle

        res = exact_search.exact_kplus(
            n,
            R,
            time_limit=budget.exact_time_limit,
            node_limit=budget.exact_node_limit,
        )
        if res.status == "exact":
            lowers.append((res.value, "e"))
            uppers.append((res.value, "e"))
        else:
            lowers.append((res.bracket[0], "e"))
            uppers.append((res.bracket[1], "g"))

    lower, ltag = _pick(lowers, LOWER_TAG_ORDER, max)
    upper, utag = _pick(uppers, UPPER_TAG_ORDER, min)
    if lower > upper:
        raise ValueError(
            f"inconsistent bounds at (n={n}, R={R}): lower {lower} > upper {upper}"
        )
    return BoundRecord(n, R, lower, upper, ltag, utag)


def _virtual_lower(grid, n: int, R: int) -> int | None:
    rec = grid.get((n, R))
    if rec is not None:
        return rec.lower
    if R >= n:
        return 1
    if R == 0:
        return 1 << n
    return None


def _virtual_upper(grid, n: int, R: int) -> int | None:
    rec = grid.get((n, R))
    if rec is not None:
        return rec.upper
    if R >= n:
        return 1
    if R == 0:
        return 1 << n
    return None


def propagate(grid: dict[tuple[int, int], BoundRecord]) -> dict[tuple[int, int], BoundRecord]:
    """Tighten a grid to its monotonicity / direct-sum fixed point.

    Rules, applied until nothing moves: for R < n, lower(n,R) must exceed
    both lower(n-1,R) and lower(n,R+1); upper(n,R) is at most the best
    product upper(n1,R1) * upper(n-n1,R-R1) over all splits.  Cells absent
    from the grid contribute their definitional values when R = 0 or R >= n.
    Never loosens a bound; raises on lower > upper.
    """
    out = dict(grid)
    changed = True
    while changed:
        changed = False
        for key in sorted(out):
            n, R = key
            rec = out[key]
            lower, ltag = rec.lower, rec.lower_tag
            upper, utag = rec.upper, rec.upper_tag
            if R < n:
                for src in (_virtual_lower(out, n - 1, R), _virtual_lower(out, n, R + 1)):
                    if src is not None and src + 1 > lower:
                        lower, ltag = src + 1, "mono"
            for n1 in range(1, n):
                for r1 in range(R + 1):
                    u1 = _virtual_upper(out, n1, r1)
                    u2 = _virtual_upper(out, n - n1, R - r1)
                    if u1 is not None and u2 is not None and u1 * u2 < upper:
                        upper, utag = u1 * u2, "s"
            if lower > upper:
                raise ValueError(
                    f"inconsistent bounds at (n={n}, R={R}): lower {lower} > upper {upper}"
                )
            if lower != rec.lower or upper != rec.upper:
                out[key] = replace(rec, lower=lower, upper=upper, lower_tag=ltag, upper_tag=utag)
                changed = True
    return out
