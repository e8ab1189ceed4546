"""Exact K+(n,R) by branch-and-bound set cover over downward balls.

The universe of Q_n vertices is one big bitmask; candidate centers for an
uncovered vertex y are the supersets of y within R extra ones.  Search is
iterative deepening on the code size with a transposition table of proven
infeasibility depths, a fixed rational dual bound per state, and dominance
filtering among branch candidates.  Budgets never produce a wrong exact
claim: exhausting them yields a bracket.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction

from . import ipsolve
from .bounds import asym_sphere_bound, diff_chain_lower
from .constructions import greedy_code
from .cube import Code, all_ones, ball_down, ball_size_down, covers, weight

EXACT_MAX_N = 7
TT_CAP = 5_000_000
_TIME_CHECK_MASK = 0xFFF


@dataclass(frozen=True)
class ExactResult:
    """Outcome of an exact search: a proven value or an honest bracket."""

    n: int
    R: int
    status: str  # "exact" | "bracket"
    value: int | None
    bracket: tuple[int, int] | None
    witness: Code
    nodes: int
    elapsed: float


class _BudgetHit(Exception):
    pass


def _upset_candidates(y: int, n: int, R: int) -> list[int]:
    """Centers that can cover y: supersets of y with at most R extra ones."""
    free = all_ones(n) & ~y
    found = []
    sub = free
    while True:
        if weight(sub) <= R:
            found.append(y | sub)
        if sub == 0:
            break
        sub = (sub - 1) & free
    found.sort()
    return found


def exact_kplus(
    n: int,
    R: int,
    time_limit: float | None = 600.0,
    node_limit: int | None = None,
    on_progress=None,
) -> ExactResult:
    """Minimum number of downward R-balls covering Q_n, with witness.

    Accepts R = 0 (the answer is 2^n, every vertex covering only itself).
    Iterative deepening proves minimality: a value v is exact only after
    every budget below v has been exhausted.  `on_progress`, when given, is
    called with (proven_lower, incumbent_size, nodes) after each exhausted
    size budget.
    """
    if not 0 <= R <= n:
        raise ValueError("need 0 <= R <= n")
    if n < 1 or n > EXACT_MAX_N:
        raise ValueError(f"exact search supports 1 <= n <= {EXACT_MAX_N}")
    start = time.monotonic()
    deadline = start + time_limit if time_limit is not None else None

    top = all_ones(n)
    if R >= n:
        witness = Code.from_words(n, [top], r=R)
        return ExactResult(n, R, "exact", 1, None, witness, 0, time.monotonic() - start)

    incumbent = greedy_code(n, R)
    best = len(incumbent)

    lowers = [asym_sphere_bound(n, R), 1]
    if R >= 1:
        lowers.append(ipsolve.ip_plus(n, R).value)
        lowers.append(diff_chain_lower(n, R))
    proven_lower = max(lowers)

    size = 1 << n
    ball_mask = [0] * size
    for c in range(size):
        m = 0
        for v in ball_down(c, R, n):
            m |= 1 << v
        ball_mask[c] = m
    candidates_of = [_upset_candidates(y, n, R) for y in range(size)]
    level_mask = [0] * (n + 1)
    for v in range(size):
        level_mask[weight(v)] |= 1 << v
    # fixed dual vector: any extra centers covering u_l vertices per level
    # cost at least sum u_l / b-(min(l+R,n),R), by weak duality
    dual = [Fraction(1, ball_size_down(n, min(l + R, n), R)) for l in range(n + 1)]

    universe = (1 << size) - 1
    root = universe & ~ball_mask[top]  # the top word is forced into every cover
    tt: dict[int, int] = {}
    nodes = 0

    def state_lb(u: int) -> int:
        total = Fraction(0)
        for l in range(n + 1):
            cnt = (u & level_mask[l]).bit_count()
            if cnt:
                total += cnt * dual[l]
        return -((-total.numerator) // total.denominator) if total else 0

    def dfs(u: int, budget: int) -> list[int] | None:
        nonlocal nodes
        nodes += 1
        if nodes & _TIME_CHECK_MASK == 0:
            if deadline is not None and time.monotonic() > deadline:
                raise _BudgetHit
            if node_limit is not None and nodes > node_limit:
                raise _BudgetHit
        if u == 0:
            return []
        if budget == 0:
            return None
        lb = tt.get(u)
        if lb is None:
            lb = state_lb(u)
        if lb > budget:
            return None
        for l in range(n - 1, -1, -1):
            at_level = u & level_mask[l]
            if at_level:
                y = (at_level & -at_level).bit_length() - 1
                break
        cands = []
        for c in candidates_of[y]:
            rem = ball_mask[c] & u
            if rem:
                cands.append((c, rem))
        kept = []
        for i, (c, rem) in enumerate(cands):
            dominated = False
            for j, (c2, rem2) in enumerate(cands):
                if i == j or rem & ~rem2:
                    continue
                if rem != rem2 or c2 < c:
                    dominated = True
                    break
            if not dominated:
                kept.append((c, rem))
        kept.sort(key=lambda cr: (-cr[1].bit_count(), cr[0]))
        for c, _ in kept:
            sol = dfs(u & ~ball_mask[c], budget - 1)
            if sol is not None:
                return [c] + sol
        if len(tt) < TT_CAP:
            prev = tt.get(u, 0)
            if budget + 1 > prev:
                tt[u] = budget + 1
        return None

    status = "exact"
    try:
        target = proven_lower
        while target < best:
            sol = dfs(root, target - 1)
            if sol is not None:
                incumbent = Code.from_words(n, [top] + sol, r=R)
                best = target
                break
            proven_lower = target + 1
            target += 1
            if on_progress is not None:
                on_progress(proven_lower, best, nodes)
    except _BudgetHit:
        status = "bracket"

    elapsed = time.monotonic() - start
    if status == "exact" or proven_lower == best:
        return ExactResult(n, R, "exact", best, None, incumbent, nodes, elapsed)
    return ExactResult(
        n, R, "bracket", None, (proven_lower, best), incumbent, nodes, elapsed
    )


def verify_optimal(result: ExactResult) -> bool:
    """Independent sanity check of an exact result.

    Confirms the witness covers, its size equals the claimed value, and the
    covering integer program does not contradict the claim.  Minimality
    itself is the search's certificate and is not re-proven here.
    """
    if result.status != "exact":
        raise ValueError("verify_optimal expects an exact result")
    if len(result.witness) != result.value:
        return False
    if not covers(result.witness, result.R):
        return False
    if result.R >= 1 and ipsolve.ip_plus(result.n, result.R).value > result.value:
        return False
    return True
