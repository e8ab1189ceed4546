"""Exact solvers for the banded level-profile covering programs.

For any code that downward R-covers Q_n, the level counts a_l must satisfy

    sum_{j=0..R, l+j<=n}  C(l+j, j) * a_{l+j}  >=  C(n, l)      for 0 <= l <= n

because a codeword at level l+j covers at most C(l+j, j) vertices of level l.
Minimizing sum a_l over nonnegative integers with a_l <= C(n, l) lower-bounds
K+(n, R); minimizing sum (n-l) a_l lower-bounds the total zero count phi(n, R).
The same machinery solves instances with an arbitrary demand vector, which the
exact search uses as an admissible node bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cube import ball_size_down, binomial

DEFAULT_NODE_CAP = 10**8
MAX_IP_DIMENSION = 40
INF = float("inf")


class BudgetExceededError(RuntimeError):
    """The node budget ran out before the search finished."""


@dataclass(frozen=True)
class CoveringIP:
    """A banded covering instance over the level variables a_0..a_n."""

    n: int
    R: int
    objective: tuple[int, ...]
    rhs: tuple[int, ...]
    caps: tuple[int, ...]

    def __post_init__(self) -> None:
        n = self.n
        if not 0 <= self.R <= n:
            raise ValueError(f"need 0 <= R <= n, got R={self.R}, n={n}")
        for name in ("objective", "rhs", "caps"):
            vec = getattr(self, name)
            if len(vec) != n + 1:
                raise ValueError(f"{name} must have length n+1 = {n + 1}")
            if any(x < 0 for x in vec):
                raise ValueError(f"{name} entries must be >= 0")

    @classmethod
    def size_objective(cls, n: int, R: int) -> "CoveringIP":
        """Objective sum a_l: lower bound on K+(n, R)."""
        binoms = tuple(binomial(n, l) for l in range(n + 1))
        return cls(n, R, (1,) * (n + 1), binoms, binoms)

    @classmethod
    def zeros_objective(cls, n: int, R: int) -> "CoveringIP":
        """Objective sum (n-l) a_l: lower bound on the zero count phi(n, R)."""
        binoms = tuple(binomial(n, l) for l in range(n + 1))
        return cls(n, R, tuple(n - l for l in range(n + 1)), binoms, binoms)

    def row_coefficient(self, l: int, j: int) -> int:
        """Weight of a_{l+j} in row l."""
        return binomial(l + j, j)

    def constraint_matrix_csv(self) -> str:
        """Rows as CSV: row label, coefficients of a_0..a_n, rhs."""
        lines = ["row," + ",".join(f"a{m}" for m in range(self.n + 1)) + ",rhs"]
        for l in range(self.n + 1):
            coeffs = [0] * (self.n + 1)
            for j in range(self.R + 1):
                if l + j <= self.n:
                    coeffs[l + j] = self.row_coefficient(l, j)
            lines.append(f"{l}," + ",".join(map(str, coeffs)) + f",{self.rhs[l]}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class IPSolution:
    value: int
    profile: tuple[int, ...]
    node_count: int


def _ceildiv(a: int, b: int) -> int:
    return -(-a // b)


def _dual_vector(ip: CoveringIP) -> list[Fraction]:
    """Feasible dual prices y_t, one per row.

    y_t = (min objective coefficient among row t's variables) / b-(min(t+R,n), R).
    For any variable a_m: sum_{j<=R} C(m,j) y_{m-j} <= cost_m, since each
    denominator is at least b-(m, R) and each numerator at most cost_m, so
    sum res_t * y_t never exceeds the cost of any feasible completion.
    """
    n, R = ip.n, ip.R
    out = []
    for t in range(n + 1):
        cmin = min(ip.objective[m] for m in range(t, min(t + R, n) + 1))
        out.append(Fraction(cmin, ball_size_down(n, min(t + R, n), R)))
    return out


def solve(ip: CoveringIP, node_cap: int = DEFAULT_NODE_CAP) -> IPSolution:
    """Depth-first branch and bound, levels fixed from n down to 0.

    State is the residual-demand window of the R partially paid rows; states
    are memoized, values branch ascending from the row-l implied minimum, and
    a rational dual bound prunes non-improving values.
    """
    n, R = ip.n, ip.R
    rhs, caps, costs = ip.rhs, ip.caps, ip.objective
    cvar = [[binomial(l, j) for j in range(R + 1)] for l in range(n + 1)]
    y = _dual_vector(ip)
    suffix = [Fraction(0)] * (n + 2)  # suffix[k+1] = sum_{t<=k} y_t * rhs_t
    for t in range(n + 1):
        suffix[t + 1] = suffix[t] + y[t] * rhs[t]

    memo: dict[tuple[int, tuple[int, ...]], tuple[float, int]] = {}
    nodes = 0

    def dual_bound(l: int, window: tuple[int, ...]) -> Fraction:
        # rows l..l-R+1 carry window residuals; rows below are untouched
        total = suffix[l - R + 1] if l - R + 1 > 0 else Fraction(0)
        for j in range(R):
            t = l - j
            if t >= 0 and window[j]:
                total += y[t] * window[j]
        return total

    def rec(l: int, window: tuple[int, ...]) -> float | int:
        nonlocal nodes
        if l < 0:
            return 0
        key = (l, window)
        hit = memo.get(key)
        if hit is not None:
            return hit[0]
        res_l = window[0] if R else rhs[l]
        lo = res_l if res_l > 0 else 0
        needed = lo
        for j in range(1, min(R, l) + 1):
            res_t = window[j] if j < R else rhs[l - R]
            if res_t > 0:
                d = _ceildiv(res_t, cvar[l][j])
                if d > needed:
                    needed = d
        hi = caps[l] if caps[l] < needed else needed
        best: float | int = INF
        best_v = -1
        cost_l = costs[l]
        for v in range(lo, hi + 1):
            nodes += 1
            if nodes > node_cap:
                raise BudgetExceededError(f"IP node budget {node_cap} exceeded")
            if cost_l and cost_l * v >= best:
                break
            child = []
            for j2 in range(R):
                t = l - 1 - j2
                if t < 0:
                    child.append(0)
                    continue
                src = window[j2 + 1] if j2 + 1 < R else rhs[t]
                pay = cvar[l][j2 + 1] * v
                child.append(src - pay if src > pay else 0)
            child_t = tuple(child)
            if best is not INF and cost_l * v + dual_bound(l - 1, child_t) >= best:
                continue
            sub = rec(l - 1, child_t)
            if sub is not INF:
                total = cost_l * v + sub
                if total < best:
                    best, best_v = total, v
        memo[key] = (best, best_v)
        return best

    window0 = tuple(rhs[n - j] if n - j >= 0 else 0 for j in range(R))
    value = rec(n, window0)
    if value is INF:
        raise ValueError("infeasible covering instance")

    profile = [0] * (n + 1)
    l, window = n, window0
    while l >= 0:
        v = memo[(l, window)][1]
        profile[l] = v
        child = []
        for j2 in range(R):
            t = l - 1 - j2
            if t < 0:
                child.append(0)
                continue
            src = window[j2 + 1] if j2 + 1 < R else rhs[t]
            pay = cvar[l][j2 + 1] * v
            child.append(src - pay if src > pay else 0)
        l, window = l - 1, tuple(child)
    return IPSolution(int(value), tuple(profile), nodes)


def _check_params(n: int, R: int) -> None:
    if not 1 <= R <= n <= MAX_IP_DIMENSION:
        raise ValueError(f"need 1 <= R <= n <= {MAX_IP_DIMENSION}, got n={n}, R={R}")


def ip_plus(n: int, R: int, node_cap: int = DEFAULT_NODE_CAP) -> IPSolution:
    """Exact minimum of sum a_l: the level-profile lower bound on K+(n, R)."""
    _check_params(n, R)
    return solve(CoveringIP.size_objective(n, R), node_cap)


def ip_phi(n: int, R: int, node_cap: int = DEFAULT_NODE_CAP) -> IPSolution:
    """Exact minimum of sum (n-l) a_l: the lower bound on phi(n, R)."""
    _check_params(n, R)
    return solve(CoveringIP.zeros_objective(n, R), node_cap)


def lp_relax_lower(ip: CoveringIP, partial: dict[int, int] | None = None) -> Fraction | float:
    """Admissible rational bound on the optimum given a fixed top-down prefix.

    partial maps levels {n, n-1, ..., k} to chosen values.  The result is the
    prefix cost plus the dual value of the outstanding demands; it never
    exceeds the best integer completion and grows monotonically as the prefix
    is extended (math.inf when the prefix already violates a settled row).
    """
    partial = partial or {}
    n, R = ip.n, ip.R
    expected = set(range(n - len(partial) + 1, n + 1))
    if set(partial) != expected:
        raise ValueError(f"prefix must cover levels {sorted(expected)} contiguously from n")
    for l, v in partial.items():
        if v < 0 or v > ip.caps[l]:
            raise ValueError(f"a_{l} = {v} outside 0..{ip.caps[l]}")

    lmin = n - len(partial) + 1  # lowest fixed level; n+1 when prefix empty
    residual = list(ip.rhs)
    for l, v in partial.items():
        for j in range(min(R, l) + 1):
            residual[l - j] -= binomial(l, j) * v
    fixed_cost = sum(ip.objective[l] * v for l, v in partial.items())

    y = _dual_vector(ip)
    bound = Fraction(0)
    for t in range(n + 1):
        if residual[t] <= 0:
            continue
        if t >= lmin:  # every variable of this row is fixed
            return INF
        bound += y[t] * residual[t]
    return fixed_cost + bound
