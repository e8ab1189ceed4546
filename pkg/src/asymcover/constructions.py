"""Constructions of downward covering codes.

Deterministic builders (diagonal codes, direct sums, projections, coradius
splits) plus the randomized ones (patched sampling, the nu-based sampler,
the inductive power-of-two recursion) and greedy set cover.  Every randomized
operation takes an explicit seed and is reproducible bit for bit.
"""

from __future__ import annotations

import hashlib
import heapq
import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .cube import (
    BITMAP_MAX_N,
    Code,
    DimensionCapError,
    MAX_DIMENSION,
    all_ones,
    ball_down,
    ball_size_down,
    ball_size_up,
    binomial,
    uncovered,
    weight,
)

GREEDY_MAX_N = 26  # greedy / sampling sweeps touch every vertex of Q_n
ALPHA_DEFAULT_CAP = 40


def diagonal_code(n: int, coradius: int) -> Code:
    """Code of size coradius+1 whose i-th extra word has i consecutive zeros.

    Word i+1 (i = 0..coradius) is all ones except for i zeros occupying
    coordinates (i-1)i/2 + 1 through (i-1)i/2 + i.  The zero blocks are
    pairwise disjoint, which is what makes the set cover at radius
    n - coradius; that requires n >= coradius(coradius+1)/2.
    """
    if coradius < 0:
        raise ValueError("coradius must be nonnegative")
    need = coradius * (coradius + 1) // 2
    if n < need:
        raise ValueError(
            f"dimension {n} too small for coradius {coradius}: need n >= {need}"
        )
    top = all_ones(n)
    words = []
    for i in range(coradius + 1):
        zeros = ((1 << i) - 1) << ((i - 1) * i // 2)
        words.append(top ^ zeros)
    return Code.from_words(n, words, r=n - coradius)


def direct_sum(c1: Code, c2: Code) -> Code:
    """All concatenations x|y; covering radii add when both are annotated."""
    n = c1.n + c2.n
    if n > MAX_DIMENSION:
        raise DimensionCapError(f"direct sum dimension {n} exceeds {MAX_DIMENSION}")
    r = c1.r + c2.r if c1.r is not None and c2.r is not None else None
    words = [x | (y << c1.n) for y in c2.words for x in c1.words]
    return Code.from_words(n, words, r=r)


def project_code(code: Code, target_n: int) -> Code:
    """Truncate every word to its first target_n coordinates and deduplicate.

    A code that downward R-covers Q_n projects to one that downward R-covers
    Q_target_n: covering witnesses survive truncation coordinatewise.
    """
    if target_n < 1:
        raise ValueError("target dimension must be at least 1")
    if target_n > code.n:
        raise ValueError("projection cannot increase the dimension")
    if target_n == code.n:
        return code
    mask = (1 << target_n) - 1
    return Code.from_words(target_n, {w & mask for w in code.words}, r=code.r)


@dataclass(frozen=True)
class PatchedCode:
    """Pair (S, T) where S covers everything outside the patch set T.

    delta is the weight put on patch members when comparing candidates:
    delta_weight = |S| + delta * |T|.
    """

    n: int
    R: int
    S: Code
    T: Code
    delta: Fraction

    def __post_init__(self) -> None:
        if self.S.n != self.n or self.T.n != self.n:
            raise ValueError("S and T must live in the same cube as the patched code")
        if self.R < 0:
            raise ValueError("radius must be nonnegative")
        if self.delta < 0:
            raise ValueError("delta must be nonnegative")

    def delta_weight(self) -> Fraction:
        return len(self.S) + self.delta * len(self.T)

    def is_valid(self) -> bool:
        """True when every vertex is covered by S or belongs to T."""
        patch = set(self.T.words)
        return all(v in patch for v in uncovered(self.S, self.R))


@dataclass(frozen=True)
class RandomModel:
    """Levelwise sampling model: vertex v enters with probability p_{w(v)}."""

    seed: int
    level_probs: tuple[float, ...]

    def __post_init__(self) -> None:
        if any(p < 0 or p > 1 for p in self.level_probs):
            raise ValueError("level probabilities must lie in [0, 1]")

    def sample(self) -> list[int]:
        """Walk Q_n in mask order, keeping each vertex independently."""
        n = len(self.level_probs) - 1
        rng = random.Random(self.seed)
        return [v for v in range(1 << n) if rng.random() < self.level_probs[weight(v)]]


def nu(n: int, R: int) -> Fraction:
    """Exact value of sum_j C(n,j) / b+(j,R), the fractional cover measure."""
    if n < 0 or R < 0:
        raise ValueError("parameters must be nonnegative")
    return sum(
        Fraction(binomial(n, j), ball_size_up(n, j, R)) for j in range(n + 1)
    )


def estimate_alpha(R: int, n_cap: int = ALPHA_DEFAULT_CAP) -> Fraction:
    """Empirical surrogate for the sampling constant: max of nu(m,R) m^R / 2^m.

    The true constant is a supremum over all m with no closed form; capping
    the scan keeps the value exact and is safe for the sampler because the
    patch step restores covering regardless of the constant used.
    """
    if R < 1:
        raise ValueError("radius must be at least 1")
    if not 1 <= n_cap <= ALPHA_DEFAULT_CAP:
        raise ValueError(f"n_cap must be between 1 and {ALPHA_DEFAULT_CAP}")
    return max(nu(m, R) * m**R / Fraction(2**m) for m in range(1, n_cap + 1))


def _check_sweep_dim(n: int) -> None:
    if n < 1:
        raise ValueError("dimension must be at least 1")
    if n > GREEDY_MAX_N:
        raise DimensionCapError(f"dimension {n} exceeds the sweep cap {GREEDY_MAX_N}")


def patched_level_probs(n: int, R: int, delta: Fraction, alpha: Fraction) -> tuple[float, ...]:
    """Sampling probabilities min{ln(delta n^R / alpha) / b+(j,R), 1}, p_n = 1.

    The log argument can dip to or below 1 for small delta; the probability
    is then clamped to 0 and the patch absorbs the slack.
    """
    probs = []
    for j in range(n + 1):
        if j == n:
            probs.append(1.0)
            continue
        arg = delta * n**R / alpha
        if arg <= 1:
            probs.append(0.0)
        else:
            probs.append(min(1.0, math.log(arg) / ball_size_up(n, j, R)))
    return tuple(probs)


def random_patched(n: int, R: int, delta, seed: int) -> PatchedCode:
    """Sample S levelwise, then patch: T = everything S fails to cover."""
    if R < 1:
        raise ValueError("radius must be at least 1")
    _check_sweep_dim(n)
    d = Fraction(delta)
    if d < 0:
        raise ValueError("delta must be nonnegative")
    probs = patched_level_probs(n, R, d, estimate_alpha(R))
    model = RandomModel(seed=seed, level_probs=probs)
    s_code = Code.from_words(n, model.sample(), r=R)
    t_code = Code.from_words(n, uncovered(s_code, R))
    return PatchedCode(n=n, R=R, S=s_code, T=t_code, delta=d)


def semi_direct_sum(p: PatchedCode, c: Code) -> Code:
    """(S x Q_k) united with (T x c), with c's k coordinates placed first.

    A vertex (u, x) with x covered by S is handled by (u, s); otherwise x is
    in the patch T and u is covered by c, so (cword, x) works.  Either way
    the result downward R-covers Q_{n+k}.  Requires c annotated with the same
    radius R.
    """
    if c.r is None or c.r != p.R:
        raise ValueError("inner code must carry the same radius annotation as the patched code")
    k = c.n
    n = p.n + k
    if n > MAX_DIMENSION:
        raise DimensionCapError(f"semi-direct sum dimension {n} exceeds {MAX_DIMENSION}")
    words = set()
    for x in p.S.words:
        base = x << k
        words.update(base | u for u in range(1 << k))
    for x in p.T.words:
        base = x << k
        words.update(base | u for u in c.words)
    return Code.from_words(n, words, r=p.R)


def _subseed(base: int, index: int) -> int:
    """Stable 64-bit stream of per-trial seeds derived from a base seed."""
    digest = hashlib.sha256(f"trial:{base}:{index}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def inductive_power2(m: int, R: int, seed: int, trials: int = 32) -> Code:
    """Cover of Q_{2^m} by repeated semi-direct doubling from the base {1}.

    Step j doubles a cover C of Q_{2^j} by pairing it with the best of
    `trials` sampled patched codes at delta = |C| / 2^{2^j}; "best" means
    least delta-weight, first trial winning ties.  The output is verified
    to cover before it is returned.
    """
    if R < 1:
        raise ValueError("radius must be at least 1")
    if m < 0:
        raise ValueError("m must be nonnegative")
    if trials < 1:
        raise ValueError("trials must be at least 1")
    if (1 << m) > GREEDY_MAX_N:
        raise DimensionCapError(f"2^{m} exceeds the sweep cap {GREEDY_MAX_N}")
    code = Code.from_words(1, [1], r=R)
    for j in range(m):
        nj = 1 << j
        delta = Fraction(len(code), 1 << nj)
        best = None
        for t in range(trials):
            cand = random_patched(nj, R, delta, _subseed(seed + j, t))
            w = cand.delta_weight()
            if best is None or w < best[0]:
                best = (w, cand)
        code = semi_direct_sum(best[1], code)
    if uncovered(code, R):
        raise RuntimeError("power-of-two construction produced a non-covering code")
    return code


def random_code_nu(n: int, R: int, seed: int) -> Code:
    """Sample with levelwise probability ln(2^n/nu)/b+(w,R), patch the misses.

    Always returns a covering code: every vertex left uncovered by the random
    part is added verbatim.
    """
    if R < 1:
        raise ValueError("radius must be at least 1")
    _check_sweep_dim(n)
    measure = nu(n, R)
    log_term = math.log(float(Fraction(2**n) / measure))
    probs = tuple(
        min(1.0, log_term / ball_size_up(n, j, R)) for j in range(n + 1)
    )
    model = RandomModel(seed=seed, level_probs=probs)
    base = Code.from_words(n, model.sample(), r=R)
    missing = uncovered(base, R)
    return Code.from_words(n, list(base.words) + missing, r=R)


def _masks_of_weight(n: int, w: int):
    """Masks of fixed popcount in increasing numeric order."""
    if w == 0:
        yield 0
        return
    v = (1 << w) - 1
    limit = 1 << n
    while v < limit:
        yield v
        low = v & -v
        ripple = v + low
        v = ripple | (((v ^ ripple) >> 2) // low)


def greedy_code(n: int, R: int) -> Code:
    """Classic greedy set cover over downward R-balls.

    Repeatedly selects the center covering the most still-uncovered vertices,
    breaking ties toward the smallest mask.  Lazy evaluation: candidates are
    streamed in optimistic-gain order (initial gain depends only on weight)
    and re-queued with their refreshed gain when stale, which never changes
    the selection because stored gains only overestimate.
    """
    if R < 0:
        raise ValueError("radius must be nonnegative")
    _check_sweep_dim(n)
    size = 1 << n
    covered = bytearray(size)
    remaining = size
    chosen = []

    def gain(c: int) -> int:
        return sum(1 for v in ball_down(c, R, n) if not covered[v])

    def mark(c: int) -> int:
        hits = 0
        for v in ball_down(c, R, n):
            if not covered[v]:
                covered[v] = 1
                hits += 1
        return hits

    def stream():
        for w in range(n, -1, -1):
            g = ball_size_down(n, w, R)
            for mask in _masks_of_weight(n, w):
                yield (-g, mask)

    fresh = stream()
    pending = next(fresh, None)
    heap: list[tuple[int, int]] = []
    while remaining:
        if pending is not None and (not heap or pending <= heap[0]):
            key, pending = pending, next(fresh, None)
        else:
            key = heapq.heappop(heap)
        stored, mask = -key[0], key[1]
        actual = gain(mask)
        if actual == stored:
            chosen.append(mask)
            remaining -= mark(mask)
        elif actual > 0:
            heapq.heappush(heap, (-actual, mask))
    return Code.from_words(n, chosen, r=R)


def coradius_split(n: int, coradius: int) -> list[int]:
    """Balanced parts r_i with sum(r_i) = coradius whose diagonal blocks fit.

    Uses the fewest parts M >= ceil(coradius^2 / (2n - coradius)) such that
    the per-part dimension floors r_i(r_i+1)/2 sum to at most n.  M = coradius
    (all parts 1, total floor coradius <= n) always fits, so the scan
    terminates.
    """
    if not 1 <= coradius <= n:
        raise ValueError("need 1 <= coradius <= n")
    d = 2 * n - coradius
    m0 = max(1, -(-(coradius * coradius) // d))
    for m in range(m0, coradius + 1):
        q, s = divmod(coradius, m)
        parts = [q + 1] * s + [q] * (m - s)
        if sum(p * (p + 1) // 2 for p in parts) <= n:
            return parts
    raise AssertionError("unreachable: the all-ones split always fits")


def general_upper_size(n: int, coradius: int) -> int:
    """Size of general_upper_code(n, coradius) without building it."""
    return math.prod(p + 1 for p in coradius_split(n, coradius))


def general_upper_code(n: int, coradius: int) -> Code:
    """Direct sum of diagonal blocks realizing an exact coradius split.

    Each part r_i gets a block of dimension r_i(r_i+1)/2 (the first block
    absorbs leftover coordinates), so the blocks' coradii sum to exactly
    `coradius` and the result downward (n - coradius)-covers Q_n with
    size = prod(r_i + 1).
    """
    if n > MAX_DIMENSION:
        raise DimensionCapError(f"dimension {n} exceeds {MAX_DIMENSION}")
    parts = coradius_split(n, coradius)
    dims = [p * (p + 1) // 2 for p in parts]
    dims[0] += n - sum(dims)
    code = diagonal_code(dims[0], parts[0])
    for dim, part in zip(dims[1:], parts[1:]):
        code = direct_sum(code, diagonal_code(dim, part))
    return code
