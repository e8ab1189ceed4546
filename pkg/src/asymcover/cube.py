"""Bit-level primitives for the hypercube Q_n under the downward covering order.

Vertices are int bitmasks; coordinate 1 is the least significant bit.  A word c
downward R-covers y when y <= c coordinate-wise and weight(c) - weight(y) <= R.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

MAX_DIMENSION = 62  # masks and binomials stay inside unsigned 64-bit range
BITMAP_MAX_N = 30   # covers()/uncovered() allocate one flag per vertex of Q_n


class DimensionCapError(ValueError):
    """An operation would exceed its documented dimension cap."""


def all_ones(n: int) -> int:
    """Top element of Q_n: every coordinate set."""
    return (1 << n) - 1


def weight(v: int) -> int:
    """Number of ones of a vertex (its level)."""
    return v.bit_count()


def dominated(x: int, c: int) -> bool:
    """True iff x lies below c coordinate-wise."""
    return x & c == x


def binomial(n: int, k: int) -> int:
    """Exact C(n, k), zero outside 0 <= k <= n."""
    if not 0 <= n <= MAX_DIMENSION:
        raise DimensionCapError(f"binomial needs 0 <= n <= {MAX_DIMENSION}, got n={n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def ball_size_up(n: int, l: int, R: int) -> int:
    """Vertices within R upward steps of a level-l vertex: sum_{j<=R} C(n-l, j)."""
    _check_level(n, l, R)
    return sum(binomial(n - l, j) for j in range(min(R, n - l) + 1))


def ball_size_down(n: int, l: int, R: int) -> int:
    """Vertices within R downward steps of a level-l vertex: sum_{j<=R} C(l, j)."""
    _check_level(n, l, R)
    return sum(binomial(l, j) for j in range(min(R, l) + 1))


def _check_level(n: int, l: int, R: int) -> None:
    if not 1 <= n <= MAX_DIMENSION:
        raise DimensionCapError(f"need 1 <= n <= {MAX_DIMENSION}, got n={n}")
    if not 0 <= l <= n:
        raise ValueError(f"level {l} outside 0..{n}")
    if R < 0:
        raise ValueError(f"radius must be >= 0, got {R}")


def ball_down(c: int, R: int, n: int) -> list[int]:
    """All vertices downward R-covered by c, ascending.

    Enumerates subsets of at most R set bits of c to clear, so the cost is the
    ball size itself rather than 2^n.
    """
    _check_vertex(c, n)
    if R < 0:
        raise ValueError(f"radius must be >= 0, got {R}")
    positions = [i for i in range(n) if c >> i & 1]
    out = []
    for j in range(min(R, len(positions)) + 1):
        for drop in combinations(positions, j):
            m = c
            for p in drop:
                m ^= 1 << p
            out.append(m)
    out.sort()
    return out


def _check_vertex(v: int, n: int) -> None:
    if not 1 <= n <= MAX_DIMENSION:
        raise DimensionCapError(f"need 1 <= n <= {MAX_DIMENSION}, got n={n}")
    if not 0 <= v < (1 << n):
        raise ValueError(f"vertex {v} outside Q_{n}")


@dataclass(frozen=True)
class Code:
    """A duplicate-free vertex set of Q_n with an optional radius annotation.

    words is kept sorted ascending, so iteration order is deterministic.
    """

    n: int
    words: tuple[int, ...]
    r: int | None = None

    def __post_init__(self) -> None:
        if not 1 <= self.n <= MAX_DIMENSION:
            raise DimensionCapError(f"need 1 <= n <= {MAX_DIMENSION}, got n={self.n}")
        if self.r is not None and self.r < 0:
            raise ValueError(f"radius annotation must be >= 0, got {self.r}")
        top = 1 << self.n
        prev = -1
        for w in self.words:
            if not 0 <= w < top:
                raise ValueError(f"word {w} outside Q_{self.n}")
            if w <= prev:
                raise ValueError("words must be strictly ascending; use Code.from_words")
            prev = w

    @classmethod
    def from_words(cls, n: int, words, r: int | None = None) -> "Code":
        return cls(n, tuple(sorted(set(words))), r)

    def __len__(self) -> int:
        return len(self.words)

    def __iter__(self):
        return iter(self.words)

    def __contains__(self, v: int) -> bool:
        lo, hi = 0, len(self.words)
        while lo < hi:
            mid = (lo + hi) // 2
            if self.words[mid] < v:
                lo = mid + 1
            else:
                hi = mid
        return lo < len(self.words) and self.words[lo] == v


def level_profile(code: Code) -> tuple[int, ...]:
    """Count of codewords per level, index 0..n."""
    counts = [0] * (code.n + 1)
    for w in code.words:
        counts[w.bit_count()] += 1
    return tuple(counts)


def _cover_flags(code: Code, R: int) -> tuple[bytearray, int]:
    """Marking sweep over downward balls; returns (flags, marked count)."""
    n = code.n
    if n > BITMAP_MAX_N:
        raise DimensionCapError(
            f"covering sweep allocates 2^{n} flags; cap is n <= {BITMAP_MAX_N}"
        )
    if R < 0:
        raise ValueError(f"radius must be >= 0, got {R}")
    flags = bytearray(1 << n)
    marked = 0
    total = 1 << n
    for c in code.words:
        positions = [i for i in range(n) if c >> i & 1]
        for j in range(min(R, len(positions)) + 1):
            for drop in combinations(positions, j):
                m = c
                for p in drop:
                    m ^= 1 << p
                if not flags[m]:
                    flags[m] = 1
                    marked += 1
        if marked == total:
            break
    return flags, marked


def covers(code: Code, R: int) -> bool:
    """True iff every vertex of Q_n is downward R-covered by some codeword."""
    _, marked = _cover_flags(code, R)
    return marked == (1 << code.n)


def uncovered(code: Code, R: int) -> list[int]:
    """Vertices not downward R-covered, ascending; empty iff covers(code, R)."""
    flags, marked = _cover_flags(code, R)
    if marked == (1 << code.n):
        return []
    return [v for v in range(1 << code.n) if not flags[v]]


def contraction(code: Code, i: int) -> Code:
    """Keep words with a 1 at coordinate i, then delete that coordinate.

    Preserves downward R-covering of the smaller cube.
    """
    _check_coordinate(code, i)
    if code.n < 2:
        raise ValueError("contraction needs n >= 2")
    return Code.from_words(code.n - 1, (_drop_bit(w, i) for w in code.words if w >> (i - 1) & 1), code.r)


def shortening(code: Code, i: int) -> Code:
    """Keep words with a 0 at coordinate i, then delete that coordinate."""
    _check_coordinate(code, i)
    if code.n < 2:
        raise ValueError("shortening needs n >= 2")
    return Code.from_words(code.n - 1, (_drop_bit(w, i) for w in code.words if not w >> (i - 1) & 1), code.r)


def _check_coordinate(code: Code, i: int) -> None:
    if not 1 <= i <= code.n:
        raise ValueError(f"coordinate {i} outside 1..{code.n}")


def _drop_bit(w: int, i: int) -> int:
    low = w & ((1 << (i - 1)) - 1)
    return low | (w >> i) << (i - 1)


def complement_ones(code: Code) -> Code:
    """Flip every coordinate of every word (the 1's complement image)."""
    top = all_ones(code.n)
    return Code.from_words(code.n, (top ^ w for w in code.words), code.r)
