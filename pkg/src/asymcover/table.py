"""Bound-table assembly: per-cell aggregation, propagation, render, cache.

The working grid always spans n = 1..n_max with the radius-zero column and
every R up to min(n, r_max), so monotonicity chains and direct-sum splits
have their neighbors available; rendering then restricts to the requested
window.  The cache is a JSON map "n,R" -> record, written atomically.
"""

from __future__ import annotations

import json
import os
import tempfile
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .bounds import BoundRecord, Budget, best_bounds, propagate

CACHE_ENV = "ASYMCOVER_CACHE"


@dataclass(frozen=True)
class TableSpec:
    """What slice of the bound table to produce and how hard to try."""

    n_min: int
    n_max: int
    r_min: int
    r_max: int
    budget: Budget = field(default_factory=Budget)
    cache_path: str | None = None

    def __post_init__(self) -> None:
        if not 1 <= self.n_min <= self.n_max:
            raise ValueError("need 1 <= n_min <= n_max")
        if not 0 <= self.r_min <= self.r_max:
            raise ValueError("need 0 <= r_min <= r_max")

    def cells(self) -> list[tuple[int, int]]:
        """Full working domain, a superset of the rendered window."""
        return [
            (n, R)
            for n in range(1, self.n_max + 1)
            for R in range(0, min(n, self.r_max) + 1)
        ]


def load_cache(path: str) -> dict[tuple[int, int], BoundRecord]:
    with open(path, encoding="utf-8") as fh:
        raw = json.load(fh)
    grid = {}
    for key, rec in raw.items():
        n_text, r_text = key.split(",")
        n, R = int(n_text), int(r_text)
        grid[(n, R)] = BoundRecord(
            n=n,
            R=R,
            lower=rec["lower"],
            upper=rec["upper"],
            lower_tag=rec["lower_tag"],
            upper_tag=rec["upper_tag"],
        )
    return grid


def save_cache(path: str, grid: dict[tuple[int, int], BoundRecord]) -> None:
    payload = {
        f"{n},{R}": {
            "lower": rec.lower,
            "upper": rec.upper,
            "lower_tag": rec.lower_tag,
            "upper_tag": rec.upper_tag,
            "exact": rec.exact,
        }
        for (n, R), rec in sorted(grid.items())
    }
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".cache-", suffix=".json")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=1, sort_keys=True)
            fh.write("\n")
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def build_grid(spec: TableSpec, workers: int = 1) -> dict[tuple[int, int], BoundRecord]:
    """Aggregate per-cell bounds (cache hits skip the work), then propagate."""
    cached: dict[tuple[int, int], BoundRecord] = {}
    if spec.cache_path and os.path.exists(spec.cache_path):
        cached = load_cache(spec.cache_path)
    cells = spec.cells()
    missing = [cell for cell in cells if cell not in cached]
    grid = {cell: cached[cell] for cell in cells if cell in cached}
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = pool.map(
                lambda cell: best_bounds(cell[0], cell[1], spec.budget), missing
            )
            grid.update(zip(missing, results))
    else:
        for n, R in missing:
            grid[(n, R)] = best_bounds(n, R, spec.budget)
    grid = propagate(grid)
    if spec.cache_path:
        save_cache(spec.cache_path, grid)
    return grid


def render_cell(rec: BoundRecord) -> str:
    """'v[lt/ut]' or 'a-b[lt/ut]'; definitional cells are printed bare."""
    if rec.R == 0 or rec.R >= rec.n:
        return str(rec.lower)
    if rec.exact:
        return f"{rec.lower}[{rec.lower_tag}/{rec.upper_tag}]"
    return f"{rec.lower}-{rec.upper}[{rec.lower_tag}/{rec.upper_tag}]"


def render_table(grid: dict[tuple[int, int], BoundRecord], spec: TableSpec) -> str:
    """Rows R, columns n; cells outside the triangle (R > n) are the constant 1."""
    ns = list(range(spec.n_min, spec.n_max + 1))
    rows = []
    header = ["R\\n"] + [str(n) for n in ns]
    rows.append(header)
    for R in range(spec.r_min, spec.r_max + 1):
        row = [str(R)]
        for n in ns:
            if R > n:
                row.append("1")
            else:
                row.append(render_cell(grid[(n, R)]))
        rows.append(row)
    widths = [max(len(row[c]) for row in rows) for c in range(len(header))]
    lines = [
        "  ".join(cell.rjust(widths[c]) for c, cell in enumerate(row)) for row in rows
    ]
    return "\n".join(lines)
