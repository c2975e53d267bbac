"""Exhaustive generation and counting of two-type complete simple games.

Games with one winner row come from the compact (n1, n2, m1, m2) description,
games with more rows from the staircase description (first coordinates
strictly decreasing, totals strictly increasing).  Every candidate passes the
full canonical-form validation before it is counted, so the census is defined
by the parameterization theorem rather than by the compact descriptions.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterator

from .lp import is_weighted
from .model import ClassSizes, CompleteGame, GameValidationError

DEFAULT_COUNT_CAP = 10


@dataclass(frozen=True)
class CensusRow:
    n: int
    t: int
    r: int | None
    csg_count: int
    wvg_count: int

    def __post_init__(self):
        if self.wvg_count > self.csg_count:
            raise ValueError("weighted games cannot outnumber complete games")


def fibonacci_csg_formula(n: int) -> int:
    """Closed form for the number of two-type complete games on n voters."""
    if n < 2:
        raise ValueError("two types need at least two voters")
    a, b = 1, 1  # Fib(1), Fib(2)
    for _ in range(n + 4):
        a, b = b, a + b
    return b - (n * n + 4 * n + 8)


def _staircases(n1: int, n2: int) -> Iterator[tuple[tuple[int, int], ...]]:
    """Row sets with >= 2 rows: first entries falling, totals rising."""

    def extend(rows: list[tuple[int, int]]) -> Iterator[tuple[tuple[int, int], ...]]:
        if len(rows) >= 2:
            yield tuple(rows)
        m1, m2 = rows[-1]
        for nm1 in range(m1 - 1, -1, -1):
            for nm2 in range(m1 + m2 + 1 - nm1, n2 + 1):
                rows.append((nm1, nm2))
                yield from extend(rows)
                rows.pop()

    for m1 in range(1, n1 + 1):
        for m2 in range(0, n2 + 1):
            yield from extend([(m1, m2)])


def _shard_games(n: int, n1: int) -> Iterator[CompleteGame]:
    """All valid two-type games with the given first class size."""
    n2 = n - n1
    sizes = ClassSizes((n1, n2))
    for m1 in range(1, n1 + 1):
        for m2 in range(0, n2):
            try:
                yield CompleteGame(sizes, ((m1, m2),))
            except GameValidationError:
                continue
    for rows in _staircases(n1, n2):
        try:
            yield CompleteGame(sizes, rows)
        except GameValidationError:
            continue


def enumerate_csg_t2(n: int) -> Iterator[CompleteGame]:
    """Every complete simple game with exactly two types of voters, once."""
    if n < 2:
        raise ValueError("two types need at least two voters")
    for n1 in range(1, n):
        yield from _shard_games(n, n1)


def count_wvg_t2(n: int, r: int | None = None, cap: int = DEFAULT_COUNT_CAP,
                 threads: int | None = None) -> CensusRow:
    """Census of two-type games: complete and weighted counts.

    ``r`` restricts to games with that many winner rows.  Weightedness is
    decided by the exact LP for every candidate, so ``n`` is capped
    (default 10).  Shards over the first class size run in a thread pool when
    ``threads`` is given; totals do not depend on scheduling.
    """
    if n > cap:
        raise ValueError(f"census capped at n={cap}, got {n}")

    def shard(n1: int) -> tuple[int, int]:
        csg = wvg = 0
        for game in _shard_games(n, n1):
            if r is not None and game.r != r:
                continue
            csg += 1
            if is_weighted(game)[0]:
                wvg += 1
        return csg, wvg

    shards = range(1, n)
    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(shard, shards))
    else:
        results = [shard(n1) for n1 in shards]
    csg = sum(c for c, _ in results)
    wvg = sum(w for _, w in results)
    return CensusRow(n=n, t=2, r=r, csg_count=csg, wvg_count=wvg)


def wm_t2_r1_formula(n: int) -> int:
    """Closed form for the number of weighted two-type one-row games."""
    if n < 2:
        raise ValueError("two types need at least two voters")
    return n - 1 if n <= 2 else 2 * (n - 2) ** 2 + 2


def wm_t2_upper_bound(n: int) -> float:
    """Polynomial upper bound n^5/15 + 4 n^4 on the two-type weighted count."""
    return n ** 5 / 15 + 4 * n ** 4
