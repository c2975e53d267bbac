"""Canonical data model for complete simple games.

A complete simple game is stored as a vector of class sizes together with the
matrix of its shift-minimal winning coalition profiles.  A coalition profile
``(m_1, ..., m_t)`` counts the participating voters per equivalence class,
strongest class first.  The partial order used throughout is the shift order:
``a`` is at least as strong as ``b`` iff ``b`` can be reached from ``a`` by
repeatedly deleting a member or demoting a member to the next weaker class.
Operationally we use the equivalent prefix-sum test (see ``shift_compare``).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterator, Sequence

Profile = tuple[int, ...]


class ShiftOrdering(enum.Enum):
    LESS_EQ = "less_eq"
    GREATER_EQ = "greater_eq"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"


class GameValidationError(ValueError):
    """A (sizes, winners) pair violates one of the canonical-form properties.

    ``prop`` identifies the violated property: "shape" for malformed input,
    otherwise one of "i", "ii", "iii", "iv".  ``rows`` / ``column`` carry the
    offending 0-based indices where applicable.
    """

    def __init__(self, prop: str, message: str, rows: tuple[int, ...] = (),
                 column: int | None = None):
        super().__init__(f"property ({prop}): {message}")
        self.prop = prop
        self.rows = rows
        self.column = column


@dataclass(frozen=True)
class ClassSizes:
    """Sizes (n_1, ..., n_t) of the equivalence classes, strongest first."""

    counts: Profile

    def __post_init__(self):
        object.__setattr__(self, "counts", tuple(int(c) for c in self.counts))
        if not self.counts:
            raise ValueError("at least one equivalence class is required")
        if any(c < 1 for c in self.counts):
            raise ValueError(f"class sizes must be positive: {self.counts}")

    @property
    def t(self) -> int:
        return len(self.counts)

    @property
    def n(self) -> int:
        return sum(self.counts)

    def contains(self, profile: Sequence[int]) -> bool:
        return len(profile) == self.t and all(
            0 <= m <= c for m, c in zip(profile, self.counts))

    def check_profile(self, profile: Sequence[int]) -> Profile:
        p = tuple(int(m) for m in profile)
        if len(p) != self.t:
            raise ValueError(f"profile {p} has wrong dimension for sizes {self.counts}")
        if not self.contains(p):
            raise ValueError(f"profile {p} out of range for sizes {self.counts}")
        return p

    def profiles(self) -> Iterator[Profile]:
        """All Prod(n_i + 1) profiles, in mixed-radix order."""
        return product(*(range(c + 1) for c in self.counts))


def shift_compare(a: Sequence[int], b: Sequence[int]) -> ShiftOrdering:
    """Compare two profiles in the shift order via prefix-sum dominance.

    ``a`` is at least as strong as ``b`` iff every prefix sum of ``a`` is at
    least the corresponding prefix sum of ``b``.  This matches the closure of
    the two generator moves (verified against brute-force search in tests).
    """
    if len(a) != len(b):
        raise ValueError(f"dimension mismatch: {len(a)} vs {len(b)}")
    ge = le = True
    pa = pb = 0
    for x, y in zip(a, b):
        pa += x
        pb += y
        if pa < pb:
            ge = False
        if pa > pb:
            le = False
    if ge and le:
        return ShiftOrdering.EQUAL
    if ge:
        return ShiftOrdering.GREATER_EQ
    if le:
        return ShiftOrdering.LESS_EQ
    return ShiftOrdering.INCOMPARABLE


def dominates(a: Sequence[int], b: Sequence[int]) -> bool:
    """True iff ``a`` is at least as strong as ``b`` in the shift order."""
    pa = pb = 0
    for x, y in zip(a, b):
        pa += x
        pb += y
        if pa < pb:
            return False
    return True


@dataclass(frozen=True)
class CompleteGame:
    """A complete simple game in canonical (sizes, winners) form.

    Construction validates the four canonical-form properties, so every held
    instance is a valid game.  Instances are immutable and hashable.
    """

    sizes: ClassSizes
    winners: tuple[Profile, ...]

    def __post_init__(self):
        if not isinstance(self.sizes, ClassSizes):
            object.__setattr__(self, "sizes", ClassSizes(tuple(self.sizes)))
        object.__setattr__(
            self, "winners", tuple(tuple(int(m) for m in row) for row in self.winners))
        _validate(self.sizes, self.winners)

    @property
    def t(self) -> int:
        return self.sizes.t

    @property
    def n(self) -> int:
        return self.sizes.n

    @property
    def r(self) -> int:
        return len(self.winners)


def _validate(sizes: ClassSizes, winners: tuple[Profile, ...]) -> None:
    t = sizes.t
    if not winners:
        raise GameValidationError("shape", "no shift-minimal winning profiles given")
    for i, row in enumerate(winners):
        if len(row) != t:
            raise GameValidationError(
                "shape", f"row {i} has {len(row)} entries, expected {t}", rows=(i,))
    # (i): integral entries in range, top-left entry positive.
    for i, row in enumerate(winners):
        for j, m in enumerate(row):
            if not 0 <= m <= sizes.counts[j]:
                raise GameValidationError(
                    "i", f"entry m[{i}][{j}]={m} outside [0, {sizes.counts[j]}]",
                    rows=(i,), column=j)
    if winners[0][0] <= 0:
        raise GameValidationError("i", "m[0][0] must be positive", rows=(0,), column=0)
    # (ii): rows pairwise incomparable.
    for i in range(len(winners)):
        for j in range(i + 1, len(winners)):
            if shift_compare(winners[i], winners[j]) is not ShiftOrdering.INCOMPARABLE:
                raise GameValidationError(
                    "ii", f"rows {i} and {j} are shift-comparable", rows=(i, j))
    # (iii): adjacent classes genuinely differ.
    for j in range(t - 1):
        if not any(row[j] > 0 and row[j + 1] < sizes.counts[j + 1] for row in winners):
            raise GameValidationError(
                "iii", f"no row separates classes {j} and {j + 1}", column=j)
    # (iv): strictly decreasing lexicographic row order.
    for i in range(len(winners) - 1):
        if not winners[i] > winners[i + 1]:
            raise GameValidationError(
                "iv", f"rows {i} and {i + 1} not strictly lex-decreasing", rows=(i, i + 1))


def validate_complete_game(sizes, winners) -> CompleteGame:
    """Validate (sizes, winners) and return the game; raises GameValidationError."""
    if not isinstance(sizes, ClassSizes):
        sizes = ClassSizes(tuple(sizes))
    return CompleteGame(sizes, tuple(tuple(row) for row in winners))


def is_winning(game: CompleteGame, profile: Sequence[int]) -> bool:
    """True iff the profile dominates some shift-minimal winning profile."""
    p = game.sizes.check_profile(profile)
    return any(dominates(p, row) for row in game.winners)


def _down_moves(sizes: ClassSizes, p: Profile) -> Iterator[Profile]:
    t = sizes.t
    for i in range(t):
        if p[i] > 0:
            yield p[:i] + (p[i] - 1,) + p[i + 1:]
            if i + 1 < t and p[i + 1] < sizes.counts[i + 1]:
                yield p[:i] + (p[i] - 1, p[i + 1] + 1) + p[i + 2:]


def _up_moves(sizes: ClassSizes, p: Profile) -> Iterator[Profile]:
    t = sizes.t
    for i in range(t):
        if p[i] < sizes.counts[i]:
            yield p[:i] + (p[i] + 1,) + p[i + 1:]
            if i + 1 < t and p[i + 1] > 0:
                yield p[:i] + (p[i] + 1, p[i + 1] - 1) + p[i + 2:]


def _rank(p: Profile, t: int) -> int:
    # Strictly decreases under both generator moves, so processing profiles in
    # increasing rank order sees every down-neighbour first.
    return sum((t - k) * m for k, m in enumerate(p))


@lru_cache(maxsize=None)
def winning_table(game: CompleteGame) -> dict[Profile, bool]:
    """Winning flag for every profile, by upward closure of the winner rows."""
    t = game.t
    rows = set(game.winners)
    table: dict[Profile, bool] = {}
    for p in sorted(game.sizes.profiles(), key=lambda p: _rank(p, t)):
        table[p] = p in rows or any(table[q] for q in _down_moves(game.sizes, p))
    return table


@lru_cache(maxsize=None)
def shift_maximal_losing(game: CompleteGame) -> tuple[Profile, ...]:
    """Shift-maximal losing profiles, strictly decreasing lexicographically."""
    table = winning_table(game)
    losing = []
    for p, win in table.items():
        if not win and all(table[q] for q in _up_moves(game.sizes, p)):
            losing.append(p)
    result = tuple(sorted(losing, reverse=True))
    if game.t == 2:
        assert len(result) <= game.r + 1
    return result


def isomorphic(g1: CompleteGame, g2: CompleteGame) -> bool:
    """Games are isomorphic exactly when their canonical forms coincide."""
    return g1.sizes == g2.sizes and g1.winners == g2.winners
