"""Building canonical forms from explicit games.

Two entry points: ``canonicalize`` turns a weighted representation into its
canonical (sizes, winners) form without materialising a truth table, and
``canonicalize_truth_table`` does the same for an explicit characteristic
function.  Both discover the voter equivalence classes of Isbell's
desirability relation; note that voters with different weights can still be
equivalent, so grouping by weight alone is not enough.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .model import ClassSizes, CompleteGame, Profile, _down_moves

MAX_TRUTH_TABLE_VOTERS = 24


class DegenerateGameError(ValueError):
    """All coalitions winning, or all losing."""


class NotCompleteError(ValueError):
    """The desirability relation of the game is not a total preorder."""


class Desirability(enum.Enum):
    FIRST_STRONGER = "first_stronger"
    SECOND_STRONGER = "second_stronger"
    EQUIVALENT = "equivalent"
    INCOMPARABLE = "incomparable"


@dataclass(frozen=True)
class IntegerRepresentation:
    """Integer quota plus one non-negative integer weight per voter.

    Weights are stored non-increasing; the grand coalition must win and the
    empty coalition lose.
    """

    quota: int
    weights: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "quota", int(self.quota))
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        if self.quota < 1:
            raise ValueError(f"quota must be at least 1, got {self.quota}")
        if not self.weights:
            raise ValueError("at least one voter is required")
        if any(w < 0 for w in self.weights):
            raise ValueError("weights must be non-negative")
        if any(a < b for a, b in zip(self.weights, self.weights[1:])):
            raise ValueError("weights must be sorted non-increasing")
        if sum(self.weights) < self.quota:
            raise ValueError("grand coalition must reach the quota")

    @property
    def n(self) -> int:
        return len(self.weights)

    def total(self) -> int:
        return sum(self.weights)


@dataclass(frozen=True)
class TypedRepresentation:
    """Integer quota plus one weight per equivalence class.

    Weights are non-increasing; strict decrease between distinct classes is a
    property of representations of an actual game and is checked there, not
    here.
    """

    quota: int
    class_weights: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "quota", int(self.quota))
        object.__setattr__(
            self, "class_weights", tuple(int(w) for w in self.class_weights))
        if self.quota < 1:
            raise ValueError(f"quota must be at least 1, got {self.quota}")
        if not self.class_weights:
            raise ValueError("at least one class weight is required")
        if any(w < 0 for w in self.class_weights):
            raise ValueError("class weights must be non-negative")
        if any(a < b for a, b in zip(self.class_weights, self.class_weights[1:])):
            raise ValueError("class weights must be sorted non-increasing")

    @property
    def t(self) -> int:
        return len(self.class_weights)

    def per_voter(self, sizes) -> IntegerRepresentation:
        """Expand to one weight per voter for the given class sizes."""
        counts = sizes.counts if hasattr(sizes, "counts") else tuple(sizes)
        if len(counts) != self.t:
            raise ValueError("class count mismatch")
        weights = tuple(w for w, c in zip(self.class_weights, counts) for _ in range(c))
        return IntegerRepresentation(self.quota, weights)

    def weighted_total(self, sizes) -> int:
        counts = sizes.counts if hasattr(sizes, "counts") else tuple(sizes)
        return sum(w * c for w, c in zip(self.class_weights, counts))


@dataclass(frozen=True)
class TypePartition:
    """Voter indices (0-based) grouped by equivalence class, strongest first."""

    classes: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "classes", tuple(tuple(int(i) for i in c) for c in self.classes))
        seen = [i for c in self.classes for i in c]
        if sorted(seen) != list(range(len(seen))):
            raise ValueError("classes must partition the voter indices 0..n-1")
        if any(not c for c in self.classes):
            raise ValueError("classes must be non-empty")

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.classes)


@dataclass(frozen=True)
class TruthTableGame:
    """Simple game as a bit-vector over all 2^n coalitions.

    Bit ``s`` of ``bits`` is set iff the coalition with characteristic bitmask
    ``s`` wins (voter ``i`` corresponds to bit ``1 << i``).  Construction
    enforces losing empty set, winning grand coalition and monotonicity.
    """

    n: int
    bits: int

    def __post_init__(self):
        if not 1 <= self.n <= MAX_TRUTH_TABLE_VOTERS:
            raise ValueError(
                f"truth tables support 1..{MAX_TRUTH_TABLE_VOTERS} voters, got {self.n}")
        size = 1 << self.n
        if not 0 <= self.bits < (1 << size):
            raise ValueError("bit-vector length does not match voter count")
        if self.bits & 1:
            raise DegenerateGameError("empty coalition must lose")
        if not (self.bits >> (size - 1)) & 1:
            raise DegenerateGameError("grand coalition must win")
        full = (1 << size) - 1
        for i in range(self.n):
            without_i = _mask_without(self.n, i)
            grown = (self.bits & without_i) << (1 << i)
            if grown & ~self.bits & full:
                raise ValueError(f"not monotone: adding voter {i} can turn winning to losing")

    def wins(self, coalition: int) -> bool:
        return bool((self.bits >> coalition) & 1)

    @classmethod
    def from_winning_sets(cls, n: int, winning_sets) -> "TruthTableGame":
        """Build from minimal winning coalitions given as iterables of voter indices."""
        masks = [sum(1 << i for i in s) for s in winning_sets]
        bits = 0
        for s in range(1 << n):
            if any(s & m == m for m in masks):
                bits |= 1 << s
        return cls(n, bits)

    @classmethod
    def from_representation(cls, rep: IntegerRepresentation) -> "TruthTableGame":
        if rep.n > MAX_TRUTH_TABLE_VOTERS:
            raise ValueError(f"truth tables are capped at {MAX_TRUTH_TABLE_VOTERS} voters")
        size = 1 << rep.n
        weight = [0] * size
        bits = 0
        for s in range(1, size):
            low = s & -s
            weight[s] = weight[s ^ low] + rep.weights[low.bit_length() - 1]
            if weight[s] >= rep.quota:
                bits |= 1 << s
        return cls(rep.n, bits)


def _mask_without(n: int, i: int) -> int:
    # Bits at subset indices s with bit i of s clear: blocks of 2^i ones with
    # period 2^(i+1), replicated across the 2^n positions.
    size = 1 << n
    block = (1 << (1 << i)) - 1
    period = 1 << (i + 1)
    repunit = ((1 << size) - 1) // ((1 << period) - 1)
    return block * repunit


def _at_least_as_desirable(game: TruthTableGame, i: int, j: int) -> bool:
    """True iff swapping j for i never turns a winning coalition losing."""
    size = 1 << game.n
    full = (1 << size) - 1
    with_j_not_i = ~_mask_without(game.n, j) & _mask_without(game.n, i) & full
    shift = (1 << j) - (1 << i)
    selected = game.bits & with_j_not_i
    moved = selected >> shift if shift > 0 else selected << -shift
    return not (moved & ~game.bits & full)


def desirability(game: TruthTableGame, i: int, j: int) -> Desirability:
    """Isbell desirability between two voters (0-based indices)."""
    if i == j or not (0 <= i < game.n and 0 <= j < game.n):
        raise ValueError(f"need two distinct voter indices in 0..{game.n - 1}")
    i_ge = _at_least_as_desirable(game, i, j)
    j_ge = _at_least_as_desirable(game, j, i)
    if i_ge and j_ge:
        return Desirability.EQUIVALENT
    if i_ge:
        return Desirability.FIRST_STRONGER
    if j_ge:
        return Desirability.SECOND_STRONGER
    return Desirability.INCOMPARABLE


def is_complete(game: TruthTableGame) -> bool:
    """True iff every pair of voters is comparable under desirability."""
    return all(
        desirability(game, i, j) is not Desirability.INCOMPARABLE
        for i in range(game.n) for j in range(i + 1, game.n))


def _profile_weight(groups: list[list], prefix: list[list], m: Profile) -> object:
    return sum(pre[k] for pre, k in zip(prefix, m))


def _prefix_sums(values) -> list:
    out = [0]
    for v in values:
        out.append(out[-1] + v)
    return out


def _winning_tables(quota, groups: list[list]) -> dict[Profile, bool]:
    """Profile -> winning flag, evaluated from per-voter weights.

    Within a group the heaviest and the lightest choice of members must agree
    on the outcome; this is asserted because it certifies that earlier merges
    really combined equivalent voters only.
    """
    heavy = [_prefix_sums(g) for g in groups]
    light = [_prefix_sums(g[::-1]) for g in groups]
    table = {}
    for m in product(*(range(len(g) + 1) for g in groups)):
        win = _profile_weight(groups, heavy, m) >= quota
        assert win == (_profile_weight(groups, light, m) >= quota), \
            "weight groups contain non-equivalent voters"
        table[m] = win
    return table


def _try_merge(quota, groups: list[list], g: int) -> bool:
    """Check whether groups g and g+1 hold equivalent voters.

    True iff demoting one member from g to g+1 never turns a winning profile
    losing, over all profiles where the move applies.
    """
    sizes = [len(x) for x in groups]
    heavy = [_prefix_sums(x) for x in groups]
    for m in product(*(range(c + 1) for c in sizes)):
        if m[g] < 1 or m[g + 1] >= sizes[g + 1]:
            continue
        if _profile_weight(groups, heavy, m) >= quota:
            moved = list(m)
            moved[g] -= 1
            moved[g + 1] += 1
            if _profile_weight(groups, heavy, tuple(moved)) < quota:
                return False
    return True


def _canonicalize_weights(quota, weights) -> tuple[CompleteGame, TypePartition]:
    """Canonical form for a (possibly rational) weighted representation."""
    order = sorted(range(len(weights)), key=lambda i: weights[i], reverse=True)
    total = sum(weights)
    if quota <= 0 or total < quota:
        raise DegenerateGameError("representation does not define a proper game")

    # Start from equal-weight groups and merge adjacent groups that the game
    # itself cannot distinguish.
    groups: list[list] = []
    members: list[list[int]] = []
    for idx in order:
        w = weights[idx]
        if groups and groups[-1][-1] == w:
            groups[-1].append(w)
            members[-1].append(idx)
        else:
            groups.append([w])
            members.append([idx])
    changed = True
    while changed:
        changed = False
        g = 0
        while g + 1 < len(groups):
            if _try_merge(quota, groups, g):
                groups[g].extend(groups[g + 1])
                members[g].extend(members[g + 1])
                del groups[g + 1], members[g + 1]
                changed = True
            else:
                g += 1

    sizes = ClassSizes(tuple(len(g) for g in groups))
    table = _winning_tables(quota, groups)
    rows = [m for m, win in table.items()
            if win and all(not table[d] for d in _down_moves(sizes, m))]
    game = CompleteGame(sizes, tuple(sorted(rows, reverse=True)))
    return game, TypePartition(tuple(tuple(mem) for mem in members))


def canonicalize(rep: IntegerRepresentation) -> tuple[CompleteGame, TypePartition]:
    """Canonical (sizes, winners) form and type partition of a weighted game."""
    return _canonicalize_weights(rep.quota, list(rep.weights))


def canonicalize_rational(quota: Fraction, weights) -> tuple[CompleteGame, TypePartition]:
    """As ``canonicalize`` but for exact rational weights and quota."""
    return _canonicalize_weights(Fraction(quota), [Fraction(w) for w in weights])


def canonicalize_truth_table(game: TruthTableGame) -> tuple[CompleteGame, TypePartition]:
    """Canonical form of an explicit complete simple game."""
    n = game.n
    stronger = {}
    for i in range(n):
        for j in range(i + 1, n):
            rel = desirability(game, i, j)
            if rel is Desirability.INCOMPARABLE:
                raise NotCompleteError(f"voters {i} and {j} are incomparable")
            stronger[(i, j)] = rel

    # Order voters strongest first, grouping equivalent ones.
    def beats(i: int, j: int) -> bool:
        rel = stronger[(i, j)] if i < j else stronger[(j, i)]
        if i < j:
            return rel is Desirability.FIRST_STRONGER
        return rel is Desirability.SECOND_STRONGER

    ranked = sorted(range(n), key=lambda i: sum(beats(j, i) for j in range(n) if j != i))
    classes: list[list[int]] = [[ranked[0]]]
    for v in ranked[1:]:
        if beats(classes[-1][-1], v):
            classes.append([v])
        else:
            classes[-1].append(v)
    partition = TypePartition(tuple(tuple(c) for c in classes))
    sizes = ClassSizes(partition.sizes)

    # Evaluate profiles on fixed representatives; equivalence makes the choice
    # irrelevant.
    reps = [c for c in partition.classes]
    table = {}
    for m in sizes.profiles():
        mask = 0
        for cls, k in zip(reps, m):
            for v in cls[:k]:
                mask |= 1 << v
        table[m] = game.wins(mask)
    if not table[tuple(sizes.counts)]:
        raise DegenerateGameError("grand coalition loses")
    rows = [m for m, win in table.items()
            if win and all(not table[d] for d in _down_moves(sizes, m))]
    return CompleteGame(sizes, tuple(sorted(rows, reverse=True))), partition
