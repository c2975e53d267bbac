"""Exact minimum integer representations for games with at most two types.

Games with one type of voter have the all-ones minimum.  For two types and a
single winner row a closed-form case analysis applies.  For two types and two
or more winner rows the unique minimum is a vertex of the weight polytope
determined by three tight coalition constraints; every candidate vertex comes
from a pair of winner rows (or a pair of maximal losing rows) together with a
third tight coalition constructed by the extended Euclidean algorithm.  The
determinant of each admissible system is 1 after gcd reduction, so candidate
solutions are integral by construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .analysis import IntegerRepresentation, TypedRepresentation
from .lp import NotWeightedError, is_weighted
from .model import ClassSizes, CompleteGame, Profile, shift_maximal_losing


class InternalConsistencyError(AssertionError):
    """Valid candidates produced incomparable minima, contradicting uniqueness."""


@dataclass(frozen=True)
class TightTripleCandidate:
    """A candidate vertex from two same-side tight rows plus a Euclid third.

    ``tight_profiles`` holds three (profile, is_winning) pairs.  ``det`` is the
    3x3 system determinant after gcd reduction (1 for every admissible
    candidate) and ``euclid`` the Bezout pair (u, v) that produced the third
    profile.  ``solution`` is the exact integral (w1, w2, q).
    """

    tight_profiles: tuple[tuple[Profile, bool], ...]
    det: int
    euclid: tuple[int, int]
    solution: tuple[int, int, int]


def min_rep_t1(n: int, k: int) -> TypedRepresentation:
    """Minimum representation of the k-out-of-n game: quota k, weight 1."""
    if not 1 <= k <= n:
        raise ValueError(f"threshold {k} outside 1..{n}")
    return TypedRepresentation(k, (1,))


def min_rep_t2_r1(n1: int, n2: int, m1: int, m2: int) -> TypedRepresentation:
    """Closed-form minimum for a two-type game with one winner row.

    Raises NotWeightedError on the non-weighted rectangle
    1 <= m1 <= n1-1, 2 <= m2 <= n2-2.
    """
    if n1 < 1 or n2 < 1:
        raise ValueError("class sizes must be positive")
    if not 1 <= m1 <= n1 or not 0 <= m2 <= n2 - 1:
        raise ValueError(f"(m1, m2)=({m1}, {m2}) outside the valid range")
    if m1 <= n1 - 1 and 2 <= m2 <= n2 - 2:
        raise NotWeightedError(
            f"two-type game with one winner row ({m1}, {m2}) is not weighted")
    if m2 == 0:
        return TypedRepresentation(m1, (1, 0))
    if m1 == n1:
        return TypedRepresentation(n1 * (n2 - m2 + 1) + m2, (n2 - m2 + 1, 1))
    if m2 == 1:
        return TypedRepresentation(m1 * n2 + 1, (n2, 1))
    # m2 == n2 - 1 >= 2 with m1 <= n1 - 1
    if m1 + n2 - 1 <= n1:
        return TypedRepresentation(m1 * n2 + (n2 - 1) ** 2, (n2, n2 - 1))
    return TypedRepresentation(
        (m1 + n2) * (n1 + 1 - m1) + 2 * m1 - n1 - 1, (n1 + 2 - m1, n1 + 1 - m1))


def strip_null_voters(game: CompleteGame) -> tuple[CompleteGame, int]:
    """Remove the null class, if any, returning the reduced game and its size.

    A class is null exactly when no winner row uses it, which can only happen
    for the weakest class; at most one such class exists.
    """
    if game.t >= 2 and all(row[-1] == 0 for row in game.winners):
        reduced = CompleteGame(ClassSizes(game.sizes.counts[:-1]),
                               tuple(row[:-1] for row in game.winners))
        return reduced, game.sizes.counts[-1]
    return game, 0


def _bezout(d1: int, d2: int) -> tuple[int, int]:
    """The unique (u, v) with u*d2 - v*d1 = 1, 0 < u <= d1, 0 <= v < d2."""
    u = pow(d2, -1, d1) if d1 > 1 else 1
    v = (u * d2 - 1) // d1
    assert u * d2 - v * d1 == 1 and 0 < u <= d1 and 0 <= v < d2
    return u, v


def _det(a, b, c, d, e, f) -> int:
    return f * c - f * a + a * d - b * c - e * d + e * b


def tight_triple_candidates(game: CompleteGame) -> list[TightTripleCandidate]:
    """All candidate vertices for a two-type game with r >= 2 winner rows."""
    winners = game.winners
    losing = shift_maximal_losing(game)
    cands = []
    for rows, from_winners in ((winners, True), (losing, False)):
        for x in range(len(rows)):
            for y in range(x + 1, len(rows)):
                # Rows are lex-decreasing, so the first coordinate drops while
                # the second rises between any two rows.
                (a, b), (c, d) = rows[x], rows[y]
                g = gcd(a - c, d - b)
                d1, d2 = (a - c) // g, (d - b) // g
                u, v = _bezout(d1, d2)
                solution = (d2, d1, a * d2 + b * d1 + (0 if from_winners else 1))
                if from_winners:
                    # Tight pair reduced toward (c, d); Euclid third is losing.
                    third = (a - u, b + v)
                    pair = ((a, b), (a - d1, b + d2))
                    det = _det(*pair[0], *pair[1], *third)
                    profiles = ((pair[0], True), (pair[1], True), (third, False))
                else:
                    # Losing pair reduced to a coprime step from (c, d); the
                    # Euclid third wins.
                    third = (c + u, d - v)
                    pair = ((c + d1, d - d2), (c, d))
                    det = _det(*third, *pair[1], *pair[0])
                    profiles = ((pair[0], False), (pair[1], False), (third, True))
                if not game.sizes.contains(third):
                    continue
                assert det == 1, "reduced tight triple must have determinant 1"
                cands.append(TightTripleCandidate(profiles, det, (u, v), solution))
    return cands


def _feasible(game: CompleteGame, w1: int, w2: int, q: int) -> bool:
    if not (w1 > w2 >= 0 and q >= 1):
        return False
    if min(m[0] * w1 + m[1] * w2 for m in game.winners) < q:
        return False
    return max(l[0] * w1 + l[1] * w2 for l in shift_maximal_losing(game)) <= q - 1


def min_rep_t2(game: CompleteGame) -> tuple[TypedRepresentation, IntegerRepresentation]:
    """The unique minimum integer representation of a weighted two-type game.

    Accepts one- or two-type games; a null class is stripped first and
    reattached with weight zero.  Returns the types-preserving form and its
    per-voter expansion.
    """
    if game.t > 2:
        raise ValueError(f"exact algorithm requires at most two types, got {game.t}")
    stripped, null_count = strip_null_voters(game)

    if stripped.t == 1:
        typed = min_rep_t1(stripped.n, stripped.winners[0][0])
    elif stripped.r == 1:
        m1, m2 = stripped.winners[0]
        typed = min_rep_t2_r1(*stripped.sizes.counts, m1, m2)
    else:
        weighted, _ = is_weighted(stripped)
        if not weighted:
            raise NotWeightedError("game is not weighted")
        valid = sorted({c.solution for c in tight_triple_candidates(stripped)
                       if _feasible(stripped, *c.solution)})
        if not valid:
            raise InternalConsistencyError("weighted game produced no valid vertex")
        low = tuple(min(sol[k] for sol in valid) for k in range(3))
        if low not in valid:
            raise InternalConsistencyError(
                f"incomparable minimal candidates: {valid}")
        typed = TypedRepresentation(low[2], (low[0], low[1]))

    if null_count:
        typed = TypedRepresentation(typed.quota, typed.class_weights + (0,))
    per_voter = typed.per_voter(game.sizes)
    return typed, per_voter
