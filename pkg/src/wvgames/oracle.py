"""Ground-truth integer search for representations of weighted games.

Everything here is exact: candidate representations are found by branch and
bound over integer weights with exact rational LP relaxations as bounds, and
every reported representation is re-checked against the full winning/losing
profile constraints in integer arithmetic.

Searches run inside per-class weight caps.  For two-type games the caps are
the provable bounds of the two-type minimum-representation theorem; otherwise
they default to three times the fractional LP minima (a heuristic, so an
empty search is reported as inconclusive rather than as non-existence).

Deciding existence of a component-wise minimum uses two facts.  Equivalent
voters must receive equal weights in a minimum (swapping the weights of two
equivalent voters yields another valid representation), and the vector of
per-class weight minima is the only possible minimum, so existence reduces to
checking that this candidate vector is itself a valid representation.  A
minimum is also always the unique minimum-sum representation, which the
classification cross-reports.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor, lcm

from .analysis import IntegerRepresentation, TypedRepresentation
from .lp import (EQ, GE, LE, NotWeightedError, fractional_minima, is_weighted,
                 solve_lazy)
from .model import CompleteGame, Profile, shift_maximal_losing

DEFAULT_VOTER_CAP = 12
DEFAULT_NODE_LIMIT = 200_000


class InconclusiveSearchError(RuntimeError):
    """The bounded search space was exhausted or its limits were exceeded."""


@dataclass(frozen=True)
class RepresentationClassification:
    """Existence/uniqueness summary of integer representations of one game."""

    has_minimum: bool
    minimum: IntegerRepresentation | None
    has_minimum_preserving_types: bool
    typed_minimum: TypedRepresentation | None
    min_sum_value: int
    min_sum_reps: tuple[IntegerRepresentation, ...]
    min_sum_typed_reps: tuple[TypedRepresentation, ...]


def _require_weighted(game: CompleteGame) -> None:
    weighted, _ = is_weighted(game)
    if not weighted:
        raise NotWeightedError("game admits no weighted representation")


def default_typed_caps(game: CompleteGame) -> tuple[tuple[int, ...], int]:
    """Per-class weight caps and a quota cap for the typed search."""
    n1 = game.sizes.counts[0]
    if game.t == 2:
        n2 = game.sizes.counts[1]
        caps = (max(n1 + 1, n2), max(n1, n2 - 1))
        return caps, (n1 + n2) * max(n1 + 1, n2)
    minima = fractional_minima(game)
    caps = tuple(int(ceil(3 * sol.objective_value)) for sol in minima[:game.t])
    quota_cap = int(ceil(3 * minima[game.t].objective_value))
    return caps, quota_cap


def _normalize_caps(game: CompleteGame, bounds) -> tuple[tuple[int, ...], int]:
    if bounds is None:
        return default_typed_caps(game)
    if isinstance(bounds, int):
        caps = (bounds,) * game.t
    else:
        caps = tuple(int(b) for b in bounds)
        if len(caps) != game.t:
            raise ValueError("need one weight cap per class")
    quota_cap = sum(c * n for c, n in zip(caps, game.sizes.counts))
    return caps, quota_cap


def _unit(n: int, j: int) -> tuple[int, ...]:
    return tuple(1 if k == j else 0 for k in range(n))


def _neg_unit(n: int, j: int) -> tuple[int, ...]:
    return tuple(-1 if k == j else 0 for k in range(n))


def _diff(n: int, a: int, b: int) -> tuple[int, ...]:
    return tuple(1 if k == a else -1 if k == b else 0 for k in range(n))


class _RepSearch:
    """Integer search over typed or per-voter weight variables of one game."""

    def __init__(self, game: CompleteGame, caps: tuple[int, ...], quota_cap: int,
                 per_voter: bool, node_limit: int = DEFAULT_NODE_LIMIT):
        self.game = game
        self.per_voter = per_voter
        self.node_limit = node_limit
        t = game.t
        counts = game.sizes.counts
        if per_voter:
            self.blocks = []
            start = 0
            for c in counts:
                self.blocks.append(tuple(range(start, start + c)))
                start += c
            self.d = start
            self.var_cap = tuple(caps[i] for i in range(t) for _ in range(counts[i]))
        else:
            self.blocks = [(i,) for i in range(t)]
            self.d = t
            self.var_cap = tuple(caps)
        self.quota_cap = quota_cap
        self.losing = shift_maximal_losing(game)
        nv = self.d + 1  # weight variables plus the quota

        lazy = []
        for m in game.winners:
            lazy.append((self._row_coeffs(m, lightest=True) + (-1,), GE, 0))
        for l in self.losing:
            lazy.append((self._row_coeffs(l, lightest=False) + (-1,), LE, -1))
        self.lazy = lazy
        self.hot: set[int] = set()

        always = []
        for i in range(t):
            block = self.blocks[i]
            for a, b in zip(block, block[1:]):
                always.append((_diff(nv, a, b), GE, 0))
            if i + 1 < t:
                always.append((_diff(nv, block[-1], self.blocks[i + 1][0]), GE, 1))
        always.append((_unit(nv, self.d - 1), GE, 0))
        for j in range(self.d):
            always.append((_unit(nv, j), LE, self.var_cap[j]))
        always.append((_unit(nv, self.d), LE, quota_cap))
        self.always = always

    def _row_coeffs(self, profile: Profile, lightest: bool) -> tuple[int, ...]:
        """0/1 coefficients of the extreme coalition with this profile.

        For winning profiles the lightest members of each class are binding;
        for losing profiles the heaviest.  In typed mode the coefficients are
        simply the profile counts.
        """
        coeffs = [0] * self.d
        for i, k in enumerate(profile):
            block = self.blocks[i]
            if not self.per_voter:
                coeffs[block[0]] = k
            elif k:
                for j in (block[-k:] if lightest else block[:k]):
                    coeffs[j] = 1
        return tuple(coeffs)

    def _solve(self, objective, extra):
        return solve_lazy(self.d + 1, tuple(objective) + (0,),
                          self.always + list(extra), self.lazy, seed=self.hot)

    def _ordered(self, weights) -> bool:
        for block in self.blocks:
            for a, b in zip(block, block[1:]):
                if weights[a] < weights[b]:
                    return False
        for i in range(len(self.blocks) - 1):
            if weights[self.blocks[i][-1]] < weights[self.blocks[i + 1][0]] + 1:
                return False
        return weights[-1] >= 0

    def forced_quota(self, weights) -> int | None:
        """Minimal winning weight if the weights form a valid representation.

        Checks the ordering shape, every shift-minimal winning and
        shift-maximal losing profile, and the quota cap; returns None when any
        check fails.
        """
        if len(weights) != self.d or not self._ordered(weights):
            return None
        wmin = min(
            sum(c * w for c, w in zip(self._row_coeffs(m, True), weights))
            for m in self.game.winners)
        lmax = max(
            sum(c * w for c, w in zip(self._row_coeffs(l, False), weights))
            for l in self.losing)
        if lmax <= wmin - 1 and 1 <= wmin <= self.quota_cap:
            return wmin
        return None

    def _within_caps(self, weights) -> bool:
        return all(w <= cap for w, cap in zip(weights, self.var_cap))

    def _seed_candidates(self, values) -> list[tuple[int, ...]]:
        """Integer incumbents rounded or scaled up from an LP point."""
        cands = [tuple(int(ceil(v)) for v in values[:self.d])]
        denom = lcm(*(Fraction(v).denominator for v in values[:self.d]))
        if denom > 1:
            cands.append(tuple(int(v * denom) for v in values[:self.d]))
        return [c for c in cands
                if self._within_caps(c) and self.forced_quota(c) is not None]

    def minimize(self, objective) -> tuple[int, tuple[int, ...]] | None:
        """Exact minimum of an integer objective over valid representations.

        Branch and bound with exact LP bounds; returns (value, weights) or
        None when no representation exists within the caps.
        """
        best_val: int | None = None
        best_w: tuple[int, ...] | None = None
        root = self._solve(objective, ())
        if not root.optimal:
            return None
        for cand in self._seed_candidates(root.values):
            val = sum(c * w for c, w in zip(objective, cand))
            if best_val is None or val < best_val:
                best_val, best_w = val, cand

        counter = 0
        heap = [(root.objective_value, 0, root, [])]
        nodes = 0
        while heap:
            bound, _, sol, extra = heapq.heappop(heap)
            nodes += 1
            if nodes > self.node_limit:
                raise InconclusiveSearchError(f"node limit {self.node_limit} exceeded")
            if best_val is not None and ceil(bound) >= best_val:
                continue
            frac_j = self._most_fractional(sol.values)
            if frac_j is None:
                weights = tuple(int(v) for v in sol.values[:self.d])
                if self.forced_quota(weights) is not None:
                    val = sum(c * w for c, w in zip(objective, weights))
                    if best_val is None or val < best_val:
                        best_val, best_w = val, weights
                continue
            v = sol.values[frac_j]
            for row in ((_unit(self.d + 1, frac_j), LE, floor(v)),
                        (_unit(self.d + 1, frac_j), GE, ceil(v))):
                child_extra = extra + [row]
                child = self._solve(objective, child_extra)
                if not child.optimal:
                    continue
                if best_val is not None and ceil(child.objective_value) >= best_val:
                    continue
                counter += 1
                heapq.heappush(heap, (child.objective_value, counter, child, child_extra))
        if best_val is None:
            return None
        return best_val, best_w

    def _most_fractional(self, values) -> int | None:
        best_j, best_dist = None, Fraction(0)
        for j in range(self.d):
            f = values[j] - floor(values[j])
            dist = min(f, 1 - f)
            if dist > best_dist:
                best_j, best_dist = j, dist
        return best_j

    def enumerate_at(self, objective, target: int) -> list[tuple[int, ...]]:
        """All valid integer weight vectors with the given objective value."""
        found: list[tuple[int, ...]] = []
        eq_row = (tuple(objective) + (0,), EQ, target)

        def recurse(idx: int, pins: list[int], extra: list) -> None:
            if idx == self.d:
                weights = tuple(pins)
                if self.forced_quota(weights) is not None:
                    found.append(weights)
                return
            lo = self._solve(_unit(self.d, idx), extra)
            if not lo.optimal:
                return
            hi = self._solve(_neg_unit(self.d, idx), extra)
            if not hi.optimal:
                return
            for v in range(ceil(lo.values[idx]), floor(-hi.objective_value) + 1):
                recurse(idx + 1, pins + [v],
                        extra + [(_unit(self.d + 1, idx), EQ, v)])

        recurse(0, [], [eq_row])
        return sorted(found, reverse=True)

    def class_value(self, weights, i: int) -> int:
        return weights[self.blocks[i][0]]

    def lightest_minima(self) -> tuple[int, ...]:
        """Per class, the minimum over representations of its lightest weight."""
        out = []
        for i in range(self.game.t):
            got = self.minimize(_unit(self.d, self.blocks[i][-1]))
            if got is None:
                raise InconclusiveSearchError("no representation within caps")
            out.append(got[0])
        return tuple(out)

    def sum_objective(self) -> tuple[int, ...]:
        if self.per_voter:
            return (1,) * self.d
        return self.game.sizes.counts


# --- two-type fast path ------------------------------------------------------

def _enumerate_box_t2(game: CompleteGame) -> list[tuple[int, int, int]]:
    """All valid typed (w1, w2, q) inside the provable two-type caps."""
    caps, quota_cap = default_typed_caps(game)
    losing = shift_maximal_losing(game)
    out = []
    for w1 in range(1, caps[0] + 1):
        for w2 in range(0, min(w1 - 1, caps[1]) + 1):
            q = min(m[0] * w1 + m[1] * w2 for m in game.winners)
            if q < 1 or q > quota_cap:
                continue
            if max(l[0] * w1 + l[1] * w2 for l in losing) <= q - 1:
                out.append((w1, w2, q))
    return out


@dataclass
class _TypedData:
    min_sum: int
    min_sum_weights: list[tuple[int, ...]]
    minima: tuple[int, ...]
    search: "_RepSearch"


def _typed_data(game: CompleteGame, bounds, node_limit) -> _TypedData:
    counts = game.sizes.counts
    caps, quota_cap = _normalize_caps(game, bounds)
    search = _RepSearch(game, caps, quota_cap, per_voter=False, node_limit=node_limit)
    if game.t == 1:
        k = game.winners[0][0]
        assert search.forced_quota((1,)) == k
        return _TypedData(counts[0], [(1,)], (1,), search)
    if game.t == 2 and bounds is None:
        box = _enumerate_box_t2(game)
        if not box:
            raise InconclusiveSearchError("no typed representation within caps")
        best = min(counts[0] * w1 + counts[1] * w2 for w1, w2, _ in box)
        weights = sorted(((w1, w2) for w1, w2, _ in box
                          if counts[0] * w1 + counts[1] * w2 == best), reverse=True)
        minima = (min(w1 for w1, _, _ in box), min(w2 for _, w2, _ in box))
        return _TypedData(best, weights, minima, search)
    opt = search.minimize(counts)
    if opt is None:
        raise InconclusiveSearchError("no typed representation within caps")
    best, _ = opt
    weights = search.enumerate_at(counts, best)
    return _TypedData(best, weights, search.lightest_minima(), search)


def _minimum_from_minima(search: _RepSearch, minima: tuple[int, ...]):
    """The only possible minimum is the per-class minima vector; validate it."""
    candidate = tuple(minima[i] for i, block in enumerate(search.blocks)
                      for _ in block)
    q = search.forced_quota(candidate)
    if q is None:
        return None
    return candidate, q


def min_sum_typed(game: CompleteGame, bounds=None,
                  node_limit: int = DEFAULT_NODE_LIMIT) -> list[TypedRepresentation]:
    """All types-preserving representations of minimal total weight.

    The quota of each result is the minimal winning coalition weight of its
    weight vector.  ``bounds`` overrides the per-class weight caps (an int
    applies to every class).
    """
    _require_weighted(game)
    data = _typed_data(game, bounds, node_limit)
    return [TypedRepresentation(data.search.forced_quota(w), w)
            for w in data.min_sum_weights]


def typed_minimum(game: CompleteGame, bounds=None,
                  node_limit: int = DEFAULT_NODE_LIMIT
                  ) -> tuple[bool, TypedRepresentation | None]:
    """Existence and value of the types-preserving component-wise minimum."""
    _require_weighted(game)
    counts = game.sizes.counts
    caps, quota_cap = _normalize_caps(game, bounds)
    search = _RepSearch(game, caps, quota_cap, per_voter=False, node_limit=node_limit)
    if game.t == 1:
        return True, TypedRepresentation(game.winners[0][0], (1,))
    if game.t == 2 and bounds is None:
        box = _enumerate_box_t2(game)
        if not box:
            raise InconclusiveSearchError("no typed representation within caps")
        minima = (min(w1 for w1, _, _ in box), min(w2 for _, w2, _ in box))
    else:
        minima = search.lightest_minima()
    got = _minimum_from_minima(search, minima)
    if got is None:
        return False, None
    return True, TypedRepresentation(got[1], got[0])


def min_per_voter(game: CompleteGame, cap: int = DEFAULT_VOTER_CAP, bounds=None,
                  node_limit: int = DEFAULT_NODE_LIMIT) -> RepresentationClassification:
    """Classify integer representations, allowing unequal weights in a class.

    Reports component-wise minima (per voter and types-preserving) and the
    minimum-sum representations, all within the search caps.
    """
    if game.n > cap:
        raise ValueError(
            f"game has {game.n} voters, per-voter search is capped at {cap}")
    _require_weighted(game)

    typed = _typed_data(game, bounds, node_limit)
    typed_min = _minimum_from_minima(typed.search, typed.minima)

    caps, quota_cap = _normalize_caps(game, bounds)
    search = _RepSearch(game, caps, quota_cap, per_voter=True, node_limit=node_limit)
    opt = search.minimize(search.sum_objective())
    if opt is None:
        raise InconclusiveSearchError("no representation within caps")
    sum_value, _ = opt
    reps = search.enumerate_at(search.sum_objective(), sum_value)
    voter_min = _minimum_from_minima(search, search.lightest_minima())

    def to_rep(weights):
        return IntegerRepresentation(search.forced_quota(weights), weights)

    return RepresentationClassification(
        has_minimum=voter_min is not None,
        minimum=to_rep(voter_min[0]) if voter_min else None,
        has_minimum_preserving_types=typed_min is not None,
        typed_minimum=TypedRepresentation(typed_min[1], typed_min[0][:game.t])
        if typed_min else None,
        min_sum_value=sum_value,
        min_sum_reps=tuple(to_rep(w) for w in reps),
        min_sum_typed_reps=tuple(
            TypedRepresentation(typed.search.forced_quota(w), w)
            for w in typed.min_sum_weights),
    )


def min_sum_per_voter(game: CompleteGame, bounds=None,
                      node_limit: int = DEFAULT_NODE_LIMIT
                      ) -> tuple[int, list[IntegerRepresentation]]:
    """Minimum total weight over per-voter representations, with witnesses.

    Witnesses carry weights sorted non-increasing; assignments differing only
    by permutations inside an equivalence class are listed once.
    """
    _require_weighted(game)
    caps, quota_cap = _normalize_caps(game, bounds)
    search = _RepSearch(game, caps, quota_cap, per_voter=True, node_limit=node_limit)
    opt = search.minimize(search.sum_objective())
    if opt is None:
        raise InconclusiveSearchError("no representation within caps")
    sum_value, _ = opt
    reps = search.enumerate_at(search.sum_objective(), sum_value)
    return sum_value, [
        IntegerRepresentation(search.forced_quota(w), w) for w in reps]
