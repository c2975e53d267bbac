"""Coin-problem arithmetic and the game families built on it.

Representability of an integer as a non-negative combination of coin
denominations drives three kinds of constructions: games with three or four
voter types whose integer weight minima cannot be attained simultaneously,
parameterised families with a prescribed number of minimum-sum
representations, and families that are themselves in minimum representation
for any coprime weight pair.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import gcd, lcm, prod

from .analysis import (IntegerRepresentation, TypedRepresentation,
                       canonicalize, canonicalize_rational)
from .model import ClassSizes, CompleteGame


class ConstructionError(ValueError):
    """A family precondition failed; the message names the condition."""


def _check_denominations(denoms) -> tuple[int, ...]:
    d = tuple(int(x) for x in denoms)
    if not d or any(x < 1 for x in d):
        raise ValueError("denominations must be positive integers")
    if any(a >= b for a, b in zip(d, d[1:])):
        raise ValueError("denominations must be strictly increasing")
    return d


@lru_cache(maxsize=None)
def _reachable_table(denoms: tuple[int, ...], limit: int) -> tuple[bool, ...]:
    table = [False] * (limit + 1)
    table[0] = True
    for v in denoms:
        for i in range(v, limit + 1):
            if table[i - v]:
                table[i] = True
    return tuple(table)


def representable(k: int, denoms) -> bool:
    """True iff k is a non-negative integer combination of the denominations."""
    d = _check_denominations(denoms)
    if k < 0:
        raise ValueError("representability is defined for non-negative integers")
    if len(d) == 2 and gcd(*d) == 1:
        # Everything beyond the Frobenius number is representable, so one
        # cached table per pair suffices.
        g = (d[0] - 1) * (d[1] - 1) - 1
        if k > g:
            return True
        return _reachable_table(d, g)[k]
    return _reachable_table(d, k)[k]


def frobenius_number(a: int, b: int) -> int:
    """Largest integer not representable by two coprime denominations >= 2."""
    if a < 2 or b < 2:
        raise ValueError("both denominations must be at least 2")
    if gcd(a, b) != 1:
        raise ValueError(f"{a} and {b} are not coprime")
    return (a - 1) * (b - 1) - 1


def count_nonrepresentable(a: int, b: int) -> int:
    """Number of non-representable non-negative integers for a coprime pair."""
    if a < 1 or b < 1 or gcd(a, b) != 1:
        raise ValueError(f"{a} and {b} must be positive and coprime")
    return (a - 1) * (b - 1) // 2


def popoviciu_dual(k: int, a: int, b: int) -> tuple[bool, bool]:
    """(representable(k), representable(ab - k)); exactly one is true.

    Requires coprime a, b and 1 <= k <= ab with k divisible by neither.
    """
    if gcd(a, b) != 1:
        raise ValueError(f"{a} and {b} are not coprime")
    if not 1 <= k <= a * b:
        raise ValueError(f"k={k} outside 1..{a * b}")
    if k % a == 0 or k % b == 0:
        raise ValueError(f"k={k} is divisible by {a} or {b}")
    pair = tuple(sorted((a, b)))
    res = (representable(k, pair), representable(a * b - k, pair))
    assert res[0] != res[1], "exactly one of k and ab-k must be representable"
    return res


# --- counterexample constructions -------------------------------------------

def build_t3_counterexample(a: int, b: int, q: int, w1: int) -> CompleteGame:
    """Three-type weighted game with class sizes (2, a, b) from a coin pair.

    The two strongest voters get weight w1 - 1/2, the next a voters weight b,
    the last b voters weight a.  Requires coprime b > a >= 1, q - w1 not
    representable, q - 2*w1 + 1 representable, and w1 - 1 > b.
    """
    if not (b > a >= 1):
        raise ConstructionError(f"need b > a >= 1, got a={a}, b={b}")
    if gcd(a, b) != 1:
        raise ConstructionError(f"a={a} and b={b} are not coprime")
    if w1 - 1 <= b:
        raise ConstructionError(f"need w1 - 1 > b, got w1={w1}, b={b}")
    pair = (a, b)
    if q - w1 < 0 or representable(q - w1, pair):
        raise ConstructionError(f"q - w1 = {q - w1} is representable by {pair}")
    if q - 2 * w1 + 1 < 0 or not representable(q - 2 * w1 + 1, pair):
        raise ConstructionError(
            f"q - 2*w1 + 1 = {q - 2 * w1 + 1} is not representable by {pair}")
    half = Fraction(2 * w1 - 1, 2)
    weights = [half, half] + [b] * a + [a] * b
    game, _ = canonicalize_rational(Fraction(q), weights)
    assert game.sizes.counts == (2, a, b)
    return game


def build_t4_counterexample() -> CompleteGame:
    """The fixed four-type game with sizes (1, 1, 7, 11) and quota 77.

    Built from the representation [77; 24, 18, 11 x7, 7 x11]; its two
    minimum-sum types-preserving representations differ in the first two
    classes only.
    """
    rep = IntegerRepresentation(77, (24, 18) + (11,) * 7 + (7,) * 11)
    game, _ = canonicalize(rep)
    assert game.sizes.counts == (1, 1, 7, 11)
    return game


@dataclass(frozen=True)
class PropositionParams:
    """Coin pair a > b plus strictly increasing levels l_1 < ... < l_t.

    The derived target weights are ab - l_i - 1.  Whether the three
    representability conditions hold is decided by
    ``check_proposition_params``, not at construction.
    """

    a: int
    b: int
    levels: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "levels", tuple(int(l) for l in self.levels))
        if not (self.a > self.b >= 1):
            raise ValueError(f"need a > b >= 1, got a={self.a}, b={self.b}")
        if gcd(self.a, self.b) != 1:
            raise ValueError(f"a={self.a} and b={self.b} are not coprime")
        if len(self.levels) < 2:
            raise ValueError("need at least two levels")
        if any(x >= y for x, y in zip(self.levels, self.levels[1:])):
            raise ValueError("levels must be strictly increasing")

    @property
    def t(self) -> int:
        return len(self.levels)

    @property
    def hat_weights(self) -> tuple[int, ...]:
        ab = self.a * self.b
        return tuple(ab - l - 1 for l in self.levels)


def check_proposition_params(p: PropositionParams) -> tuple[bool, list[str]]:
    """Evaluate the three level conditions; returns (ok, failure report)."""
    a, b, ab = p.a, p.b, p.a * p.b
    pair = (b, a)
    failures = []
    for i, l in enumerate(p.levels, start=1):
        w = ab - l - 1
        if not a < w < ab - 1:
            failures.append(f"(1) weight {w} for level l{i}={l} outside ({a}, {ab - 1})")
            continue
        if representable(l, pair):
            failures.append(f"(1) level l{i}={l} is representable")
        if not representable(l + 1, pair):
            failures.append(f"(1) level l{i}+1={l + 1} is not representable")
    for z in range(2, p.t):
        for subset in combinations(range(p.t), z):
            s = sum(p.levels[i] for i in subset) - (z - 1) * ab
            label = ",".join(f"l{i + 1}" for i in subset)
            if not 0 < s < ab:
                failures.append(f"(2) sum over {{{label}}} gives {s}, outside (0, {ab})")
            elif representable(s, pair):
                failures.append(f"(2) sum over {{{label}}} gives representable {s}")
    s = sum(p.levels) + 1 - (p.t - 1) * ab
    if not 0 < s < ab:
        failures.append(f"(3) total {s} outside (0, {ab})")
    elif not representable(s, pair):
        failures.append(f"(3) total {s} is not representable")
    return not failures, failures


def build_proposition_game(p: PropositionParams) -> CompleteGame:
    """Game with t+2 classes and exactly t minimum-sum typed representations.

    The defining representation is
    [ab; w1_hat, w2_hat + 1, ..., wt_hat + 1, a x b-times, b x a-times]
    with class sizes (1, ..., 1, b, a).
    """
    ok, failures = check_proposition_params(p)
    if not ok:
        raise ConstructionError("; ".join(failures))
    hats = p.hat_weights
    weights = (hats[0],) + tuple(w + 1 for w in hats[1:])
    weights += (p.a,) * p.b + (p.b,) * p.a
    game, _ = canonicalize(IntegerRepresentation(p.a * p.b, weights))
    assert game.sizes.counts == (1,) * p.t + (p.b, p.a)
    return game


def search_proposition_params(a: int, b: int, t: int, limit: int | None = None
                              ) -> list[PropositionParams]:
    """All level tuples (or the first ``limit``) satisfying the conditions.

    Candidates for individual levels come from condition (1); tuples are grown
    in increasing order with every induced subset condition checked as soon as
    its members are fixed.
    """
    if a <= b or b < 1 or gcd(a, b) != 1:
        raise ValueError("need coprime a > b >= 1")
    if t < 2:
        raise ValueError("need t >= 2")
    ab = a * b
    pair = (b, a)
    singles = [l for l in range(1, ab - a - 1)
               if not representable(l, pair) and representable(l + 1, pair)]

    def subset_ok(chosen: list[int], z: int) -> bool:
        # All z-subsets containing the newest level.
        newest = chosen[-1]
        for rest in combinations(chosen[:-1], z - 1):
            s = sum(rest) + newest - (z - 1) * ab
            if not 0 < s < ab or representable(s, pair):
                return False
        return True

    results: list[PropositionParams] = []

    def grow(chosen: list[int], start: int) -> bool:
        if len(chosen) == t:
            s = sum(chosen) + 1 - (t - 1) * ab
            if 0 < s < ab and representable(s, pair):
                results.append(PropositionParams(a, b, tuple(chosen)))
                if limit is not None and len(results) >= limit:
                    return True
            return False
        for idx in range(start, len(singles)):
            chosen.append(singles[idx])
            if all(subset_ok(chosen, z) for z in range(2, min(len(chosen), t - 1) + 1)):
                if grow(chosen, idx + 1):
                    chosen.pop()
                    return True
            chosen.pop()
        return False

    grow([], 0)
    return results


# --- families in minimum representation --------------------------------------

def build_two_weight_family(a: int, b: int, n1: int, n2: int
                            ) -> tuple[CompleteGame, TypedRepresentation]:
    """The game [ab; b x n1, a x n2], in minimum representation.

    Requires coprime b > a >= 1 (or the degenerate pair a=0, b=1), n1 >= 2a+1
    and n2 >= 2b+1.  For a=0 the quota ab would be zero, so the game's actual
    minimum [1; 1 x n1, 0 x n2] is returned instead.
    """
    if not ((b > a >= 1 and gcd(a, b) == 1) or (b == 1 and a == 0)):
        raise ConstructionError(f"need coprime b > a >= 1 or (a, b) = (0, 1), got ({a}, {b})")
    if n1 < 2 * a + 1:
        raise ConstructionError(f"need n1 >= {2 * a + 1}, got {n1}")
    if n2 < 2 * b + 1:
        raise ConstructionError(f"need n2 >= {2 * b + 1}, got {n2}")
    quota = a * b if a >= 1 else 1
    typed = TypedRepresentation(quota, (b, a))
    game, _ = canonicalize(typed.per_voter(ClassSizes((n1, n2))))
    assert game.sizes.counts == (n1, n2)
    return game, typed


def build_lcm_family(weights, sizes) -> tuple[CompleteGame, TypedRepresentation]:
    """The game [lcm(a_1..a_t); a_i x n_i], in minimum representation.

    Each weight needs a coprime partner among the weights and every class at
    least 1 + 2*max(a_j) voters.
    """
    a = tuple(int(x) for x in weights)
    n = tuple(int(x) for x in sizes)
    if len(a) != len(n) or not a:
        raise ConstructionError("need matching weight and size vectors")
    if any(x <= y for x, y in zip(a, a[1:])) or a[-1] < 1:
        raise ConstructionError("weights must be strictly decreasing and positive")
    for i, ai in enumerate(a):
        if not any(gcd(ai, aj) == 1 for aj in a):
            raise ConstructionError(f"weight {ai} has no coprime partner")
    bound = 1 + 2 * max(a)
    for i, ni in enumerate(n):
        if ni < bound:
            raise ConstructionError(f"need n{i + 1} >= {bound}, got {ni}")
    typed = TypedRepresentation(lcm(*a), a)
    game, _ = canonicalize(typed.per_voter(ClassSizes(n)))
    assert game.sizes.counts == n
    return game, typed


def build_product_family(weights, sizes) -> tuple[CompleteGame, TypedRepresentation]:
    """The game [prod(a_1..a_t); a_i x n_i], in minimum representation.

    Requires gcd of all weights 1 and n_i >= 1 + 2 * prod of the other
    weights.  The certificate coefficients u_i with sum(u_i a_i) = q - 1 and
    0 <= u_i < prod of the others are computed to confirm the construction.
    """
    a = tuple(int(x) for x in weights)
    n = tuple(int(x) for x in sizes)
    if len(a) != len(n) or not a:
        raise ConstructionError("need matching weight and size vectors")
    if any(x <= y for x, y in zip(a, a[1:])) or a[-1] < 1:
        raise ConstructionError("weights must be strictly decreasing and positive")
    if gcd(*a) != 1:
        raise ConstructionError(f"gcd of {a} must be 1")
    q = prod(a)
    for i, ni in enumerate(n):
        bound = 1 + 2 * (q // a[i])
        if ni < bound:
            raise ConstructionError(f"need n{i + 1} >= {bound}, got {ni}")
    assert _bezout_combination(a, q - 1) is not None
    typed = TypedRepresentation(q, a)
    game, _ = canonicalize(typed.per_voter(ClassSizes(n)))
    assert game.sizes.counts == n
    return game, typed


def _bezout_combination(a: tuple[int, ...], target: int):
    """Lexicographically first (u_1..u_t), 0 <= u_i < prod(a_j, j != i), with
    sum(u_i a_i) = target; None when none exists."""
    q = prod(a)

    def grow(i: int, rest: int, acc: list[int]):
        if i == len(a):
            return list(acc) if rest == 0 else None
        for u in range(q // a[i]):
            s = u * a[i]
            if s > rest:
                break
            got = grow(i + 1, rest - s, acc + [u])
            if got is not None:
                return got
        return None

    return grow(0, target, [])


def extend_with_null_class(sizes, rep: TypedRepresentation, k: int
                           ) -> tuple[ClassSizes, TypedRepresentation]:
    """Append a class of k weight-zero voters; minimality carries over."""
    if k < 1:
        raise ValueError(f"need at least one null voter, got {k}")
    if any(w <= 0 for w in rep.class_weights):
        raise ValueError("existing classes must all have positive weight")
    counts = sizes.counts if hasattr(sizes, "counts") else tuple(sizes)
    if len(counts) != rep.t:
        raise ValueError("class count mismatch")
    return (ClassSizes(counts + (k,)),
            TypedRepresentation(rep.quota, rep.class_weights + (0,)))
