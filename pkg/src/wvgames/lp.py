"""Exact rational linear programming and the weightedness tests built on it.

The solver is a textbook two-phase simplex over ``fractions.Fraction`` with
Bland's rule, so results are exact and deterministic.  Instance sizes here are
tiny; exactness, not speed, is the requirement.  Variables are unrestricted in
sign (internally split), so bounds must be stated as constraints.

For games with many coalition constraints, ``solve_lazy`` activates violated
constraints on demand, which keeps the tableaus small.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .model import CompleteGame, shift_maximal_losing

GE = ">="
LE = "<="
EQ = "=="

Constraint = tuple[tuple[Fraction, ...], str, Fraction]


class NotWeightedError(ValueError):
    """Raised when an operation requires a weighted game."""


def make_constraint(coeffs: Iterable, rel: str, rhs) -> Constraint:
    if rel not in (GE, LE, EQ):
        raise ValueError(f"unknown relation {rel!r}")
    return tuple(Fraction(c) for c in coeffs), rel, Fraction(rhs)


@dataclass(frozen=True)
class RationalLP:
    """Minimise ``objective . x`` subject to rational linear constraints."""

    num_vars: int
    constraints: tuple[Constraint, ...]
    objective: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "objective", tuple(Fraction(c) for c in self.objective))
        object.__setattr__(
            self, "constraints",
            tuple(make_constraint(c, rel, rhs) for c, rel, rhs in self.constraints))
        if len(self.objective) != self.num_vars:
            raise ValueError("objective length does not match variable count")
        for coeffs, _, _ in self.constraints:
            if len(coeffs) != self.num_vars:
                raise ValueError("constraint length does not match variable count")


@dataclass(frozen=True)
class RationalSolution:
    status: str  # "optimal" | "infeasible" | "unbounded"
    values: tuple[Fraction, ...] | None = None
    objective_value: Fraction | None = None

    @property
    def optimal(self) -> bool:
        return self.status == "optimal"


def satisfies(constraint: Constraint, values: Sequence[Fraction]) -> bool:
    coeffs, rel, rhs = constraint
    lhs = sum(c * v for c, v in zip(coeffs, values))
    if rel == GE:
        return lhs >= rhs
    if rel == LE:
        return lhs <= rhs
    return lhs == rhs


def _violation(constraint: Constraint, values: Sequence[Fraction]) -> Fraction:
    coeffs, rel, rhs = constraint
    lhs = sum(c * v for c, v in zip(coeffs, values))
    if rel == GE:
        return rhs - lhs
    if rel == LE:
        return lhs - rhs
    return abs(lhs - rhs)


class _Tableau:
    """Simplex tableau on equality rows over non-negative columns."""

    def __init__(self, rows, rhs, basis, num_cols):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis
        self.num_cols = num_cols

    def pivot(self, r: int, j: int) -> None:
        piv = self.rows[r][j]
        inv = 1 / piv
        self.rows[r] = [a * inv for a in self.rows[r]]
        self.rhs[r] *= inv
        row_r = self.rows[r]
        for i in range(len(self.rows)):
            if i == r:
                continue
            f = self.rows[i][j]
            if f:
                self.rows[i] = [a - f * b for a, b in zip(self.rows[i], row_r)]
                self.rhs[i] -= f * self.rhs[r]
        self.basis[r] = j

    def run(self, cost: list[Fraction], banned: set[int]) -> str:
        """Bland-rule minimisation; returns "optimal" or "unbounded"."""
        zrow = list(cost)
        for i, b in enumerate(self.basis):
            cb = cost[b]
            if cb:
                zrow = [z - cb * a for z, a in zip(zrow, self.rows[i])]
        while True:
            enter = -1
            for j in range(self.num_cols):
                if j not in banned and zrow[j] < 0:
                    enter = j
                    break
            if enter < 0:
                return "optimal"
            leave = -1
            best = None
            for i, row in enumerate(self.rows):
                a = row[enter]
                if a > 0:
                    ratio = self.rhs[i] / a
                    if best is None or ratio < best or (
                            ratio == best and self.basis[i] < self.basis[leave]):
                        best = ratio
                        leave = i
            if leave < 0:
                return "unbounded"
            f = zrow[enter]
            self.pivot(leave, enter)
            if f:
                zrow = [z - f * a for z, a in zip(zrow, self.rows[leave])]


def solve(lp: RationalLP) -> RationalSolution:
    """Exact optimum at a vertex, or infeasible/unbounded status."""
    d = lp.num_vars
    num_slack = sum(1 for _, rel, _ in lp.constraints if rel != EQ)
    # Columns: split variables (+/-), then slacks, then artificials.
    base_cols = 2 * d + num_slack
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    slack_of_row: list[int | None] = []
    slack_idx = 0
    for coeffs, rel, b in lp.constraints:
        row = [Fraction(0)] * base_cols
        for j, c in enumerate(coeffs):
            row[j] = c
            row[d + j] = -c
        col = None
        if rel != EQ:
            col = 2 * d + slack_idx
            row[col] = Fraction(1) if rel == LE else Fraction(-1)
            slack_idx += 1
        if b < 0:
            row = [-a for a in row]
            b = -b
        rows.append(row)
        rhs.append(Fraction(b))
        usable = col is not None and rows[-1][col] == 1
        slack_of_row.append(col if usable else None)

    # Initial basis: slack where usable, otherwise an artificial column.
    basis: list[int] = []
    art_cols: list[int] = []
    for i, col in enumerate(slack_of_row):
        if col is not None:
            basis.append(col)
        else:
            art = base_cols + len(art_cols)
            art_cols.append(art)
            basis.append(art)
    total_cols = base_cols + len(art_cols)
    for i, row in enumerate(rows):
        row.extend(Fraction(0) for _ in range(total_cols - base_cols))
        if basis[i] >= base_cols:
            row[basis[i]] = Fraction(1)

    tab = _Tableau(rows, rhs, basis, total_cols)

    if art_cols:
        cost1 = [Fraction(0)] * total_cols
        for a in art_cols:
            cost1[a] = Fraction(1)
        tab.run(cost1, banned=set())
        if sum(cost1[b] * v for b, v in zip(tab.basis, tab.rhs)):
            return RationalSolution("infeasible")
        # Drive remaining artificials out of the basis (degenerate rows).
        for i in range(len(tab.rows) - 1, -1, -1):
            if tab.basis[i] >= base_cols:
                for j in range(base_cols):
                    if tab.rows[i][j]:
                        tab.pivot(i, j)
                        break
                else:
                    del tab.rows[i], tab.rhs[i], tab.basis[i]

    cost2 = [Fraction(0)] * total_cols
    for j, c in enumerate(lp.objective):
        cost2[j] = c
        cost2[d + j] = -c
    status = tab.run(cost2, banned=set(range(base_cols, total_cols)))
    if status == "unbounded":
        return RationalSolution("unbounded")

    col_value = [Fraction(0)] * total_cols
    for b, v in zip(tab.basis, tab.rhs):
        col_value[b] = v
    values = tuple(col_value[j] - col_value[d + j] for j in range(d))
    obj = sum(c * v for c, v in zip(lp.objective, values))
    return RationalSolution("optimal", values, obj)


def solve_lazy(num_vars: int, objective, always, lazy, batch: int = 8,
               seed=None) -> RationalSolution:
    """Solve with the ``lazy`` constraints activated only once violated.

    Equivalent to solving with all constraints; the returned point satisfies
    every constraint exactly.  Infeasibility of an active subset already
    proves infeasibility of the full system.  ``seed`` is a mutable set of
    lazy-constraint indices used as the starting active set; it is updated in
    place so repeated related solves stay warm.
    """
    objective = tuple(Fraction(c) for c in objective)
    always = [make_constraint(*c) for c in always]
    lazy = [make_constraint(*c) for c in lazy]
    active: set[int] = seed if seed is not None else set()
    while True:
        cons = tuple(always) + tuple(lazy[i] for i in sorted(active))
        sol = solve(RationalLP(num_vars, cons, objective))
        if sol.status == "infeasible":
            return sol
        if sol.status == "unbounded":
            if len(active) == len(lazy):
                return sol
            active.update(range(len(lazy)))
            continue
        violations = []
        for i, con in enumerate(lazy):
            if i in active:
                continue
            v = _violation(con, sol.values)
            if v > 0:
                violations.append((-v, i))
        if not violations:
            return sol
        violations.sort()
        active.update(i for _, i in violations[:batch])


# --- linear programs attached to a complete simple game ---------------------

def _quota_system(game: CompleteGame, reduced: bool):
    """Constraint families for the quota formulation over variables (w, q).

    ``reduced`` drops the weight-ordering rows, which is sound for two-type
    games with at least two winner rows (they are implied there); plain
    non-negativity is kept instead.
    """
    t = game.t
    nv = t + 1
    zero = (0,) * nv
    lazy = []
    for m in game.winners:
        lazy.append((m + (-1,), GE, 0))
    for l in shift_maximal_losing(game):
        lazy.append((l + (-1,), LE, -1))
    always = []
    if reduced:
        for i in range(t):
            always.append((_unit(nv, i), GE, 0))
        always.append((_unit(nv, t), GE, 0))
    else:
        for i in range(t - 1):
            coeffs = list(zero)
            coeffs[i] = 1
            coeffs[i + 1] = -1
            always.append((tuple(coeffs), GE, 1))
        always.append((_unit(nv, t - 1), GE, 0))
    return nv, always, lazy


def _unit(n: int, j: int) -> tuple[int, ...]:
    return tuple(1 if k == j else 0 for k in range(n))


def is_weighted(game: CompleteGame) -> tuple[bool, RationalSolution | None]:
    """Weightedness via feasibility of the quota formulation.

    The witness minimises the quota; its values are (w_1, ..., w_t, q).
    """
    nv, always, lazy = _quota_system(game, reduced=False)
    sol = solve_lazy(nv, _unit(nv, nv - 1), always, lazy)
    if sol.optimal:
        return True, sol
    return False, None


def is_weighted_quota_free(game: CompleteGame) -> bool:
    """Weightedness via the pairwise formulation without a quota variable."""
    t = game.t
    lazy = []
    for x in game.winners:
        for y in shift_maximal_losing(game):
            lazy.append((tuple(a - b for a, b in zip(x, y)), GE, 1))
    always = []
    for i in range(t - 1):
        coeffs = [0] * t
        coeffs[i] = 1
        coeffs[i + 1] = -1
        always.append((tuple(coeffs), GE, 1))
    always.append((_unit(t, t - 1), GE, 0))
    sol = solve_lazy(t, (0,) * t, always, lazy)
    return sol.optimal


def minimize_over_game(game: CompleteGame, objective) -> RationalSolution:
    """Minimise an objective over the quota formulation of a weighted game."""
    reduced = game.t == 2 and game.r >= 2
    nv, always, lazy = _quota_system(game, reduced=reduced)
    return solve_lazy(nv, objective, always, lazy)


def fractional_minima(game: CompleteGame) -> list[RationalSolution]:
    """Exact LP minima of w_1, ..., w_t, q and of the total weight.

    Returned in that order.  For two-type games with r >= 2 the redundant
    ordering constraints are dropped first.
    """
    weighted, _ = is_weighted(game)
    if not weighted:
        raise NotWeightedError("fractional minima are defined for weighted games only")
    t = game.t
    objectives = [_unit(t + 1, i) for i in range(t + 1)]
    objectives.append(tuple(game.sizes.counts) + (0,))
    return [minimize_over_game(game, obj) for obj in objectives]
