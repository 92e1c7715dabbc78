"""Fourier-Motzkin elimination: the independent feasibility/optimum oracle.

Deliberately separate from the simplex path so the two can check each other.
Suitable only for small systems; to keep the intermediate row sets
manageable, equality constraints are substituted out Gaussian-style, the
elimination order is chosen greedily (fewest cross products first) and rows
are normalized and deduplicated after every step.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .linsystem import EQ, GE, LinSystem

Row = tuple[dict[int, Fraction], Fraction]  # coeffs, rhs meaning coeffs.x <= rhs


def rows_from_system(system: LinSystem) -> list[Row]:
    """All constraints and bounds of a LinSystem in <=-form."""
    rows: list[Row] = []
    for con in system.constraints:
        if con.rel in (GE, EQ):
            rows.append(({j: -c for j, c in con.coeffs.items()}, -con.rhs))
        if con.rel in ("le", EQ):
            rows.append((dict(con.coeffs), con.rhs))
    for j, (lo, hi) in enumerate(system.bounds):
        rows.append(({j: Fraction(-1)}, -lo))
        rows.append(({j: Fraction(1)}, hi))
    return rows


def _normalize(row: Row) -> Row | None:
    coeffs = {j: c for j, c in row[0].items() if c != 0}
    if not coeffs:
        return None if row[1] >= 0 else (coeffs, row[1])
    lead = abs(coeffs[min(coeffs)])
    return ({j: c / lead for j, c in coeffs.items()}, row[1] / lead)


def _dedupe(rows: list[Row]) -> list[Row]:
    best: dict[tuple, Fraction] = {}
    for coeffs, rhs in rows:
        key = tuple(sorted(coeffs.items()))
        if key not in best or rhs < best[key]:
            best[key] = rhs
    return [(dict(k), rhs) for k, rhs in best.items()]


def eliminate(rows: list[Row], var: int) -> list[Row] | None:
    """Eliminate one variable; returns None when a contradiction appears."""
    pos, neg, rest = [], [], []
    for coeffs, rhs in rows:
        c = coeffs.get(var, Fraction(0))
        if c > 0:
            pos.append(({j: v / c for j, v in coeffs.items() if j != var}, rhs / c))
        elif c < 0:
            neg.append(({j: v / -c for j, v in coeffs.items() if j != var}, rhs / -c))
        else:
            rest.append((coeffs, rhs))
    out = list(rest)
    for (pc, pr), (nc, nr) in itertools.product(pos, neg):
        coeffs = dict(pc)
        for j, v in nc.items():
            coeffs[j] = coeffs.get(j, Fraction(0)) + v
        out.append((coeffs, pr + nr))
    cleaned = []
    for row in out:
        norm = _normalize(row)
        if norm is None:
            continue
        if not norm[0] and norm[1] < 0:
            return None
        cleaned.append(norm)
    return _dedupe(cleaned)


def _pick_variable(rows: list[Row], variables: set[int]) -> int:
    """Greedy order: eliminate the variable producing the fewest cross rows."""

    def cost(var: int) -> tuple[int, int]:
        pos = sum(1 for coeffs, _ in rows if coeffs.get(var, 0) > 0)
        neg = sum(1 for coeffs, _ in rows if coeffs.get(var, 0) < 0)
        return pos * neg - pos - neg, var

    return min(variables, key=cost)


def _eliminate_all(rows: list[Row], variables: set[int]) -> list[Row] | None:
    remaining = set(variables)
    while remaining:
        var = _pick_variable(rows, remaining)
        remaining.discard(var)
        rows = eliminate(rows, var)
        if rows is None:
            return None
    return rows


def _substitute_equalities(system: LinSystem):
    """Solve each equality for one variable and substitute it everywhere.

    Returns (inequality rows incl. bounds, remaining variable set), or None
    when the equalities alone are contradictory.
    """
    solved: dict[int, tuple[dict[int, Fraction], Fraction]] = {}  # var -> expr

    def reduce_row(coeffs: dict[int, Fraction], rhs: Fraction):
        coeffs = dict(coeffs)
        changed = True
        while changed:
            changed = False
            for var in list(coeffs):
                if var in solved and coeffs[var] != 0:
                    f = coeffs.pop(var)
                    expr, const = solved[var]
                    for j, c in expr.items():
                        coeffs[j] = coeffs.get(j, Fraction(0)) + f * c
                    rhs += f * const
                    changed = True
        return {j: c for j, c in coeffs.items() if c != 0}, rhs

    for con in system.constraints:
        if con.rel != EQ:
            continue
        coeffs, rhs = reduce_row(con.coeffs, -con.rhs)
        if not coeffs:
            if rhs != 0:
                return None
            continue
        var = min(coeffs)
        f = coeffs.pop(var)
        # var = -(sum coeffs.x + rhs) / f
        solved[var] = (
            {j: -c / f for j, c in coeffs.items()},
            -rhs / f,
        )

    rows: list[Row] = []
    for con in system.constraints:
        if con.rel == EQ:
            continue
        sign = -1 if con.rel == GE else 1
        coeffs, rhs = reduce_row(
            {j: sign * c for j, c in con.coeffs.items()}, -sign * con.rhs
        )
        rows.append((coeffs, -rhs))
    for j, (lo, hi) in enumerate(system.bounds):
        for base, bound in (({j: Fraction(-1)}, -lo), ({j: Fraction(1)}, hi)):
            coeffs, rhs = reduce_row(base, -bound)
            rows.append((coeffs, -rhs))
    remaining = set(range(system.nvars)) - set(solved)
    return rows, remaining


def fm_feasible(system: LinSystem) -> bool:
    """Feasibility by eliminating every variable; exact rational arithmetic."""
    pre = _substitute_equalities(system)
    if pre is None:
        return False
    raw, remaining = pre
    rows = []
    for r in raw:
        norm = _normalize(r)
        if norm is None:
            continue
        if not norm[0] and norm[1] < 0:
            return False
        rows.append(norm)
    rows = _eliminate_all(_dedupe(rows), remaining)
    if rows is None:
        return False
    return all(rhs >= 0 for coeffs, rhs in rows if not coeffs)


def fm_maximize(
    rows: list[Row], objective: dict[int, Fraction], variables: list[int]
) -> Fraction | None:
    """Exact maximum of objective.x subject to the <=-rows.

    Introduces t <= objective.x, eliminates all variables and reads the
    upper bounds on t.  Returns None when the system is infeasible.
    """
    t = max(variables, default=-1) + 1
    work = [({**{j: -c for j, c in objective.items()}, t: Fraction(1)}, Fraction(0))]
    work.extend((dict(c), r) for c, r in rows)
    work = [n for n in (_normalize(r) for r in work) if n is not None]
    work = _eliminate_all(_dedupe(work), set(variables))
    if work is None:
        return None
    upper = None
    for coeffs, rhs in work:
        c = coeffs.get(t, Fraction(0))
        if c > 0:
            bound = rhs / c
            if upper is None or bound < upper:
                upper = bound
        elif not coeffs and rhs < 0:
            return None
    if upper is None:
        raise ValueError("objective is unbounded over the given rows")
    return upper
