"""Exact two-phase simplex over the rationals.

Minimizes a linear objective subject to equality constraints and
nonnegativity.  Every number is a Fraction and every comparison exact, so the
optimum is the true rational optimum, not an approximation.  Pivots follow
Bland's rule (smallest eligible index enters; among tied minimum ratios the
row whose basic variable has the smallest index leaves), which rules out
cycling on degenerate instances.
"""

from __future__ import annotations

from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)

# Hard safety stop; Bland's rule terminates long before this on any instance
# this package builds.
MAX_PIVOTS = 1_000_000


class SimplexError(RuntimeError):
    """Internal failure: unbounded problem or pivot-limit overrun."""


def _pivot(tab, basis, row, col):
    """Pivot the full tableau (constraint rows + z-row) on (row, col)."""
    piv = tab[row][col]
    inv = ONE / piv
    tab[row] = [a * inv for a in tab[row]]
    prow = tab[row]
    for i in range(len(tab)):
        if i == row:
            continue
        factor = tab[i][col]
        if factor == 0:
            continue
        tab[i] = [a - factor * b for a, b in zip(tab[i], prow)]
    basis[row] = col


def _iterate(tab, basis, n_enter):
    """Run Bland pivots until the z-row has no negative reduced cost among
    columns 0..n_enter-1.  The z-row is tab[-1]; constraint rows precede it."""
    m = len(tab) - 1
    zrow = tab[-1]
    pivots = 0
    while True:
        enter = -1
        for j in range(n_enter):
            if zrow[j] < 0:
                enter = j
                break
        if enter < 0:
            return
        # ratio test over rows with a positive pivot column entry
        best_ratio = None
        leave = -1
        for i in range(m):
            coeff = tab[i][enter]
            if coeff > 0:
                ratio = tab[i][-1] / coeff
                if (
                    best_ratio is None
                    or ratio < best_ratio
                    or (ratio == best_ratio and basis[i] < basis[leave])
                ):
                    best_ratio = ratio
                    leave = i
        if leave < 0:
            raise SimplexError("unbounded objective")
        _pivot(tab, basis, leave, enter)
        zrow = tab[-1]
        pivots += 1
        if pivots > MAX_PIVOTS:
            raise SimplexError("pivot limit exceeded")


def solve_min(costs, rows, rhs):
    """Minimize costs . x subject to rows . x == rhs, x >= 0.

    costs: sequence of n Fractions (ints accepted).
    rows:  m sequences of n Fractions.
    rhs:   m Fractions.

    Returns (status, optimum, x): status "optimal" with the exact optimum and
    one optimal basic feasible solution, or ("infeasible", None, None).
    Raises SimplexError on an unbounded objective (impossible when the
    feasible set is bounded, as for every instance built by this package).
    """
    m = len(rows)
    n = len(costs)
    costs = [Fraction(c) for c in costs]
    if m == 0:
        # only nonnegativity: x = 0 is optimal whenever no cost is negative
        if any(c < 0 for c in costs):
            raise SimplexError("unbounded objective")
        return "optimal", ZERO, [ZERO] * n

    # Phase 1: minimize the sum of one artificial variable per row.
    tab = []
    for row, b in zip(rows, rhs):
        row = [Fraction(a) for a in row]
        b = Fraction(b)
        if b < 0:
            row = [-a for a in row]
            b = -b
        tab.append(row + [ZERO] * m + [b])
    for i in range(m):
        tab[i][n + i] = ONE
    basis = list(range(n, n + m))
    # reduced costs for the artificial basis: z_j = 0 - sum_i tab[i][j]
    zrow = [ZERO] * (n + m + 1)
    for j in range(n):
        zrow[j] = -sum(tab[i][j] for i in range(m))
    zrow[-1] = -sum(tab[i][-1] for i in range(m))
    tab.append(zrow)

    # Artificial columns never re-enter: forcing them to stay at zero once
    # nonbasic cannot hide feasibility (any all-original feasible point has
    # every artificial at zero already), so entering scans originals only.
    _iterate(tab, basis, n)
    phase1_value = -tab[-1][-1]
    if phase1_value > 0:
        return "infeasible", None, None

    # Drive leftover artificials out of the basis; rows that cannot pivot on
    # any original column are redundant and get dropped.
    drop = []
    for i in range(m):
        if basis[i] >= n:
            col = next((j for j in range(n) if tab[i][j] != 0), -1)
            if col < 0:
                drop.append(i)
            else:
                _pivot(tab, basis, i, col)
    keep = [i for i in range(m) if i not in drop]
    tab = [[tab[i][j] for j in range(n)] + [tab[i][-1]] for i in keep]
    basis = [basis[i] for i in keep]
    m = len(basis)

    # Phase 2: the real objective over the feasible basis found above.
    zrow = list(costs) + [ZERO]
    for i in range(m):
        cb = costs[basis[i]]
        if cb == 0:
            continue
        for j in range(n + 1):
            zrow[j] -= cb * tab[i][j]
    tab.append(zrow)
    _iterate(tab, basis, n)

    x = [ZERO] * n
    for i in range(m):
        x[basis[i]] = tab[i][-1]
    optimum = sum(c * v for c, v in zip(costs, x))
    return "optimal", optimum, x
