"""Exact two-phase simplex over the rationals with Bland's rule.

Solves ``min c.x  s.t.  A x = b, x >= 0`` in standard form.  Bland's rule
(smallest eligible index, smallest-index tie break in the ratio test)
makes the method cycling-free, and all pivots are Fraction-exact, so
optimal values and witnesses are byte-reproducible.
"""

from fractions import Fraction

from .errors import BudgetExceeded

INFEASIBLE = object()
UNBOUNDED = object()

DEFAULT_PIVOT_CAP = 100_000


def _pivot(tableau, basis, row, col):
    pivot_row = tableau[row]
    pv = pivot_row[col]
    tableau[row] = [v / pv for v in pivot_row]
    pivot_row = tableau[row]
    for i, r in enumerate(tableau):
        if i != row and r[col] != 0:
            f = r[col]
            tableau[i] = [a - f * b for a, b in zip(r, pivot_row)]
    basis[row] = col


def _run(tableau, basis, costs, allowed, cap):
    """Bland iterations until optimal; returns remaining pivot budget."""
    m = len(tableau)
    while True:
        duals = [costs[basis[i]] for i in range(m)]
        entering = None
        for j in allowed:
            if j in basis:
                continue
            reduced = costs[j] - sum(duals[i] * tableau[i][j] for i in range(m))
            if reduced < 0:
                entering = j
                break
        if entering is None:
            return cap
        leaving = None
        best = None
        for i in range(m):
            coeff = tableau[i][entering]
            if coeff > 0:
                ratio = tableau[i][-1] / coeff
                if best is None or ratio < best or (
                    ratio == best and basis[i] < basis[leaving]
                ):
                    best = ratio
                    leaving = i
        if leaving is None:
            return UNBOUNDED
        if cap <= 0:
            raise BudgetExceeded("simplex pivot budget exhausted")
        cap -= 1
        _pivot(tableau, basis, leaving, entering)


def solve_min(A, b, c, pivot_cap=DEFAULT_PIVOT_CAP):
    """Minimize ``c.x`` over ``{A x = b, x >= 0}``.

    Returns ``(value, x)`` with a basic optimal solution, ``INFEASIBLE``,
    or ``UNBOUNDED``.  Raises BudgetExceeded when the pivot cap runs out.
    """
    m = len(A)
    n = len(c)
    rows = []
    rhs = []
    for i in range(m):
        row = [Fraction(x) for x in A[i]]
        bi = Fraction(b[i])
        if bi < 0:
            row = [-x for x in row]
            bi = -bi
        rows.append(row)
        rhs.append(bi)
    # phase 1: artificials form the starting basis
    tableau = []
    for i in range(m):
        art = [Fraction(0)] * m
        art[i] = Fraction(1)
        tableau.append(rows[i] + art + [rhs[i]])
    basis = [n + i for i in range(m)]
    costs1 = [Fraction(0)] * n + [Fraction(1)] * m
    cap = _run(tableau, basis, costs1, range(n + m), pivot_cap)
    if cap is UNBOUNDED:  # cannot happen: phase-1 objective is bounded below
        raise AssertionError("phase 1 unbounded")
    objective = sum(costs1[basis[i]] * tableau[i][-1] for i in range(m))
    if objective > 0:
        return INFEASIBLE
    # drive remaining artificials out of the basis; drop redundant rows
    keep = []
    for i in range(m):
        if basis[i] < n:
            keep.append(i)
            continue
        col = next((j for j in range(n) if tableau[i][j] != 0), None)
        if col is None:
            continue  # redundant constraint row
        _pivot(tableau, basis, i, col)
        keep.append(i)
    tableau = [tableau[i][:n] + [tableau[i][-1]] for i in keep]
    basis = [basis[i] for i in keep]
    costs2 = [Fraction(x) for x in c]
    cap = _run(tableau, basis, costs2, range(n), cap)
    if cap is UNBOUNDED:
        return UNBOUNDED
    x = [Fraction(0)] * n
    for i, bv in enumerate(basis):
        x[bv] = tableau[i][-1]
    value = sum(costs2[j] * x[j] for j in range(n))
    return value, tuple(x)
