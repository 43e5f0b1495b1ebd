"""Asymptotic orders of vanishing as exact LP value functions.

For a tracked valuation the order at a point of the support cone is the
optimum of an exact rational LP over the generator data.  Its linearity
domains form a fan: lift each generator by its multiplicity, take the cone
over the lifted generators, and project the lower facets back down.  The
chamber fan is the common refinement of these fans over all valuations,
further sliced so that every cell respects every facet hyperplane.
"""

from dataclasses import dataclass
from fractions import Fraction

from .cones import Fan, cone_from_rays, common_refinement, hyperplane_refinement, make_fan
from .errors import BudgetExceeded, OutsideSupport
from .linalg import dot, solve_exact, vscale
from .ring import support_cone
from .simplex import DEFAULT_PIVOT_CAP, INFEASIBLE, solve_min

DEFAULT_NODE_BUDGET = 2_000_000


class _NoRepresentation:
    """Marker for integer-level values of points with no integer representation."""

    def __repr__(self):
        return "NoRepresentation"


NO_REPRESENTATION = _NoRepresentation()


@dataclass(frozen=True)
class OValue:
    value: Fraction
    witness: tuple


@dataclass(frozen=True)
class LinearityFan:
    fan: Fan
    functionals: tuple  # one linear functional per cell, same order
    valuation: str


def _heights(datum, valuation):
    return [Fraction(g.mult(valuation)) for g in datum.generators]


def asymptotic_order(datum, valuation, x, support=None, pivot_cap=DEFAULT_PIVOT_CAP):
    """Exact order of vanishing at ``x``: min of generator multiplicities
    over all nonnegative rational representations of ``x``.

    Returns an OValue with an optimal basic witness.  ``x`` outside the
    closed support cone raises OutsideSupport (distinct from value 0).
    """
    if support is None:
        support = support_cone(datum)
    if not support.contains(x):
        raise OutsideSupport(f"point {tuple(x)} is outside the support cone")
    degrees = [g.multidegree for g in datum.generators]
    n = len(x)
    A = [[Fraction(degrees[i][row]) for i in range(len(degrees))] for row in range(n)]
    result = solve_min(A, [Fraction(v) for v in x], _heights(datum, valuation), pivot_cap)
    if result is INFEASIBLE:
        # contains() passed, so this is unreachable for consistent cones
        raise OutsideSupport(f"no representation of {tuple(x)} over the generators")
    value, witness = result
    return OValue(value, witness)


def linearity_fan(datum, valuation, support=None):
    """Fan of maximal cones on which the order function is linear.

    Built as the regular subdivision induced by lifting generator i to
    (multidegree_i, multiplicity_i) and projecting the lower facets of the
    lifted cone.
    """
    if support is None:
        support = support_cone(datum)
    degrees = [g.multidegree for g in datum.generators]
    heights = _heights(datum, valuation)
    n = support.ambient_dim
    lifted = [tuple(d) + (h,) for d, h in zip(degrees, heights)]
    lifted_cone = cone_from_rays(lifted)
    if lifted_cone.dim == support.dim:
        # heights are linear on the support: a single cell
        functional = _flat_functional(lifted_cone, n)
        return LinearityFan(make_fan([support], support), (functional,), valuation)
    cells = []
    functionals = []
    for hs in lifted_cone.facets:
        w, c = hs.normal[:n], hs.normal[n]
        if c <= 0:
            continue
        members = [r[:n] for r in lifted_cone.rays if hs.evaluate(r) == 0]
        cell = cone_from_rays(members)
        if cell.dim != support.dim:
            continue
        cells.append(cell)
        functionals.append(tuple(Fraction(-wi, c) for wi in w))
    fan = make_fan(cells, support)
    ordered = []
    for cell in fan.cells:
        idx = cells.index(cell)
        ordered.append(functionals[idx])
    return LinearityFan(fan, tuple(ordered), valuation)


def _flat_functional(lifted_cone, n):
    """Linear functional t = f(x) on a lifted cone of ungained dimension."""
    for eq in lifted_cone.equations:
        if eq[n] != 0:
            return tuple(Fraction(-eq[i], eq[n]) for i in range(n))
    raise AssertionError("flat lifted cone without a height equation")


def chamber_fan(datum, support=None, refine=True):
    """Decomposition of the support cone on which every tracked order
    function is linear, optionally sliced by all facet hyperplanes."""
    if support is None:
        support = support_cone(datum)
    if not datum.valuations:
        fan = make_fan([support], support)
    else:
        fans = [linearity_fan(datum, v, support).fan for v in datum.valuations]
        fan = common_refinement(fans)
    if refine:
        fan = hyperplane_refinement(fan)
    return fan


def functional_on_cell(datum, valuation, cell, support=None):
    """Linear functional of the order function on a cell where it is linear.

    Derived from the linearity fan: the cell must be contained in one of
    its cells (true for chamber-fan cells by construction).
    """
    lf = linearity_fan(datum, valuation, support)
    probe = cell.relative_interior_point()
    for host, functional in zip(lf.fan.cells, lf.functionals):
        if host.contains(probe):
            return functional
    raise OutsideSupport("cell does not meet the linearity fan")


def cell_functionals(datum, fan, support=None):
    """Per-valuation linear functionals on every cell of a chamber fan."""
    return {
        valuation: tuple(
            functional_on_cell(datum, valuation, cell, support) for cell in fan.cells
        )
        for valuation in datum.valuations
    }


def _unit_index(degrees, n):
    """Map coordinate -> generator index of a cheapest unit-vector generator."""
    units = {}
    for i, d in enumerate(degrees):
        nz = [j for j, x in enumerate(d) if x != 0]
        if len(nz) == 1 and d[nz[0]] == 1:
            units.setdefault(nz[0], []).append(i)
    if len(units) < n:
        return None
    return units


def _enumerate_min(degrees, heights, target, budget):
    """Plain bounded DFS over all integer representations of ``target``.

    Returns (best value, nodes left) or (None, nodes left) if no integer
    representation exists.
    """
    s = len(degrees)
    best = [None]

    def recurse(i, remaining, cost, nodes):
        if nodes <= 0:
            raise BudgetExceeded("integer enumeration budget exhausted")
        nodes -= 1
        if best[0] is not None and cost >= best[0]:
            return nodes
        if all(v == 0 for v in remaining):
            best[0] = cost
            return nodes
        if i == s:
            return nodes
        d = degrees[i]
        bound = None
        for j, dj in enumerate(d):
            if dj > 0:
                b = remaining[j] // dj
                bound = b if bound is None else min(bound, b)
        later = [k for k in range(i + 1, s)]
        for j, rj in enumerate(remaining):
            if rj > 0 and d[j] == 0 and all(degrees[k][j] == 0 for k in later):
                return nodes  # coordinate j can no longer be covered
        for a in range(bound, -1, -1):
            rem = tuple(r - a * dj for r, dj in zip(remaining, d))
            nodes = recurse(i + 1, rem, cost + a * heights[i], nodes)
        return nodes

    nodes = recurse(0, tuple(target), Fraction(0), budget)
    return best[0], nodes


def _reduced_min(degrees, heights, units, target, budget):
    """Exact minimum over integer representations when unit generators
    cover every coordinate.

    Any leftover is absorbed by units, so only generators with negative
    reduced cost need enumerating; this is a reformulation, not a
    heuristic, and returns the same optimum as the plain search.
    """
    n = len(target)
    unit_cost = []
    for j in range(n):
        unit_cost.append(min(heights[i] for i in units[j]))
    base = sum(uc * t for uc, t in zip(unit_cost, target))
    items = []
    for i, d in enumerate(degrees):
        w = heights[i] - sum(uc * dj for uc, dj in zip(unit_cost, d))
        if w < 0:
            items.append((w, d))
    items.sort(key=lambda it: it[0])
    best = [Fraction(0)]

    def bound_below(i, remaining):
        lb = Fraction(0)
        for w, d in items[i:]:
            cap = min(remaining[j] // d[j] for j in range(n) if d[j] > 0)
            lb += w * cap
        return lb

    def recurse(i, remaining, acc, nodes):
        if nodes <= 0:
            raise BudgetExceeded("integer enumeration budget exhausted")
        nodes -= 1
        if acc < best[0]:
            best[0] = acc
        if i == len(items):
            return nodes
        if acc + bound_below(i, remaining) >= best[0]:
            return nodes
        w, d = items[i]
        cap = min(remaining[j] // d[j] for j in range(n) if d[j] > 0)
        for a in range(cap, -1, -1):
            rem = tuple(r - a * dj for r, dj in zip(remaining, d))
            nodes = recurse(i + 1, rem, acc + a * w, nodes)
        return nodes

    nodes = recurse(0, tuple(target), Fraction(0), budget)
    return base + best[0], nodes


def integer_order(datum, valuation, x, k, node_budget=DEFAULT_NODE_BUDGET):
    """(1/k) times the minimal multiplicity over integer representations of
    ``k*x``; NO_REPRESENTATION if none exists."""
    target = tuple(Fraction(v) * k for v in x)
    if any(t.denominator != 1 for t in target):
        raise ValueError(f"{k} * {tuple(x)} is not an integer point")
    target = tuple(int(t) for t in target)
    if any(t < 0 for t in target):
        return NO_REPRESENTATION
    degrees = [tuple(g.multidegree) for g in datum.generators]
    heights = _heights(datum, valuation)
    units = _unit_index(degrees, len(target))
    if units is not None:
        value, _ = _reduced_min(degrees, heights, units, target, node_budget)
    else:
        value, _ = _enumerate_min(degrees, heights, target, node_budget)
    if value is None:
        return NO_REPRESENTATION
    return value / k


def stabilization_multiple(datum, valuation, x, k_max, support=None,
                           node_budget=DEFAULT_NODE_BUDGET):
    """Smallest k <= k_max with integer-level value equal to the LP value,
    or None when no such k exists within the bound."""
    lp = asymptotic_order(datum, valuation, x, support=support).value
    for k in range(1, k_max + 1):
        ip = integer_order(datum, valuation, x, k, node_budget=node_budget)
        if ip is NO_REPRESENTATION:
            continue
        if ip == lp:
            return k
    return None


def evaluate_functional(functional, x):
    return dot(functional, x)


def scale_point(x, factor):
    return vscale(Fraction(factor), tuple(Fraction(v) for v in x))
