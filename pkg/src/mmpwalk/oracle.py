"""Seeded instance generation and independent small-scale oracles.

The enumeration oracle shares no code with the LP path; agreement between
the two on random instances is the package's main self-check.
"""

import random
import warnings
from dataclasses import dataclass
from fractions import Fraction

from .cones import cone_from_rays
from .errors import BudgetExceeded
from .ring import (
    GeneratorDatum,
    NefConeDatum,
    NumericalMap,
    PushforwardDatum,
    RingDatum,
)

ORACLE_NODE_BUDGET = 5_000_000


@dataclass(frozen=True)
class InstanceSpec:
    r: int
    generator_count: int
    valuation_count: int
    coordinate_bound: int
    seed: int


def random_instance(spec):
    """Deterministic random ring datum.

    The r+1 unit multidegrees are always included, so the support cone is
    the full orthant and every lattice point has an integer representation.
    """
    if min(spec.r, spec.generator_count, spec.valuation_count,
           spec.coordinate_bound) < 1:
        raise ValueError("all instance bounds must be positive")
    rng = random.Random(spec.seed)
    n = spec.r + 1
    count = spec.generator_count
    if count < n:
        warnings.warn(
            f"generator_count {count} below r+1={n}; clamping up", stacklevel=2
        )
        count = n
    degrees = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    while len(degrees) < count:
        d = tuple(rng.randint(0, spec.coordinate_bound) for _ in range(n))
        if any(x != 0 for x in d):
            degrees.append(d)
    valuations = tuple(f"G{i + 1}" for i in range(spec.valuation_count))
    generators = []
    for d in degrees:
        mults = {}
        for v in valuations:
            denom = rng.randint(1, 2)
            mults[v] = Fraction(rng.randint(0, spec.coordinate_bound * denom), denom)
        generators.append(GeneratorDatum(multidegree=d, mults=mults))
    matrix = tuple(
        tuple(
            Fraction(1 if j == i else (rng.randint(-3, 3) if j == n - 1 else 0))
            for j in range(n)
        )
        for i in range(spec.r)
    )
    labels = ("K",) + tuple(f"D{i + 1}" for i in range(spec.r))
    return RingDatum(
        r=spec.r,
        labels=labels,
        generators=tuple(generators),
        valuations=valuations,
        numerical=NumericalMap(matrix=matrix, target_dim=spec.r),
    )


def _min_over_integer_representations(degrees, heights, target, budget):
    """Exhaustive DFS, no pruning beyond feasibility bounds.

    Deliberately kept independent of the LP and of the smarter
    reduced-cost search.
    """
    s = len(degrees)
    best = [None]

    def recurse(i, remaining, cost, nodes):
        if nodes <= 0:
            raise BudgetExceeded("oracle enumeration budget exhausted")
        nodes -= 1
        if all(v == 0 for v in remaining):
            if best[0] is None or cost < best[0]:
                best[0] = cost
            return nodes
        if i == s:
            return nodes
        if best[0] is not None and cost >= best[0]:
            return nodes
        d = degrees[i]
        bound = min(
            (remaining[j] // d[j] for j in range(len(d)) if d[j] > 0),
            default=None,
        )
        if bound is None:
            return recurse(i + 1, remaining, cost, nodes)
        for a in range(bound, -1, -1):
            rem = tuple(r - a * dj for r, dj in zip(remaining, d))
            nodes = recurse(i + 1, rem, cost + a * heights[i], nodes)
        return nodes

    recurse(0, tuple(target), Fraction(0), budget)
    return best[0]


def o_value_oracle(datum, valuation, x, k_list, budget=ORACLE_NODE_BUDGET):
    """Enumeration values (1/k)*min over integer representations of k*x,
    one per requested k; None marks a k with no integer representation."""
    degrees = [tuple(g.multidegree) for g in datum.generators]
    heights = [Fraction(g.mult(valuation)) for g in datum.generators]
    out = []
    for k in k_list:
        target = tuple(int(v) * k for v in x)
        best = _min_over_integer_representations(degrees, heights, target, budget)
        out.append(None if best is None else best / k)
    return tuple(out)


def builtin_examples():
    """Catalog of named hand-built ring data."""
    e = "E"
    blowup = RingDatum(
        r=1,
        labels=("K_X+Delta", "D1"),
        generators=(
            GeneratorDatum(multidegree=(1, 0), mults={e: Fraction(1)}),
            GeneratorDatum(multidegree=(0, 1), mults={e: Fraction(0)}),
            GeneratorDatum(multidegree=(1, 1), mults={e: Fraction(0)}),
        ),
        valuations=(e,),
        numerical=NumericalMap(
            matrix=((Fraction(2), Fraction(6)), (Fraction(1), Fraction(-1))),
            target_dim=2,
        ),
        nef=NefConeDatum(cone=cone_from_rays([(1, 0), (1, -1)])),
        pushforwards=(
            # contracting the exceptional curve lands on the plane; classes
            # there are multiples of the hyperplane, nef iff nonnegative
            PushforwardDatum(
                model_id="P2",
                matrix=((Fraction(2), Fraction(6)),),
                nef=NefConeDatum(cone=cone_from_rays([(1,)])),
            ),
        ),
    )
    no_valuations = RingDatum(
        r=1,
        labels=("K", "D1"),
        generators=(
            GeneratorDatum(multidegree=(1, 0), mults={}),
            GeneratorDatum(multidegree=(0, 1), mults={}),
        ),
        valuations=(),
        numerical=NumericalMap(
            matrix=((Fraction(1), Fraction(0)),), target_dim=1
        ),
    )
    fractional = RingDatum(
        r=1,
        labels=("K", "D1"),
        generators=(
            GeneratorDatum(multidegree=(2, 1), mults={"G": Fraction(1)}),
            GeneratorDatum(multidegree=(1, 2), mults={"G": Fraction(0)}),
        ),
        valuations=("G",),
        numerical=NumericalMap(
            matrix=((Fraction(1), Fraction(0)),), target_dim=1
        ),
    )
    return {
        "blowup-P2": blowup,
        "quadrant-trivial": no_valuations,
        "fractional-vertex": fractional,
    }
