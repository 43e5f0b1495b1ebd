"""Order functions: LP values, linearity fans, chamber fans, integer levels."""

from fractions import Fraction

import pytest

from mmpwalk import (
    NO_REPRESENTATION,
    OutsideSupport,
    asymptotic_order,
    builtin_examples,
    cell_functionals,
    chamber_fan,
    integer_order,
    linearity_fan,
    stabilization_multiple,
)
from mmpwalk.cones import cone_from_rays
from mmpwalk.errors import BudgetExceeded
from mmpwalk.orders import evaluate_functional, functional_on_cell
from mmpwalk.ring import support_cone


@pytest.fixture(scope="module")
def blowup():
    return builtin_examples()["blowup-P2"]


@pytest.fixture(scope="module")
def fractional():
    return builtin_examples()["fractional-vertex"]


def test_order_value_and_witness(blowup):
    ov = asymptotic_order(blowup, "E", (2, 1))
    assert ov.value == 1
    assert ov.witness == (Fraction(1), Fraction(0), Fraction(1))


def test_order_on_diagonal_is_zero(blowup):
    assert asymptotic_order(blowup, "E", (1, 1)).value == 0
    assert asymptotic_order(blowup, "E", (1, 5)).value == 0


def test_order_outside_support_raises(blowup):
    with pytest.raises(OutsideSupport):
        asymptotic_order(blowup, "E", (-1, 1))


def test_order_homogeneous_on_samples(blowup):
    base = asymptotic_order(blowup, "E", (3, 1)).value
    assert asymptotic_order(blowup, "E", (6, 2)).value == 2 * base
    half = tuple(Fraction(x, 2) for x in (3, 1))
    assert asymptotic_order(blowup, "E", half).value == base / 2


def test_linearity_fan_two_cells(blowup):
    lf = linearity_fan(blowup, "E")
    assert [c.rays for c in lf.fan.cells] == [((0, 1), (1, 1)), ((1, 0), (1, 1))]
    assert lf.functionals == (
        (Fraction(0), Fraction(0)),
        (Fraction(1), Fraction(-1)),
    )
    assert lf.valuation == "E"


def test_linearity_fan_flat_heights_single_cell():
    # heights already linear in the degree: x-coordinate itself
    datum = builtin_examples()["blowup-P2"]
    flat = type(datum)(
        r=datum.r,
        labels=datum.labels,
        generators=tuple(
            type(g)(multidegree=g.multidegree, mults={"E": Fraction(g.multidegree[0])})
            for g in datum.generators
        ),
        valuations=("E",),
        numerical=datum.numerical,
    )
    lf = linearity_fan(flat, "E")
    assert len(lf.fan.cells) == 1
    assert lf.functionals == ((Fraction(1), Fraction(0)),)


def test_chamber_fan_matches_linearity_fan_single_valuation(blowup):
    fan = chamber_fan(blowup)
    assert [c.rays for c in fan.cells] == [((0, 1), (1, 1)), ((1, 0), (1, 1))]


def test_chamber_fan_without_valuations_is_support():
    datum = builtin_examples()["quadrant-trivial"]
    fan = chamber_fan(datum)
    assert len(fan.cells) == 1
    assert fan.cells[0] == fan.support


def test_cell_functionals_reproduce_orders(blowup):
    fan = chamber_fan(blowup)
    fns = cell_functionals(blowup, fan)
    for ci, cell in enumerate(fan.cells):
        p = cell.relative_interior_point()
        assert evaluate_functional(fns["E"][ci], p) == asymptotic_order(
            blowup, "E", p
        ).value


def test_functional_on_foreign_cell_raises(blowup):
    outside = cone_from_rays([(1, -1), (1, 0)])
    with pytest.raises(OutsideSupport):
        functional_on_cell(blowup, "E", outside)


def test_integer_order_agrees_when_witness_integral(blowup):
    assert integer_order(blowup, "E", (2, 1), 1) == 1
    assert integer_order(blowup, "E", (1, 1), 1) == 0


def test_integer_order_no_representation(fractional):
    assert integer_order(fractional, "G", (1, 1), 1) is NO_REPRESENTATION
    assert integer_order(fractional, "G", (1, 1), 2) is NO_REPRESENTATION


def test_integer_order_rejects_non_integral_scaling(fractional):
    with pytest.raises(ValueError):
        integer_order(fractional, "G", (Fraction(1, 2), 1), 1)


def test_integer_order_budget(blowup):
    with pytest.raises(BudgetExceeded):
        integer_order(blowup, "E", (30, 30), 12, node_budget=3)


def test_fractional_vertex_stabilizes_at_three(fractional):
    assert asymptotic_order(fractional, "G", (1, 1)).value == Fraction(1, 3)
    assert integer_order(fractional, "G", (1, 1), 3) == Fraction(1, 3)
    assert stabilization_multiple(fractional, "G", (1, 1), 12) == 3


def test_fractional_vertex_witness_is_fractional(fractional):
    ov = asymptotic_order(fractional, "G", (1, 1))
    assert any(w.denominator != 1 for w in ov.witness)


def test_stabilization_one_for_integral_witness(blowup):
    assert stabilization_multiple(blowup, "E", (2, 1), 12) == 1


def test_stabilization_none_within_bound(fractional):
    assert stabilization_multiple(fractional, "G", (1, 1), 2) is None


def test_integer_order_sandwiches_lp(fractional):
    lp = asymptotic_order(fractional, "G", (2, 2)).value
    for k in range(1, 13):
        ip = integer_order(fractional, "G", (2, 2), k)
        if ip is not NO_REPRESENTATION:
            assert ip >= lp


def test_reduced_and_plain_enumeration_agree(blowup):
    # blowup has unit generators covering both coordinates (fast path);
    # dropping the unit on the second coordinate forces the plain DFS
    from mmpwalk.ring import GeneratorDatum, NumericalMap, RingDatum

    no_units = RingDatum(
        r=1,
        labels=("K", "D1"),
        generators=(
            GeneratorDatum(multidegree=(1, 0), mults={"E": Fraction(1)}),
            GeneratorDatum(multidegree=(0, 2), mults={"E": Fraction(0)}),
            GeneratorDatum(multidegree=(1, 1), mults={"E": Fraction(0)}),
        ),
        valuations=("E",),
        numerical=NumericalMap(matrix=((Fraction(1), Fraction(0)),), target_dim=1),
    )
    for point in [(2, 2), (3, 1), (4, 4)]:
        plain = integer_order(no_units, "E", point, 2)
        lp = asymptotic_order(no_units, "E", point).value
        if plain is not NO_REPRESENTATION:
            assert plain >= lp


def test_support_passed_in_matches_recomputed(blowup):
    sup = support_cone(blowup)
    a = asymptotic_order(blowup, "E", (2, 1), support=sup)
    b = asymptotic_order(blowup, "E", (2, 1))
    assert a == b
