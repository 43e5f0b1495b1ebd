"""Command-line surface binding the pipeline end to end.

Commands: decompose, walk, veronese, check, oracle.  Exit codes: 0 ok,
1 failed check, 2 parse error, 3 validation/data error, 4 budget
exhausted, 5 non-generic segment.
"""

import argparse
import os
import random
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import serialize
from .cones import contains
from .errors import (
    BudgetExceeded,
    InconsistentInput,
    MissingNefData,
    MmpwalkError,
    NonGenericSegment,
    NotFoundError,
    OutsideSupport,
    ParseError,
)
from .oracle import builtin_examples, o_value_oracle
from .orders import asymptotic_order, cell_functionals, chamber_fan, evaluate_functional
from .ring import support_cone, validate
from .veronese import grid_additivity_check, veronese_degree
from .walk import classify_nef, emit_trace, make_segment, minimal_model_chamber, order_chambers

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_BUDGET = 4
EXIT_NON_GENERIC = 5


@dataclass
class RunConfig:
    input: str
    output: str
    format: str
    seed: int
    k_max: int
    grid_depth: int
    budget: int
    example: str
    refine: bool
    h: str
    points: list
    degrees: str
    m_max: int


def _read_input(cfg):
    if cfg.example:
        catalog = builtin_examples()
        if cfg.example not in catalog:
            raise ParseError(
                f"unknown example {cfg.example!r}; available: {sorted(catalog)}"
            )
        return catalog[cfg.example], None
    if not cfg.input:
        raise ParseError("either --input or --example is required")
    if cfg.input == "-":
        text = sys.stdin.read()
    else:
        with open(cfg.input, "r", encoding="utf-8") as fh:
            text = fh.read()
    return serialize.ring_from_json(serialize.loads(text))


def _write_output(cfg, text):
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _validated(datum):
    report = validate(datum)
    if not report.ok():
        lines = [f"{e.severity}: [{e.code}] {e.message}" for e in report.entries]
        raise _ValidationFailure("\n".join(lines))
    return report


class _ValidationFailure(MmpwalkError):
    pass


def _parse_point(text):
    try:
        return tuple(Fraction(part.strip()) for part in text.split(","))
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad point {text!r}; expected comma-separated rationals")


def cmd_decompose(cfg):
    datum, _ = _read_input(cfg)
    _validated(datum)
    fan = chamber_fan(datum, refine=cfg.refine)
    functionals = cell_functionals(datum, fan)
    if cfg.format == "text":
        lines = [f"support rays: {[list(r) for r in fan.support.rays]}"]
        for i, cell in enumerate(fan.cells):
            lines.append(f"cell {i}: rays {[list(r) for r in cell.rays]}")
        _write_output(cfg, "\n".join(lines) + "\n")
    else:
        _write_output(cfg, serialize.dumps(serialize.fan_to_json(fan, functionals)))
    return EXIT_OK


def _trace_text(walk, trace, cls):
    lines = [f"chambers met: {walk.length}"]
    for i, (lo, hi) in enumerate(walk.intervals):
        lines.append(f"  chamber {walk.chambers[i]}: t in [{lo}, {hi}]")
    if cls is not None:
        lines.append(f"nef classification ({cls.mode}): indices {list(cls.indices)}")
    for s in trace.steps:
        iso = {True: " (possibly isomorphism)", False: "", None: " (classification unknown)"}
        lines.append(
            f"step at t={s.t}: chamber {s.from_chamber} -> {s.to_chamber}"
            f" wall {[str(v) for v in s.wall_point]} model {s.model_id}{iso[s.possibly_isomorphism]}"
        )
    lines.append(
        f"final: chamber {trace.final_chamber}, divisor"
        f" {[str(v) for v in trace.final_divisor]}, model {trace.final_model_id}"
    )
    return "\n".join(lines) + "\n"


def cmd_walk(cfg):
    datum, segment_h = _read_input(cfg)
    _validated(datum)
    if cfg.h:
        segment_h = _parse_point(cfg.h)
    if segment_h is None:
        raise ParseError("a segment is required: supply document 'segment' or --h")
    fan = chamber_fan(datum, refine=cfg.refine)
    seg = make_segment(segment_h, grading_dim=datum.grading_dim)
    walk = order_chambers(fan, seg)
    cls = classify_nef(walk, datum) if datum.nef is not None else None
    trace = emit_trace(walk, cls, datum)
    if cfg.format == "text":
        _write_output(cfg, _trace_text(walk, trace, cls))
    else:
        doc = serialize.trace_to_json(trace)
        doc["intervals"] = [[str(lo), str(hi)] for lo, hi in walk.intervals]
        doc["chambers"] = list(walk.chambers)
        if cls is not None:
            doc["nef_classification"] = {
                "mode": cls.mode,
                "indices": list(cls.indices),
            }
        _write_output(cfg, serialize.dumps(doc))
    return EXIT_OK


def cmd_veronese(cfg):
    if not cfg.degrees:
        raise ParseError("--degrees is required, e.g. --degrees 2,3")
    try:
        degrees = [int(p) for p in cfg.degrees.split(",")]
    except ValueError:
        raise ParseError(f"bad --degrees {cfg.degrees!r}")
    result = veronese_degree(degrees, cfg.m_max)
    if cfg.format == "text":
        _write_output(
            cfg,
            f"d = {result.d} ({result.certified} up to m = {result.verified_up_to})\n",
        )
    else:
        _write_output(
            cfg,
            serialize.dumps(
                {
                    "d": result.d,
                    "verified_up_to": result.verified_up_to,
                    "certified": result.certified,
                }
            ),
        )
    return EXIT_OK


def cmd_check(cfg):
    datum, _ = _read_input(cfg)
    _validated(datum)
    rng = random.Random(cfg.seed)
    failures = []
    notes = []
    support = support_cone(datum)
    fan = chamber_fan(datum, refine=cfg.refine)
    functionals = cell_functionals(datum, fan)

    def interior_point(cell):
        weights = [Fraction(rng.randint(1, 9), rng.randint(1, 4)) for _ in cell.rays]
        return tuple(
            sum(w * Fraction(x) for w, x in zip(weights, coords))
            for coords in zip(*cell.rays)
        )

    # linearity of every order function on every cell
    for valuation in datum.valuations:
        for ci, cell in enumerate(fan.cells):
            f = functionals[valuation][ci]
            for _ in range(5):
                p = interior_point(cell)
                got = asymptotic_order(datum, valuation, p, support=support).value
                if got != evaluate_functional(f, p):
                    failures.append(
                        f"linearity: cell {ci}, valuation {valuation}, point {p}"
                    )
    notes.append(f"linearity: {len(fan.cells)} cells x {len(datum.valuations)} valuations")

    # homogeneity and subadditivity
    for _ in range(50):
        a = interior_point(support)
        b = interior_point(support)
        lam = Fraction(rng.randint(1, 12), rng.randint(1, 12))
        for valuation in datum.valuations:
            oa = asymptotic_order(datum, valuation, a, support=support).value
            ob = asymptotic_order(datum, valuation, b, support=support).value
            osum = asymptotic_order(
                datum, valuation, tuple(x + y for x, y in zip(a, b)), support=support
            ).value
            oscaled = asymptotic_order(
                datum, valuation, tuple(lam * x for x in a), support=support
            ).value
            if oscaled != lam * oa:
                failures.append(f"homogeneity: valuation {valuation}, point {a}")
            if osum > oa + ob:
                failures.append(f"subadditivity: valuation {valuation}, points {a}, {b}")
    notes.append("convexity: 50 random pairs")

    # fan partition: sampled support points lie in >=1 cell, interior of <=1
    for _ in range(25):
        p = interior_point(support)
        closed = sum(1 for c in fan.cells if contains(c, p))
        strict = sum(1 for c in fan.cells if contains(c, p, strict=True))
        if closed < 1 or strict > 1:
            failures.append(f"partition: point {p} in {closed} cells, {strict} interiors")
    notes.append("partition: 25 sampled points")

    # grid additivity on the chamber fan
    grid = grid_additivity_check(datum, fan, dscale=1, depth=cfg.grid_depth)
    for check in grid.failures:
        failures.append(f"grid additivity: exponents {check.exponents} at {check.point}")
    skipped = [e for e in grid.entries if e.skipped]
    notes.append(
        f"grid additivity: {len(grid.entries)} cell/valuation pairs, {len(skipped)} skipped"
    )

    lines = [f"note: {n}" for n in notes]
    lines += [f"FAIL: {f}" for f in failures]
    lines.append("result: " + ("FAIL" if failures else "PASS"))
    _write_output(cfg, "\n".join(lines) + "\n")
    return EXIT_CHECK_FAILED if failures else EXIT_OK


def cmd_oracle(cfg):
    datum, _ = _read_input(cfg)
    _validated(datum)
    if not cfg.points:
        raise ParseError("at least one --point is required")
    support = support_cone(datum)
    lines = []
    mismatch = False
    for text in cfg.points:
        x = _parse_point(text)
        for valuation in datum.valuations:
            lp = asymptotic_order(datum, valuation, x, support=support).value
            ks = list(range(1, cfg.k_max + 1))
            values = o_value_oracle(datum, valuation, x, ks, budget=cfg.budget)
            hit = next((k for k, v in zip(ks, values) if v == lp), None)
            if any(v is not None and v < lp for v in values):
                mismatch = True
                lines.append(f"FAIL {valuation} at {text}: enumeration below LP")
            elif hit is not None:
                lines.append(f"OK {valuation} at {text}: LP {lp} = IP {lp} at k={hit}")
            else:
                lines.append(
                    f"NOT-FOUND {valuation} at {text}: LP {lp}, no matching k <= {cfg.k_max}"
                )
    _write_output(cfg, "\n".join(lines) + "\n")
    return EXIT_CHECK_FAILED if mismatch else EXIT_OK


COMMANDS = {
    "decompose": cmd_decompose,
    "walk": cmd_walk,
    "veronese": cmd_veronese,
    "check": cmd_check,
    "oracle": cmd_oracle,
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="mmpwalk",
        description="Exact chamber decompositions and minimal-model walks.",
    )
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--input", "-i", default="")
    parser.add_argument("--output", "-o", default="")
    parser.add_argument("--format", choices=["json", "text"], default="json")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--k-max", type=int, default=12)
    parser.add_argument("--grid-depth", type=int, default=3)
    parser.add_argument("--budget", type=int, default=None)
    parser.add_argument("--example", default="")
    parser.add_argument("--h", default="", help="segment endpoint, e.g. '0,1'")
    parser.add_argument("--point", action="append", dest="points", default=[])
    parser.add_argument("--degrees", default="", help="e.g. '2,3' for veronese")
    parser.add_argument("--m-max", type=int, default=6)
    refine = parser.add_mutually_exclusive_group()
    refine.add_argument("--refine", dest="refine", action="store_true", default=True)
    refine.add_argument("--no-refine", dest="refine", action="store_false")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    budget = args.budget
    if budget is None:
        budget = int(os.environ.get("MMPW_BUDGET", "2000000"))
    if budget <= 0 or args.k_max <= 0 or args.grid_depth <= 0:
        print("error: budgets must be positive", file=sys.stderr)
        return EXIT_VALIDATION
    cfg = RunConfig(
        input=args.input,
        output=args.output,
        format=args.format,
        seed=args.seed,
        k_max=args.k_max,
        grid_depth=args.grid_depth,
        budget=budget,
        example=args.example,
        refine=args.refine,
        h=args.h,
        points=args.points,
        degrees=args.degrees,
        m_max=args.m_max,
    )
    try:
        return COMMANDS[args.command](cfg)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except _ValidationFailure as exc:
        print(f"validation failed:\n{exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except NonGenericSegment as exc:
        walls = ", ".join(str(list(w)) for w in exc.walls)
        print(f"error: {exc} (walls: {walls})", file=sys.stderr)
        return EXIT_NON_GENERIC
    except (OutsideSupport, InconsistentInput, MissingNefData, NotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
