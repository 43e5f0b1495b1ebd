"""JSON document formats.

Rationals travel as "p/q" strings (plain "p" for integers) so exactness
survives serialization; all collections are emitted in canonical order so
identical inputs give byte-identical documents.
"""

import json
from fractions import Fraction

from .cones import Fan, HalfSpace, PolyCone, cone_from_rays, cone_from_halfspaces
from .errors import ParseError
from .ring import (
    GeneratorDatum,
    NefConeDatum,
    NumericalMap,
    PushforwardDatum,
    RingDatum,
)
from .walk import MmpTrace, TraceStep


def rat_to_str(x):
    return str(Fraction(x))


def rat_from_str(s):
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational literal {s!r}: {exc}") from None


def vec_to_json(v):
    return [rat_to_str(x) for x in v]


def vec_from_json(v):
    return tuple(rat_from_str(x) for x in v)


def matrix_to_json(m):
    return [vec_to_json(row) for row in m]


def matrix_from_json(m):
    return tuple(vec_from_json(row) for row in m)


def cone_to_json(cone):
    doc = {
        "ambient_dim": cone.ambient_dim,
        "rays": [list(r) for r in cone.rays],
        "facets": [list(hs.normal) for hs in cone.facets],
    }
    if cone.equations:
        doc["equations"] = [list(eq) for eq in cone.equations]
    return doc


def cone_from_json(doc):
    rays = [tuple(r) for r in doc.get("rays", [])]
    if rays:
        cone = cone_from_rays(rays)
    else:
        cone = cone_from_halfspaces(
            [tuple(f) for f in doc.get("facets", [])],
            doc["ambient_dim"],
            equations=[tuple(eq) for eq in doc.get("equations", [])],
        )
    return cone


def fan_to_json(fan, functionals=None):
    doc = {
        "support": cone_to_json(fan.support),
        "cells": [cone_to_json(c) for c in fan.cells],
    }
    if functionals is not None:
        doc["functionals"] = {
            valuation: [vec_to_json(f) for f in per_cell]
            for valuation, per_cell in sorted(functionals.items())
        }
    return doc


def fan_from_json(doc):
    support = cone_from_json(doc["support"])
    cells = tuple(cone_from_json(c) for c in doc["cells"])
    fan = Fan(cells, support)
    functionals = None
    if "functionals" in doc:
        functionals = {
            valuation: tuple(vec_from_json(f) for f in per_cell)
            for valuation, per_cell in doc["functionals"].items()
        }
    return fan, functionals


def nef_to_json(nef):
    return {"rays": [list(r) for r in nef.cone.rays]}


def nef_from_json(doc, ambient_dim):
    if "rays" in doc:
        return NefConeDatum(cone=cone_from_rays([tuple(r) for r in doc["rays"]]))
    if "ineqs" in doc:
        return NefConeDatum(
            cone=cone_from_halfspaces([tuple(f) for f in doc["ineqs"]], ambient_dim)
        )
    raise ParseError("nef cone needs either 'rays' or 'ineqs'")


def ring_to_json(datum, segment_h=None):
    doc = {
        "r": datum.r,
        "labels": list(datum.labels),
        "generators": [
            {
                "deg": list(g.multidegree),
                "mults": {name: rat_to_str(v) for name, v in sorted(g.mults.items())},
            }
            for g in datum.generators
        ],
        "valuations": list(datum.valuations),
        "numerical_map": matrix_to_json(datum.numerical.matrix),
    }
    if datum.nef is not None:
        doc["nef"] = nef_to_json(datum.nef)
    if datum.pushforwards:
        doc["pushforwards"] = [
            {
                "model_id": pf.model_id,
                "map": matrix_to_json(pf.matrix),
                "nef": nef_to_json(pf.nef),
            }
            for pf in datum.pushforwards
        ]
    if segment_h is not None:
        doc["segment"] = {"h": vec_to_json(segment_h)}
    return doc


def ring_from_json(doc):
    try:
        r = int(doc["r"])
        n = r + 1
        generators = tuple(
            GeneratorDatum(
                multidegree=tuple(int(x) for x in g["deg"]),
                mults={name: rat_from_str(v) for name, v in g["mults"].items()},
            )
            for g in doc["generators"]
        )
        matrix = matrix_from_json(doc["numerical_map"])
        numerical = NumericalMap(matrix=matrix, target_dim=len(matrix))
        nef = None
        if "nef" in doc:
            nef = nef_from_json(doc["nef"], numerical.target_dim)
        pushforwards = tuple(
            PushforwardDatum(
                model_id=str(pf["model_id"]),
                matrix=matrix_from_json(pf["map"]),
                nef=nef_from_json(pf["nef"], len(matrix_from_json(pf["map"]))),
            )
            for pf in doc.get("pushforwards", [])
        )
        datum = RingDatum(
            r=r,
            labels=tuple(doc.get("labels", [f"D{i}" for i in range(n)])),
            generators=generators,
            valuations=tuple(doc.get("valuations", [])),
            numerical=numerical,
            nef=nef,
            pushforwards=pushforwards,
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed ring datum: {exc!r}") from None
    segment_h = None
    if "segment" in doc:
        try:
            segment_h = vec_from_json(doc["segment"]["h"])
        except (KeyError, TypeError) as exc:
            raise ParseError(f"malformed segment: {exc!r}") from None
    return datum, segment_h


def trace_to_json(trace):
    return {
        "steps": [
            {
                "from_chamber": s.from_chamber,
                "to_chamber": s.to_chamber,
                "t": rat_to_str(s.t),
                "wall_point": vec_to_json(s.wall_point),
                "interior_pick": vec_to_json(s.interior_pick),
                "model_id": s.model_id,
                "possibly_isomorphism": s.possibly_isomorphism,
            }
            for s in trace.steps
        ],
        "final": {
            "chamber": trace.final_chamber,
            "divisor": vec_to_json(trace.final_divisor),
            "model_id": trace.final_model_id,
        },
    }


def trace_from_json(doc):
    try:
        steps = tuple(
            TraceStep(
                from_chamber=int(s["from_chamber"]),
                to_chamber=int(s["to_chamber"]),
                t=rat_from_str(s["t"]),
                wall_point=vec_from_json(s["wall_point"]),
                interior_pick=vec_from_json(s["interior_pick"]),
                model_id=str(s["model_id"]),
                possibly_isomorphism=s["possibly_isomorphism"],
            )
            for s in doc["steps"]
        )
        final = doc["final"]
        return MmpTrace(
            steps=steps,
            final_chamber=int(final["chamber"]),
            final_divisor=vec_from_json(final["divisor"]),
            final_model_id=str(final["model_id"]),
        )
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed trace: {exc!r}") from None


def dumps(doc):
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def loads(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(
            f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from None
