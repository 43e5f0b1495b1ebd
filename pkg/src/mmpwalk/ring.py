"""Input data model: a finitely generated divisorial ring given by generators.

The engine never sees the variety itself; everything it knows arrives here
as generator multidegrees, per-valuation multiplicities and numerical-class
data, which are treated as ground truth.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .cones import PolyCone, cone_from_rays
from .linalg import mat_apply, rank


@dataclass(frozen=True)
class GeneratorDatum:
    """One ring generator: its multidegree and its valuation multiplicities."""

    multidegree: tuple
    mults: dict

    def mult(self, valuation):
        return self.mults[valuation]


@dataclass(frozen=True)
class NumericalMap:
    """Linear map from grading coordinates to numerical-class coordinates."""

    matrix: tuple  # rows, one per numerical coordinate
    target_dim: int

    def apply(self, v):
        return mat_apply(self.matrix, v)


@dataclass(frozen=True)
class NefConeDatum:
    cone: PolyCone


@dataclass(frozen=True)
class PushforwardDatum:
    """Per-model data for classifying chambers after a wall crossing.

    ``matrix`` sends grading coordinates directly to the model's numerical
    coordinates; ``nef`` lives in those coordinates.
    """

    model_id: str
    matrix: tuple
    nef: NefConeDatum

    def apply(self, v):
        return mat_apply(self.matrix, v)


@dataclass(frozen=True)
class RingDatum:
    r: int
    labels: tuple
    generators: tuple
    valuations: tuple
    numerical: NumericalMap
    nef: object = None
    pushforwards: tuple = ()

    @property
    def grading_dim(self):
        return self.r + 1


@dataclass
class ValidationEntry:
    severity: str  # "error" or "warning"
    code: str
    message: str


@dataclass
class ValidationReport:
    entries: list = field(default_factory=list)

    def add(self, severity, code, message):
        self.entries.append(ValidationEntry(severity, code, message))

    @property
    def errors(self):
        return [e for e in self.entries if e.severity == "error"]

    @property
    def warnings(self):
        return [e for e in self.entries if e.severity == "warning"]

    def ok(self):
        return not self.errors


def validate(datum):
    """Check all structural invariants of a RingDatum.

    Never raises; problems come back in the report with a severity level.
    """
    report = ValidationReport()
    n = datum.r + 1
    if datum.r < 1:
        report.add("error", "bad-rank", f"r must be >= 1, got {datum.r}")
    if len(datum.labels) != n:
        report.add(
            "warning",
            "label-count",
            f"expected {n} labels, got {len(datum.labels)}",
        )
    if not datum.generators:
        report.add("error", "no-generators", "at least one generator is required")
    seen = set()
    for name in datum.valuations:
        if name in seen:
            report.add("error", "duplicate-valuation", f"valuation {name!r} repeated")
        seen.add(name)
    for i, gen in enumerate(datum.generators):
        if len(gen.multidegree) != n:
            report.add(
                "error",
                "bad-multidegree",
                f"generator {i} has multidegree of length {len(gen.multidegree)}, expected {n}",
            )
            continue
        if all(x == 0 for x in gen.multidegree):
            report.add("error", "zero-multidegree", f"generator {i} has zero multidegree")
        if any(x < 0 or Fraction(x).denominator != 1 for x in gen.multidegree):
            report.add(
                "error",
                "bad-multidegree",
                f"generator {i} multidegree must have nonnegative integer entries",
            )
        for name in datum.valuations:
            if name not in gen.mults:
                report.add(
                    "error",
                    "missing-mult",
                    f"generator {i} has no multiplicity for valuation {name!r}",
                )
            elif gen.mults[name] < 0:
                report.add(
                    "error",
                    "negative-mult",
                    f"generator {i} has negative multiplicity for valuation {name!r}",
                )
        for name in gen.mults:
            if name not in datum.valuations:
                report.add(
                    "warning",
                    "untracked-valuation",
                    f"generator {i} carries a multiplicity for untracked valuation {name!r}",
                )
    if datum.numerical is not None:
        rows = datum.numerical.matrix
        if any(len(row) != n for row in rows):
            report.add("error", "bad-numerical-map", "numerical map has wrong row length")
        elif rank(rows) < datum.numerical.target_dim:
            report.add(
                "warning",
                "numerical-rank",
                "numerical map does not have full row rank; classes do not generate",
            )
    degrees = [g.multidegree for g in datum.generators if len(g.multidegree) == n]
    if degrees and not all(all(x == 0 for x in d) for d in degrees):
        if rank(degrees) < n:
            report.add(
                "warning",
                "thin-support",
                "support cone not full-dimensional",
            )
    if datum.nef is not None and not datum.nef.cone.is_full_dimensional():
        report.add("warning", "thin-nef", "nef cone is not full-dimensional")
    return report


def support_cone(datum):
    """Cone spanned by all generator multidegrees."""
    return cone_from_rays([g.multidegree for g in datum.generators])
