"""Pointwise classification of solution systems at rational sample points.

The zero locus of a solution stratifies the chart; sampling a system on
an exact rational grid and tagging each point gives a desk-scale picture
of that stratification.  Classification uses exact values only: "zero"
means exact rational zero, never a tolerance.

Two classifier schemes are built in (a closed enumeration, so reports
stay reproducible):

* ``zero-nonzero``: the point is tagged by whether all slot values vanish.
* ``density-sign``: for single-slot density systems, the sign of the value.

The tractor-norm constancy of a parallel section is also restated
pointwise here: the norm polynomial evaluates to the same rational at
every sample point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .bggsolve import SolutionSystem, g_type_invariant, tractor_norm_poly
from .exactmath import format_rational
from .repforge import Representation

__all__ = [
    "GridSpec",
    "PointList",
    "SampleSpec",
    "sample_points",
    "PointRecord",
    "PTypeReport",
    "SCHEMES",
    "classify_points",
    "gtype_consistency",
    "report_to_dict",
]


@dataclass(frozen=True)
class GridSpec:
    """per_axis evenly spaced rational values on [-bound, bound], per axis."""

    per_axis: int
    bound: Fraction

    def __post_init__(self):
        if self.per_axis < 1:
            raise ValueError("per_axis must be >= 1")

    def axis_values(self) -> list[Fraction]:
        if self.per_axis == 1:
            return [Fraction(0)]
        bound = Fraction(self.bound)
        step = 2 * bound / (self.per_axis - 1)
        return [-bound + step * t for t in range(self.per_axis)]


@dataclass(frozen=True)
class PointList:
    points: tuple[tuple[Fraction, ...], ...]


SampleSpec = GridSpec | PointList


def sample_points(spec: SampleSpec, nvars: int) -> list[tuple[Fraction, ...]]:
    if isinstance(spec, PointList):
        for point in spec.points:
            if len(point) != nvars:
                raise ValueError(
                    f"point {point} has length {len(point)}, expected {nvars}"
                )
        return [tuple(Fraction(v) for v in p) for p in spec.points]
    values = spec.axis_values()
    points: list[tuple[Fraction, ...]] = [()]
    for _ in range(nvars):
        points = [p + (v,) for p in points for v in values]
    return points


@dataclass
class PointRecord:
    point: tuple[Fraction, ...]
    values: tuple[Fraction, ...]
    tag: str


@dataclass
class PTypeReport:
    scheme: str
    total: int
    counts: dict[str, int]
    records: list[PointRecord]


def _tag_zero_nonzero(values) -> str:
    return "zero" if all(v == 0 for v in values) else "nonzero"


def _tag_density_sign(values) -> str:
    if len(values) != 1:
        raise ValueError("density-sign applies to single-slot systems only")
    value = values[0]
    if value > 0:
        return "positive"
    if value < 0:
        return "negative"
    return "zero"


SCHEMES = {
    "zero-nonzero": _tag_zero_nonzero,
    "density-sign": _tag_density_sign,
}


def classify_points(
    system: SolutionSystem, spec: SampleSpec, scheme: str
) -> PTypeReport:
    """Evaluate the system at each sample point and tag it."""
    if scheme not in SCHEMES:
        raise ValueError(
            f"unknown scheme {scheme!r}; known: {', '.join(sorted(SCHEMES))}"
        )
    tagger = SCHEMES[scheme]
    points = sample_points(spec, system.nvars)
    polys = list(system.coefficients.values())
    records = []
    counts: dict[str, int] = {}
    for point in points:
        values = tuple(p.evaluate(point) for p in polys)
        tag = tagger(values)
        counts[tag] = counts.get(tag, 0) + 1
        records.append(PointRecord(point=point, values=values, tag=tag))
    return PTypeReport(
        scheme=scheme,
        total=len(records),
        counts={tag: counts[tag] for tag in sorted(counts)},
        records=records,
    )


def gtype_consistency(rep: Representation, v0, spec: SampleSpec) -> bool:
    """Tractor norm at every sample point equals the constant invariant."""
    expected = g_type_invariant(rep, v0)
    norm = tractor_norm_poly(rep, v0)
    for point in sample_points(spec, rep.model.n):
        if norm.evaluate(point) != expected:
            return False
    return True


def report_to_dict(report: PTypeReport) -> dict:
    return {
        "scheme": report.scheme,
        "total": report.total,
        "counts": dict(report.counts),
        "points": [
            {
                "point": [format_rational(v) for v in record.point],
                "values": [format_rational(v) for v in record.values],
                "tag": record.tag,
            }
            for record in report.records
        ],
    }
