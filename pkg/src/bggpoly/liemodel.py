"""Graded matrix models of the two simple Lie algebras in play.

Oriented projective geometry in dimension n uses sl(n+1, R); conformal
geometry of signature (p, q) with n = p + q uses so(p+1, q+1) for the
quadratic form with two light-cone directions.  Both carry a 1-grading
g = g_{-1} + g_0 + g_1; the model records a basis B_1..B_n of g_{-1},
the grading element E, and (conformal case) the invariant bilinear form.

The conventions, fixed once here and relied on everywhere downstream:

* projective: B_i is the elementary matrix with a single 1 in row i,
  column 0, so B_i e_0 = e_i; E = diag(n/(n+1), -1/(n+1), ..., -1/(n+1)).
* conformal: standard basis e_0, ..., e_{n+1} with <e_0, e_{n+1}> = 1,
  <e_i, e_i> = eps_i (eps_i = +1 for i <= p, else -1); B_i e_0 = e_i,
  B_i e_i = -eps_i e_{n+1}; E = diag(1, 0, ..., 0, -1).

In both cases [E, B_i] = -B_i and [B_i, B_j] = 0, so the g_{-1} block is
abelian and normal coordinates x_1..x_n are ordinary linear coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactmath import MultiPoly, PolyMatrix, RatMatrix

__all__ = [
    "Projective",
    "Conformal",
    "GeometryKind",
    "parse_geometry",
    "geometry_str",
    "GradedLieModel",
    "build_projective",
    "build_conformal",
    "build_model",
    "rho_symbolic",
]


@dataclass(frozen=True)
class Projective:
    n: int


@dataclass(frozen=True)
class Conformal:
    p: int
    q: int

    @property
    def n(self) -> int:
        return self.p + self.q

    @property
    def signature(self) -> tuple[int, ...]:
        return tuple(1 if i < self.p else -1 for i in range(self.n))


GeometryKind = Projective | Conformal


def geometry_str(kind: GeometryKind) -> str:
    if isinstance(kind, Projective):
        return f"projective:{kind.n}"
    return f"conformal:{kind.p},{kind.q}"


def parse_geometry(text: str) -> GeometryKind:
    """Parse "projective:N" or "conformal:P,Q"."""
    family, _, params = text.strip().partition(":")
    if family == "projective":
        try:
            n = int(params)
        except ValueError:
            raise ValueError(f"bad projective dimension {params!r}") from None
        return Projective(n)
    if family == "conformal":
        parts = params.split(",")
        if len(parts) != 2:
            raise ValueError(f"conformal signature must be P,Q, got {params!r}")
        try:
            p, q = int(parts[0]), int(parts[1])
        except ValueError:
            raise ValueError(f"bad conformal signature {params!r}") from None
        return Conformal(p, q)
    raise ValueError(f"unknown geometry family {family!r}")


@dataclass(frozen=True)
class GradedLieModel:
    """Matrix realization of a 1-graded simple Lie algebra.

    g_minus holds the n generators of g_{-1} in the order fixing the
    meaning of the normal coordinates x_1..x_n.  form/signature are set
    only for conformal models.
    """

    kind: GeometryKind
    ambient_dim: int
    g_minus: tuple[RatMatrix, ...]
    grading_element: RatMatrix
    form: RatMatrix | None
    signature: tuple[int, ...] | None

    @property
    def n(self) -> int:
        return len(self.g_minus)


def build_projective(n: int) -> GradedLieModel:
    """The sl(n+1) model for oriented projective geometry, n >= 2."""
    if n < 2:
        raise ValueError(f"projective dimension must be >= 2, got {n}")
    d = n + 1
    generators = []
    for i in range(1, d):
        rows = [[Fraction(0)] * d for _ in range(d)]
        rows[i][0] = Fraction(1)
        generators.append(RatMatrix(rows))
    grading = RatMatrix.diagonal(
        [Fraction(n, n + 1)] + [Fraction(-1, n + 1)] * n
    )
    return GradedLieModel(
        kind=Projective(n),
        ambient_dim=d,
        g_minus=tuple(generators),
        grading_element=grading,
        form=None,
        signature=None,
    )


def build_conformal(p: int, q: int) -> GradedLieModel:
    """The so(p+1, q+1) model for conformal geometry, p + q >= 2."""
    if p < 0 or q < 0 or p + q < 2:
        raise ValueError(f"conformal signature ({p},{q}) needs p, q >= 0 and p+q >= 2")
    n = p + q
    d = n + 2
    eps = tuple(1 if i < p else -1 for i in range(n))
    generators = []
    for i in range(1, n + 1):
        rows = [[Fraction(0)] * d for _ in range(d)]
        rows[i][0] = Fraction(1)
        rows[n + 1][i] = Fraction(-eps[i - 1])
        generators.append(RatMatrix(rows))
    grading = RatMatrix.diagonal([1] + [0] * n + [-1])
    form_rows = [[Fraction(0)] * d for _ in range(d)]
    form_rows[0][n + 1] = Fraction(1)
    form_rows[n + 1][0] = Fraction(1)
    for i in range(1, n + 1):
        form_rows[i][i] = Fraction(eps[i - 1])
    return GradedLieModel(
        kind=Conformal(p, q),
        ambient_dim=d,
        g_minus=tuple(generators),
        grading_element=grading,
        form=RatMatrix(form_rows),
        signature=eps,
    )


def build_model(kind: GeometryKind) -> GradedLieModel:
    if isinstance(kind, Projective):
        return build_projective(kind.n)
    return build_conformal(kind.p, kind.q)


def rho_symbolic(model: GradedLieModel) -> PolyMatrix:
    """The generic g_{-1} element sum_i x_i B_i as a matrix of linear polynomials."""
    return rho_of_generators(model.g_minus)


def rho_of_generators(generators) -> PolyMatrix:
    """sum_i x_i M_i for any list of equally sized rational matrices."""
    generators = list(generators)
    n = len(generators)
    size = generators[0].rows
    entries = []
    for a in range(size):
        row = []
        for b in range(generators[0].cols):
            acc = MultiPoly.zero(n)
            for i, gen in enumerate(generators):
                c = gen.entry(a, b)
                if c != 0:
                    acc = acc + MultiPoly.variable(n, i).scale(c)
            row.append(acc)
        entries.append(row)
    return PolyMatrix(entries, n)
