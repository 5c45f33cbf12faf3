"""Independent verification oracles: flat-space differential operators.

On the flat model chart the normal frames are coordinate frames and the
relevant covariant derivatives are plain partials, so each first-order
equation below is an exact statement about polynomial components.  The
checks return True only when the residual vanishes identically as a
polynomial; there is no numeric tolerance anywhere.

Implemented operators (g the diagonal flat metric with entries eps_i):

* killing: symmetrized derivative of a symmetric valence-k covector
  field, residual_{a b1..bk} = sum over insertions of the derivative
  index; kernel = Killing tensors.
* conformal Killing vector: d_a xi_b + d_b xi_a - (2/n) div(xi) g_ab
  with the index lowered by g.
* conformal Killing r-form: d_a phi_{B} minus its exterior part
  1/(r+1) (d phi)_{aB} plus the trace part 1/(n-r+1) (g_a ^ delta phi)_B
  with delta the negative divergence.
* trace-free Hessian: d_a d_b sigma - (1/n) g_ab (Laplacian sigma).
* higher density: all k-fold partials of sigma, i.e. total degree <= k-1.

The projector constants 1/(r+1) and 1/(n-r+1) are the standard ones; the
kernel-dimension computations below cross-validate them, since a wrong
constant collapses the kernel.  Kernel dimensions restricted to
polynomial coefficients of bounded degree are computed by exact linear
algebra on monomial coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, combinations_with_replacement

from .exactmath import MultiPoly, RatMatrix, monomials_up_to
from .liemodel import Conformal

__all__ = [
    "FlatMetric",
    "PolyTensorField",
    "sym_field",
    "alt_field",
    "vector_field",
    "killing_residual",
    "killing_check",
    "conformal_killing_vector_residual",
    "conformal_killing_vector_check",
    "conformal_killing_form_residual",
    "conformal_killing_form_check",
    "tracefree_hessian_residual",
    "tracefree_hessian_check",
    "higher_density_residual",
    "higher_density_check",
    "operator_kernel_dimension",
    "killing_kernel_dimension",
    "conformal_killing_vector_kernel_dimension",
]


@dataclass(frozen=True)
class FlatMetric:
    """Diagonal flat metric; entries are +1 or -1."""

    diag: tuple[int, ...]

    def __post_init__(self):
        if any(v not in (1, -1) for v in self.diag):
            raise ValueError("metric entries must be +1 or -1")

    @property
    def n(self) -> int:
        return len(self.diag)

    @classmethod
    def from_geometry(cls, kind: Conformal) -> FlatMetric:
        return cls(kind.signature)

    @classmethod
    def euclidean(cls, n: int) -> FlatMetric:
        return cls((1,) * n)


@dataclass(frozen=True)
class PolyTensorField:
    """Tensor field with polynomial components, stored on canonical keys.

    symmetry "sym": keys are weakly increasing index tuples; "alt": keys
    are strictly increasing.  Other components follow by (anti)symmetry.
    """

    nvars: int
    valence: int
    symmetry: str
    components: dict[tuple[int, ...], MultiPoly]

    def __post_init__(self):
        if self.symmetry not in ("sym", "alt"):
            raise ValueError(f"unknown symmetry {self.symmetry!r}")
        for key, poly in self.components.items():
            if len(key) != self.valence:
                raise ValueError(f"key {key} has wrong valence")
            if any(not 0 <= i < self.nvars for i in key):
                raise ValueError(f"index out of range in {key}")
            if self.symmetry == "sym" and tuple(sorted(key)) != key:
                raise ValueError(f"non-canonical symmetric key {key}")
            if self.symmetry == "alt" and len(set(key)) != len(key):
                raise ValueError(f"repeated index in alternating key {key}")
            if self.symmetry == "alt" and tuple(sorted(key)) != key:
                raise ValueError(f"non-canonical alternating key {key}")
            if poly.nvars != self.nvars:
                raise ValueError("component variable count mismatch")

    def component(self, indices) -> MultiPoly:
        """Component at an arbitrary index tuple, resolving symmetry."""
        indices = tuple(indices)
        if len(indices) != self.valence:
            raise ValueError(f"expected {self.valence} indices, got {len(indices)}")
        key = tuple(sorted(indices))
        if self.symmetry == "alt":
            if len(set(indices)) != len(indices):
                return MultiPoly.zero(self.nvars)
            sign = _sort_sign(indices)
            base = self.components.get(key)
            if base is None:
                return MultiPoly.zero(self.nvars)
            return base if sign == 1 else -base
        base = self.components.get(key)
        return base if base is not None else MultiPoly.zero(self.nvars)


def _sort_sign(seq) -> int:
    inversions = sum(
        1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j]
    )
    return -1 if inversions % 2 else 1


def sym_field(nvars: int, valence: int, components) -> PolyTensorField:
    return PolyTensorField(nvars, valence, "sym", dict(components))


def alt_field(nvars: int, valence: int, components) -> PolyTensorField:
    return PolyTensorField(nvars, valence, "alt", dict(components))


def vector_field(nvars: int, components) -> PolyTensorField:
    """Vector field xi^i; components keyed by (i,)."""
    return PolyTensorField(nvars, 1, "sym", dict(components))


def sym_keys(n: int, valence: int):
    return list(combinations_with_replacement(range(n), valence))


def alt_keys(n: int, valence: int):
    return list(combinations(range(n), valence))


# -- Killing operator ------------------------------------------------------------


def killing_residual(field: PolyTensorField) -> dict[tuple[int, ...], MultiPoly]:
    """Symmetrized derivative: residual_c = sum_t d_{c_t} psi_{c minus t}."""
    if field.symmetry != "sym":
        raise ValueError("killing operator acts on symmetric covector fields")
    n = field.nvars
    residual = {}
    for key in sym_keys(n, field.valence + 1):
        total = MultiPoly.zero(n)
        for t in range(len(key)):
            rest = key[:t] + key[t + 1 :]
            total = total + field.component(rest).partial(key[t])
        residual[key] = total
    return residual


def killing_check(field: PolyTensorField) -> bool:
    return all(p.is_zero() for p in killing_residual(field).values())


# -- conformal Killing vector ------------------------------------------------------


def conformal_killing_vector_residual(
    xi: PolyTensorField, metric: FlatMetric
) -> dict[tuple[int, int], MultiPoly]:
    """d_a xi_b + d_b xi_a - (2/n) (div xi) g_ab, indices lowered with g."""
    if xi.valence != 1:
        raise ValueError("expected a vector field")
    n = xi.nvars
    if metric.n != n:
        raise ValueError("metric dimension mismatch")
    lowered = [xi.component((i,)).scale(metric.diag[i]) for i in range(n)]
    divergence = MultiPoly.zero(n)
    for c in range(n):
        divergence = divergence + xi.component((c,)).partial(c)
    residual = {}
    for a in range(n):
        for b in range(a, n):
            value = lowered[b].partial(a) + lowered[a].partial(b)
            if a == b:
                value = value - divergence.scale(Fraction(2 * metric.diag[a], n))
            residual[(a, b)] = value
    return residual


def conformal_killing_vector_check(xi: PolyTensorField, metric: FlatMetric) -> bool:
    return all(
        p.is_zero() for p in conformal_killing_vector_residual(xi, metric).values()
    )


# -- conformal Killing forms --------------------------------------------------------


def _exterior_derivative(phi: PolyTensorField) -> PolyTensorField:
    n = phi.nvars
    r = phi.valence
    components = {}
    for key in alt_keys(n, r + 1):
        total = MultiPoly.zero(n)
        for t in range(r + 1):
            rest = key[:t] + key[t + 1 :]
            term = phi.component(rest).partial(key[t])
            total = total + (term if t % 2 == 0 else -term)
        components[key] = total
    return alt_field(n, r + 1, components)


def _codifferential(phi: PolyTensorField, metric: FlatMetric) -> PolyTensorField:
    """delta phi = - metric-trace of the derivative on the first slot."""
    n = phi.nvars
    r = phi.valence
    components = {}
    for key in alt_keys(n, r - 1):
        total = MultiPoly.zero(n)
        for b in range(n):
            total = total - phi.component((b,) + key).partial(b).scale(metric.diag[b])
        components[key] = total
    return alt_field(n, r - 1, components)


def conformal_killing_form_residual(
    phi: PolyTensorField, metric: FlatMetric
) -> dict[tuple, MultiPoly]:
    """Derivative minus exterior part minus trace part, per (a, b1<..<br).

    residual_{a,B} = d_a phi_B - 1/(r+1) (d phi)_{aB}
                     + 1/(n-r+1) sum_t (-1)^{t-1} g_{a b_t} (delta phi)_{B minus t}
    """
    if phi.symmetry != "alt":
        raise ValueError("expected an alternating form")
    n = phi.nvars
    r = phi.valence
    if not 1 <= r <= n - 1:
        raise ValueError(f"form valence {r} out of range 1..{n - 1}")
    if metric.n != n:
        raise ValueError("metric dimension mismatch")
    dphi = _exterior_derivative(phi)
    deltaphi = _codifferential(phi, metric)
    residual = {}
    for key in alt_keys(n, r):
        for a in range(n):
            value = phi.component(key).partial(a)
            value = value - dphi.component((a,) + key).scale(Fraction(1, r + 1))
            for t in range(r):
                if key[t] != a:
                    continue
                rest = key[:t] + key[t + 1 :]
                sign = 1 if t % 2 == 0 else -1
                value = value + deltaphi.component(rest).scale(
                    Fraction(sign * metric.diag[a], n - r + 1)
                )
            residual[(a,) + key] = value
    return residual


def conformal_killing_form_check(phi: PolyTensorField, metric: FlatMetric) -> bool:
    return all(
        p.is_zero() for p in conformal_killing_form_residual(phi, metric).values()
    )


# -- trace-free Hessian ---------------------------------------------------------------


def tracefree_hessian_residual(
    sigma: MultiPoly, metric: FlatMetric
) -> dict[tuple[int, int], MultiPoly]:
    """d_a d_b sigma - (1/n) g_ab sum_c eps_c d_c d_c sigma."""
    n = sigma.nvars
    if metric.n != n:
        raise ValueError("metric dimension mismatch")
    laplacian = MultiPoly.zero(n)
    for c in range(n):
        laplacian = laplacian + sigma.partial(c).partial(c).scale(metric.diag[c])
    residual = {}
    for a in range(n):
        for b in range(a, n):
            value = sigma.partial(a).partial(b)
            if a == b:
                value = value - laplacian.scale(Fraction(metric.diag[a], n))
            residual[(a, b)] = value
    return residual


def tracefree_hessian_check(sigma: MultiPoly, metric: FlatMetric) -> bool:
    return all(
        p.is_zero() for p in tracefree_hessian_residual(sigma, metric).values()
    )


# -- higher-order density operators -----------------------------------------------------


def higher_density_residual(sigma: MultiPoly, k: int) -> dict[tuple, MultiPoly]:
    """All k-fold partial derivatives; zero iff total degree <= k - 1."""
    if k < 1:
        raise ValueError("order must be >= 1")
    residual = {}
    for key in sym_keys(sigma.nvars, k):
        value = sigma
        for index in key:
            value = value.partial(index)
        residual[key] = value
    return residual


def higher_density_check(sigma: MultiPoly, k: int) -> bool:
    return all(p.is_zero() for p in higher_density_residual(sigma, k).values())


# -- exact kernel dimensions --------------------------------------------------------------


def operator_kernel_dimension(
    residual_fn,
    nvars: int,
    valence: int,
    symmetry: str,
    max_degree: int,
) -> int:
    """dim of the operator kernel on fields of coefficient degree <= max_degree.

    The operator is linear, so the kernel is the nullspace of the exact
    matrix taking input monomial components to residual coefficients.
    """
    in_keys = (
        sym_keys(nvars, valence) if symmetry == "sym" else alt_keys(nvars, valence)
    )
    monomials = monomials_up_to(nvars, max_degree)
    columns = []
    row_index: dict = {}
    column_entries = []
    for key in in_keys:
        for exponent in monomials:
            field = PolyTensorField(
                nvars,
                valence,
                symmetry,
                {key: MultiPoly.monomial(nvars, exponent, 1)},
            )
            residual = residual_fn(field)
            entries = {}
            for out_key, poly in residual.items():
                for mono, coeff in poly.terms.items():
                    slot = (out_key, mono)
                    if slot not in row_index:
                        row_index[slot] = len(row_index)
                    entries[row_index[slot]] = coeff
            column_entries.append(entries)
    nrows = len(row_index)
    matrix = [[Fraction(0)] * len(column_entries) for _ in range(nrows)]
    for col, entries in enumerate(column_entries):
        for row, coeff in entries.items():
            matrix[row][col] = coeff
    if nrows == 0:
        return len(column_entries)
    mat = RatMatrix(matrix)
    return mat.cols - mat.rank()


def killing_kernel_dimension(nvars: int, valence: int, max_degree: int) -> int:
    return operator_kernel_dimension(
        killing_residual, nvars, valence, "sym", max_degree
    )


def conformal_killing_vector_kernel_dimension(
    metric: FlatMetric, max_degree: int
) -> int:
    return operator_kernel_dimension(
        lambda field: conformal_killing_vector_residual(field, metric),
        metric.n,
        1,
        "sym",
        max_degree,
    )
