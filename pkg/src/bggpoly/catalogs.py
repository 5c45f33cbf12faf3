"""Fixture catalogs: the classical closed-form solution families.

Each supported (geometry, representation) pair carries a hand-transcribed
list of the classical coordinate formulas for its solutions (Killing
forms, conformal Killing fields and forms, almost Einstein scales,
densities, valence-2 Killing tensors).  The catalogs are regression
fixtures: the generated solution spaces must match them span-exactly.

Entries are flagged ``as-printed`` when the tabulated formula agrees with
the exact oracles, and ``sign-adjudicated`` when it does not; in the
latter case both variants are stored and the adjudicated one is
authoritative.  The two adjudicated sites are the last conformal
homogeneous coordinate and the special-conformal vector family, both
downstream of the exponential corner entry recorded in
:func:`bggpoly.bggsolve.sign_adjudication_report`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactmath import MultiPoly
from .liemodel import Conformal, GeometryKind, Projective, build_model
from .repforge import (
    build_representation,
    canonical_descriptor,
    parse_descriptor,
)

__all__ = ["CatalogEntry", "catalog", "catalog_pairs"]

AS_PRINTED = "as-printed"
SIGN_ADJUDICATED = "sign-adjudicated"


@dataclass
class CatalogEntry:
    """One cataloged solution; coefficients is the authoritative variant."""

    name: str
    sign_status: str
    coefficients: dict[str, MultiPoly]
    printed_coefficients: dict[str, MultiPoly] | None = None


def catalog(geometry: GeometryKind, descriptor: str) -> list[CatalogEntry]:
    """The cataloged solution families for a supported pair.

    Raises ValueError for pairs without a catalog.
    """
    canonical = canonical_descriptor(parse_descriptor(descriptor))
    model = build_model(geometry)
    if isinstance(geometry, Projective):
        n = geometry.n
        if canonical == "std":
            return _projective_wedges(model, 1)
        node = parse_descriptor(canonical)
        if node[0] == "ext" and node[2] == ("std",):
            if not 1 <= node[1] < n:
                raise ValueError(
                    f"no catalog for {canonical} on {n}-dimensional projective models"
                )
            return _projective_wedges(model, node[1])
        if canonical == "ext(2,dual(std))":
            return _projective_coforms(model)
        if canonical == "cartanS2L2":
            return _projective_killing2(model)
        if canonical == "dual(std)":
            return _projective_densities(model, 1)
        if node[0] == "sym" and node[2] == ("dual", ("std",)):
            return _projective_densities(model, node[1])
    else:
        node = parse_descriptor(canonical)
        if canonical == "std":
            return _conformal_densities(model)
        if canonical == "ext(2,std)":
            return _conformal_vectors(model)
        if node[0] == "ext" and node[2] == ("std",) and 3 <= node[1] <= geometry.n:
            return _conformal_forms(model, node[1] - 1)
    raise ValueError(f"no catalog for ({geometry!r}, {descriptor!r})")


def catalog_pairs(geometry: GeometryKind) -> list[str]:
    """Descriptors with a catalog over the given geometry."""
    if isinstance(geometry, Projective):
        pairs = ["std", "dual(std)", "sym(2,dual(std))", "sym(3,dual(std))"]
        pairs += [f"ext({r},std)" for r in range(2, geometry.n)]
        pairs += ["ext(2,dual(std))"]
        if geometry.n >= 3:
            pairs.append("cartanS2L2")
        return pairs
    pairs = ["std", "ext(2,std)"]
    pairs += [f"ext({r},std)" for r in range(3, geometry.n + 1)]
    return pairs


# -- helpers -------------------------------------------------------------------


def _slots(model, descriptor: str) -> tuple[list[str], int]:
    rep = build_representation(model, descriptor)
    return list(rep.slot_labels()), model.n


def _fill(slots: list[str], nvars: int, nonzero: dict[str, MultiPoly]):
    unknown = set(nonzero) - set(slots)
    if unknown:
        raise ValueError(f"unknown slots {sorted(unknown)}")
    return {s: nonzero.get(s, MultiPoly.zero(nvars)) for s in slots}


def _sort_sign(seq) -> int:
    if len(set(seq)) != len(seq):
        return 0
    inversions = sum(
        1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j]
    )
    return -1 if inversions % 2 else 1


def _x(nvars: int, i: int) -> MultiPoly:
    """x_i with 1-based index."""
    return MultiPoly.variable(nvars, i - 1)


def _name(prefix: str, indices) -> str:
    return "-".join([prefix] + [str(i) for i in indices])


# -- projective families -------------------------------------------------------


def _wedge_slot(indices) -> str:
    return "^".join(f"e{i}" for i in indices)


def _projective_wedges(model, r: int) -> list[CatalogEntry]:
    """Constant wedge fields plus the Euler-contracted wedges, degree r."""
    from itertools import combinations

    n = model.n
    slots, nvars = _slots(model, "std" if r == 1 else f"ext({r},std)")
    entries = []
    for combo in combinations(range(1, n + 1), r):
        coeffs = _fill(slots, nvars, {_wedge_slot(combo): MultiPoly.const(nvars, 1)})
        entries.append(CatalogEntry(_name("parallel", combo), AS_PRINTED, coeffs))
    for rest in combinations(range(1, n + 1), r - 1):
        nonzero: dict[str, MultiPoly] = {}
        for j in range(1, n + 1):
            sign = _sort_sign((j,) + rest)
            if sign == 0:
                continue
            key = _wedge_slot(tuple(sorted((j,) + rest)))
            term = _x(nvars, j).scale(sign)
            nonzero[key] = nonzero.get(key, MultiPoly.zero(nvars)) + term
        entries.append(
            CatalogEntry(
                _name("euler", rest) if rest else "euler",
                AS_PRINTED,
                _fill(slots, nvars, nonzero),
            )
        )
    return entries


def _coform_slot(i: int) -> str:
    return f"e0*^e{i}*"


def _projective_coforms(model) -> list[CatalogEntry]:
    """Killing one-forms: the coordinate forms and the rotation forms."""
    n = model.n
    slots, nvars = _slots(model, "ext(2,dual(std))")
    entries = []
    for i in range(1, n + 1):
        coeffs = _fill(slots, nvars, {_coform_slot(i): MultiPoly.const(nvars, 1)})
        entries.append(CatalogEntry(_name("parallel", (i,)), AS_PRINTED, coeffs))
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            nonzero = {
                _coform_slot(j): _x(nvars, i),
                _coform_slot(i): -_x(nvars, j),
            }
            entries.append(
                CatalogEntry(
                    _name("rotation", (i, j)), AS_PRINTED, _fill(slots, nvars, nonzero)
                )
            )
    return entries


def _killing2_slot(i: int, j: int) -> str:
    a, b = min(i, j), max(i, j)
    return f"(e0*^e{a}*).(e0*^e{b}*)"


def _projective_killing2(model) -> list[CatalogEntry]:
    """The six families of valence-2 Killing tensors on the flat model."""
    n = model.n
    slots, nvars = _slots(model, "cartanS2L2")

    def phi(i, j):
        return _killing2_slot(i, j)

    def combine(parts) -> dict[str, MultiPoly]:
        out: dict[str, MultiPoly] = {}
        for slot, poly in parts:
            out[slot] = out.get(slot, MultiPoly.zero(nvars)) + poly
        return out

    x = lambda i: _x(nvars, i)
    entries = []
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            coeffs = _fill(slots, nvars, {phi(i, j): MultiPoly.const(nvars, 1)})
            entries.append(CatalogEntry(_name("parallel", (i, j)), AS_PRINTED, coeffs))
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            for k in range(j + 1, n + 1):
                coeffs = combine([(phi(i, j), x(k)), (phi(i, k), -x(j))])
                entries.append(
                    CatalogEntry(
                        _name("linear-a", (i, j, k)),
                        AS_PRINTED,
                        _fill(slots, nvars, coeffs),
                    )
                )
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for k in range(j, n + 1):
                coeffs = combine([(phi(i, j), x(k)), (phi(j, k), -x(i))])
                entries.append(
                    CatalogEntry(
                        _name("linear-b", (i, j, k)),
                        AS_PRINTED,
                        _fill(slots, nvars, coeffs),
                    )
                )
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for k in range(j, n + 1):
                coeffs = combine(
                    [
                        (phi(i, i), x(j) * x(k)),
                        (phi(i, j), -(x(i) * x(k))),
                        (phi(i, k), -(x(i) * x(j))),
                        (phi(j, k), x(i) * x(i)),
                    ]
                )
                entries.append(
                    CatalogEntry(
                        _name("quadratic-a", (i, j, k)),
                        AS_PRINTED,
                        _fill(slots, nvars, coeffs),
                    )
                )
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for k in range(j + 1, n + 1):
                for l in range(k, n + 1):
                    coeffs = combine(
                        [
                            (phi(i, j), x(k) * x(l)),
                            (phi(i, l), -(x(j) * x(k))),
                            (phi(j, k), -(x(i) * x(l))),
                            (phi(k, l), x(i) * x(j)),
                        ]
                    )
                    entries.append(
                        CatalogEntry(
                            _name("quadratic-b", (i, j, k, l)),
                            AS_PRINTED,
                            _fill(slots, nvars, coeffs),
                        )
                    )
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for k in range(j, n + 1):
                for l in range(k + 1, n + 1):
                    coeffs = combine(
                        [
                            (phi(i, k), x(j) * x(l)),
                            (phi(i, l), -(x(j) * x(k))),
                            (phi(j, k), -(x(i) * x(l))),
                            (phi(j, l), x(i) * x(k)),
                        ]
                    )
                    entries.append(
                        CatalogEntry(
                            _name("quadratic-c", (i, j, k, l)),
                            AS_PRINTED,
                            _fill(slots, nvars, coeffs),
                        )
                    )
    return entries


def _projective_densities(model, m: int) -> list[CatalogEntry]:
    """Densities of order-(m+1) equations: all monomials of degree <= m."""
    from .exactmath import monomials_up_to

    descriptor = "dual(std)" if m == 1 else f"sym({m},dual(std))"
    slots, nvars = _slots(model, descriptor)
    (slot,) = slots
    entries = []
    for exponent in monomials_up_to(nvars, m):
        poly = MultiPoly.monomial(nvars, exponent, 1)
        entries.append(
            CatalogEntry(
                _name("monomial", exponent),
                AS_PRINTED,
                {slot: poly},
            )
        )
    return entries


# -- conformal families ---------------------------------------------------------


def _half_norm(nvars: int, eps) -> MultiPoly:
    """(1/2) sum eps_i x_i^2."""
    total = MultiPoly.zero(nvars)
    for i in range(nvars):
        square = MultiPoly.variable(nvars, i) * MultiPoly.variable(nvars, i)
        total = total + square.scale(Fraction(eps[i], 2))
    return total


def _conformal_densities(model) -> list[CatalogEntry]:
    """Almost Einstein scales: the homogeneous coordinates themselves."""
    n = model.n
    eps = model.signature
    slots, nvars = _slots(model, "std")
    (slot,) = slots
    entries = [
        CatalogEntry("coord-0", AS_PRINTED, {slot: MultiPoly.const(nvars, 1)})
    ]
    for i in range(1, n + 1):
        entries.append(
            CatalogEntry(
                _name("coord", (i,)),
                AS_PRINTED,
                {slot: _x(nvars, i).scale(eps[i - 1])},
            )
        )
    half = _half_norm(nvars, eps)
    entries.append(
        CatalogEntry(
            _name("coord", (n + 1,)),
            SIGN_ADJUDICATED,
            {slot: -half},
            printed_coefficients={slot: half},
        )
    )
    return entries


def _vector_slot(i: int, n: int) -> str:
    return f"e{i}^e{n + 1}"


def _conformal_vectors(model) -> list[CatalogEntry]:
    """Conformal Killing fields: translations, dilation, rotations, inversions."""
    n = model.n
    eps = model.signature
    slots, nvars = _slots(model, "ext(2,std)")
    x = lambda i: _x(nvars, i)
    xi = lambda i: _vector_slot(i, n)
    entries = []
    for i in range(1, n + 1):
        coeffs = _fill(slots, nvars, {xi(i): MultiPoly.const(nvars, 1)})
        entries.append(CatalogEntry(_name("translation", (i,)), AS_PRINTED, coeffs))
    dilation = {xi(i): x(i) for i in range(1, n + 1)}
    entries.append(CatalogEntry("dilation", AS_PRINTED, _fill(slots, nvars, dilation)))
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            coeffs = {
                xi(i): x(j).scale(eps[j - 1]),
                xi(j): -x(i).scale(eps[i - 1]),
            }
            entries.append(
                CatalogEntry(
                    _name("rotation", (i, j)), AS_PRINTED, _fill(slots, nvars, coeffs)
                )
            )
    half = _half_norm(nvars, eps)
    for i in range(1, n + 1):
        adjudicated: dict[str, MultiPoly] = {}
        printed: dict[str, MultiPoly] = {}
        for j in range(1, n + 1):
            radial = x(i) * x(j)
            term = radial.scale(eps[i - 1])
            base = half if j == i else MultiPoly.zero(nvars)
            adjudicated[xi(j)] = base - term
            printed[xi(j)] = base + term
        entries.append(
            CatalogEntry(
                _name("special-conformal", (i,)),
                SIGN_ADJUDICATED,
                _fill(slots, nvars, adjudicated),
                printed_coefficients=_fill(slots, nvars, printed),
            )
        )
    return entries


def _form_slot(indices, n: int):
    """Slot key and sorting sign for an index sequence; None when repeated."""
    sign = _sort_sign(tuple(indices))
    if sign == 0:
        return None
    key = "^".join(f"e{i}" for i in sorted(indices)) + f"^e{n + 1}"
    return key, sign


def _conformal_forms(model, r: int) -> list[CatalogEntry]:
    """Conformal Killing r-forms (r >= 2) from the (r+1)-st exterior power."""
    from itertools import combinations

    n = model.n
    eps = model.signature
    slots, nvars = _slots(model, f"ext({r + 1},std)")
    x = lambda i: _x(nvars, i)

    def add(target: dict[str, MultiPoly], indices, poly: MultiPoly) -> None:
        hit = _form_slot(indices, n)
        if hit is None:
            return
        key, sign = hit
        target[key] = target.get(key, MultiPoly.zero(nvars)) + poly.scale(sign)

    entries = []
    for combo in combinations(range(1, n + 1), r):
        coeffs: dict[str, MultiPoly] = {}
        add(coeffs, combo, MultiPoly.const(nvars, 1))
        entries.append(
            CatalogEntry(_name("parallel", combo), AS_PRINTED, _fill(slots, nvars, coeffs))
        )
    for rest in combinations(range(1, n + 1), r - 1):
        coeffs = {}
        for j in range(1, n + 1):
            add(coeffs, (j,) + rest, x(j))
        entries.append(
            CatalogEntry(_name("euler", rest), AS_PRINTED, _fill(slots, nvars, coeffs))
        )
    for combo in combinations(range(1, n + 1), r + 1):
        coeffs = {}
        for t, idx in enumerate(combo):
            omitted = combo[:t] + combo[t + 1 :]
            sign = 1 if t % 2 == 0 else -1
            add(coeffs, omitted, x(idx).scale(sign * eps[idx - 1]))
        entries.append(
            CatalogEntry(_name("moment", combo), AS_PRINTED, _fill(slots, nvars, coeffs))
        )
    half = _half_norm(nvars, eps)
    top_sign = 1 if r % 2 == 0 else -1
    for combo in combinations(range(1, n + 1), r):
        coeffs = {}
        add(coeffs, combo, half.scale(top_sign))
        for t, idx in enumerate(combo, start=1):
            omitted = combo[: t - 1] + combo[t:]
            outer = (1 if (r - t) % 2 == 0 else -1) * eps[idx - 1]
            for l in range(1, n + 1):
                add(coeffs, (l,) + omitted, (x(idx) * x(l)).scale(outer))
        entries.append(
            CatalogEntry(
                _name("special-conformal", combo),
                AS_PRINTED,
                _fill(slots, nvars, coeffs),
            )
        )
    return entries
