"""Finite-dimensional graded representations built from a Lie model.

A Representation packages a labeled basis, the action matrices of the
g_{-1} generators, the (diagonal) action of the grading element, and the
per-basis-vector grading index normalized to run 0..N.  Generators lower
the grading index by exactly 1 and kill index 0; N is the nilpotency
depth, which bounds the polynomial degree of every solution downstream.

Constructions: standard module, dual, exterior and symmetric powers,
tensor products, invariant subrepresentations on explicitly given spans,
and the kernel-of-wedge submodule of S^2(Lambda^2 W*) used for valence-2
Killing tensors.  Exterior and symmetric actions extend by the Leibniz
rule on monomial bases; the wedge sign is the parity of the sort that
restores the ordered label.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, replace
from fractions import Fraction
from itertools import combinations, combinations_with_replacement

from .exactmath import RatMatrix
from .liemodel import Conformal, GradedLieModel, Projective

__all__ = [
    "Label",
    "atom",
    "dual_of",
    "wedge_of",
    "sym_of",
    "pair_of",
    "span_slot",
    "label_str",
    "Representation",
    "QuotientProjection",
    "standard_rep",
    "dual_rep",
    "exterior_power",
    "symmetric_power",
    "tensor_product",
    "invariant_subrep",
    "cartan_kernel_s2lambda2",
    "quotient_projection",
    "parse_descriptor",
    "canonical_descriptor",
    "build_representation",
]

# Labels are small nested tuples; the first element is the tag.
Label = tuple


def atom(i: int) -> Label:
    return ("atom", i)


def dual_of(label: Label) -> Label:
    if label[0] == "dual":
        return label[1]
    return ("dual", label)


def wedge_of(parts) -> Label:
    return ("wedge", tuple(parts))


def sym_of(parts) -> Label:
    return ("sym", tuple(parts))


def pair_of(a: Label, b: Label) -> Label:
    return ("tensor", (a, b))


def span_slot(i: int) -> Label:
    return ("span", i)


def _wrap(label: Label) -> str:
    text = label_str(label)
    if label[0] in ("atom", "dual", "span"):
        return text
    return f"({text})"


def label_str(label: Label) -> str:
    """Canonical display string; used as the slot key in JSON output."""
    tag = label[0]
    if tag == "atom":
        return f"e{label[1]}"
    if tag == "dual":
        return _wrap(label[1]) + "*"
    if tag == "wedge":
        return "^".join(_wrap(part) for part in label[1])
    if tag == "sym":
        return ".".join(_wrap(part) for part in label[1])
    if tag == "tensor":
        a, b = label[1]
        return f"{_wrap(a)}x{_wrap(b)}"
    if tag == "span":
        return f"v{label[1]}"
    raise ValueError(f"unknown label {label!r}")


@dataclass(frozen=True)
class Representation:
    """A g-module with graded basis bookkeeping.

    grading[i] is the index of basis vector i, always in 0..depth; the
    generator matrices connect index j only to index j - 1.  gram, when
    present, is the induced invariant bilinear form in this basis.
    """

    model: GradedLieModel
    descriptor: str
    labels: tuple[Label, ...]
    generators: tuple[RatMatrix, ...]
    e_action: RatMatrix
    grading: tuple[int, ...]
    depth: int
    gram: RatMatrix | None = None

    @property
    def dim(self) -> int:
        return len(self.labels)

    def slot_indices(self) -> tuple[int, ...]:
        return tuple(i for i, g in enumerate(self.grading) if g == 0)

    def slot_labels(self) -> tuple[str, ...]:
        return tuple(label_str(self.labels[i]) for i in self.slot_indices())


@dataclass(frozen=True)
class QuotientProjection:
    """Coordinate projection onto the grading-0 slots of a representation."""

    rep: Representation
    slot_indices: tuple[int, ...]

    def apply(self, vector):
        return tuple(vector[i] for i in self.slot_indices)


def quotient_projection(rep: Representation) -> QuotientProjection:
    return QuotientProjection(rep=rep, slot_indices=rep.slot_indices())


def _grading_from_diagonal(e_action: RatMatrix) -> tuple[tuple[int, ...], int]:
    if not e_action.is_diagonal():
        raise ValueError("grading-element action must be diagonal in the chosen basis")
    diag = [e_action.entry(i, i) for i in range(e_action.rows)]
    if not diag:
        return (), 0
    low = min(diag)
    shifted = [v - low for v in diag]
    for v in shifted:
        if v.denominator != 1:
            raise ValueError("grading-element eigenvalues are not integer-spaced")
    grading = tuple(int(v) for v in shifted)
    return grading, max(grading)


def _check_lowering(generators, grading) -> None:
    for k, gen in enumerate(generators):
        for a in range(gen.rows):
            for b in range(gen.cols):
                if gen.entry(a, b) != 0 and grading[a] != grading[b] - 1:
                    raise ValueError(
                        f"generator {k + 1} maps grading {grading[b]} to "
                        f"{grading[a]}, expected a drop by exactly 1"
                    )


def _finish(
    model: GradedLieModel,
    descriptor: str,
    labels,
    generators,
    e_action: RatMatrix,
    gram: RatMatrix | None = None,
) -> Representation:
    grading, depth = _grading_from_diagonal(e_action)
    generators = tuple(generators)
    _check_lowering(generators, grading)
    return Representation(
        model=model,
        descriptor=descriptor,
        labels=tuple(labels),
        generators=generators,
        e_action=e_action,
        grading=grading,
        depth=depth,
        gram=gram,
    )


def standard_rep(model: GradedLieModel) -> Representation:
    """The ambient matrices acting on the standard module."""
    labels = [atom(i) for i in range(model.ambient_dim)]
    return _finish(
        model,
        "std",
        labels,
        model.g_minus,
        model.grading_element,
        gram=model.form,
    )


def dual_rep(rep: Representation) -> Representation:
    """Dual module: action matrices are negative transposes."""
    labels = [dual_of(l) for l in rep.labels]
    generators = [-g.transpose() for g in rep.generators]
    e_action = -rep.e_action.transpose()
    return _finish(
        rep.model,
        canonical_descriptor(("dual", parse_descriptor(rep.descriptor))),
        labels,
        generators,
        e_action,
    )


def _lift_matrix(parent: RatMatrix, index_of, items, replace_at) -> RatMatrix:
    """Leibniz extension of a parent action matrix to a monomial basis.

    items: list of index tuples (the monomial basis).  replace_at(combo,
    t, a) returns (target_tuple, sign) or None when the replacement dies
    (repeated wedge factor).
    """
    dim = len(items)
    rows = [[Fraction(0)] * dim for _ in range(dim)]
    for col, combo in enumerate(items):
        for t, orig in enumerate(combo):
            for a in range(parent.rows):
                coeff = parent.entry(a, orig)
                if coeff == 0:
                    continue
                hit = replace_at(combo, t, a)
                if hit is None:
                    continue
                target, sign = hit
                rows[index_of[target]][col] += sign * coeff
    return RatMatrix(rows)


def _wedge_replace(combo, t, a):
    rest = combo[:t] + combo[t + 1 :]
    if a in rest:
        return None
    merged = tuple(sorted(rest + (a,)))
    s = merged.index(a)
    sign = -1 if (s + t) % 2 else 1
    return merged, sign


def _sym_replace(combo, t, a):
    rest = combo[:t] + combo[t + 1 :]
    merged = tuple(sorted(rest + (a,)))
    return merged, 1


def exterior_power(rep: Representation, r: int) -> Representation:
    """Lambda^r of rep on the ordered wedge basis."""
    if not 1 <= r <= rep.dim:
        raise ValueError(f"wedge degree {r} out of range 1..{rep.dim}")
    if r == 1:
        return rep
    items = list(combinations(range(rep.dim), r))
    index_of = {combo: i for i, combo in enumerate(items)}
    labels = [wedge_of(rep.labels[i] for i in combo) for combo in items]
    generators = [
        _lift_matrix(g, index_of, items, _wedge_replace) for g in rep.generators
    ]
    e_action = _lift_matrix(rep.e_action, index_of, items, _wedge_replace)
    gram = None
    if rep.gram is not None:
        gram = _wedge_gram(rep.gram, items)
    return _finish(
        rep.model,
        canonical_descriptor(("ext", r, parse_descriptor(rep.descriptor))),
        labels,
        generators,
        e_action,
        gram=gram,
    )


def _wedge_gram(gram: RatMatrix, items) -> RatMatrix:
    """Induced form on wedges: determinant of the pairwise Gram block."""
    dim = len(items)
    rows = []
    for left in items:
        row = []
        for right in items:
            block = [[gram.entry(a, b) for b in right] for a in left]
            row.append(_det(block))
        rows.append(row)
    return RatMatrix(rows)


def _det(block) -> Fraction:
    size = len(block)
    if size == 0:
        return Fraction(1)
    if size == 1:
        return Fraction(block[0][0])
    total = Fraction(0)
    for j in range(size):
        if block[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1 :] for row in block[1:]]
        term = Fraction(block[0][j]) * _det(minor)
        total += term if j % 2 == 0 else -term
    return total


def symmetric_power(rep: Representation, k: int) -> Representation:
    """S^k of rep on the monomial basis of weakly increasing multi-indices."""
    if k < 1:
        raise ValueError(f"symmetric degree {k} must be >= 1")
    if k == 1:
        return rep
    items = list(combinations_with_replacement(range(rep.dim), k))
    index_of = {combo: i for i, combo in enumerate(items)}
    labels = [sym_of(rep.labels[i] for i in combo) for combo in items]
    generators = [
        _lift_matrix(g, index_of, items, _sym_replace) for g in rep.generators
    ]
    e_action = _lift_matrix(rep.e_action, index_of, items, _sym_replace)
    return _finish(
        rep.model,
        canonical_descriptor(("sym", k, parse_descriptor(rep.descriptor))),
        labels,
        generators,
        e_action,
    )


def tensor_product(a: Representation, b: Representation) -> Representation:
    """a (x) b with the pair basis in a-major order."""
    if a.model != b.model:
        raise ValueError("tensor factors live over different models")
    labels = [pair_of(la, lb) for la in a.labels for lb in b.labels]
    dim = a.dim * b.dim

    def lift(ma: RatMatrix, mb: RatMatrix) -> RatMatrix:
        rows = [[Fraction(0)] * dim for _ in range(dim)]
        for ia in range(a.dim):
            for ib in range(b.dim):
                col = ia * b.dim + ib
                for x in range(a.dim):
                    c = ma.entry(x, ia)
                    if c != 0:
                        rows[x * b.dim + ib][col] += c
                for y in range(b.dim):
                    c = mb.entry(y, ib)
                    if c != 0:
                        rows[ia * b.dim + y][col] += c
        return RatMatrix(rows)

    generators = [lift(ga, gb) for ga, gb in zip(a.generators, b.generators)]
    e_action = lift(a.e_action, b.e_action)
    descriptor = canonical_descriptor(
        ("tensor", parse_descriptor(a.descriptor), parse_descriptor(b.descriptor))
    )
    return _finish(a.model, descriptor, labels, generators, e_action)


def invariant_subrep(
    rep: Representation, span_vectors, descriptor: str | None = None
) -> Representation:
    """Restrict rep to the span of the given vectors.

    Every span vector must be homogeneous for the grading element, and the
    span must be closed under all generator actions; violations raise with
    the offending generator and vector named.  Vectors that are scalar
    multiples of a parent basis vector keep the parent label.
    """
    vectors = [tuple(Fraction(v) for v in vec) for vec in span_vectors]
    if not vectors:
        raise ValueError("empty span")
    if any(len(v) != rep.dim for v in vectors):
        raise ValueError("span vector length does not match representation dimension")
    span = RatMatrix.from_columns(vectors)
    if span.rank() != len(vectors):
        raise ValueError("span vectors are linearly dependent")

    diag = [rep.e_action.entry(i, i) for i in range(rep.dim)]
    eigenvalues = []
    for j, vec in enumerate(vectors):
        support = {diag[i] for i, v in enumerate(vec) if v != 0}
        if len(support) != 1:
            raise ValueError(
                f"span vector {j} is not homogeneous for the grading element"
            )
        eigenvalues.append(support.pop())

    def coords_of(image, gen_index: int, vec_index: int):
        try:
            return span.solve(image)
        except ValueError:
            raise ValueError(
                f"span is not invariant: generator {gen_index + 1} moves "
                f"vector {vec_index} outside the span"
            ) from None

    sub_generators = []
    for k, gen in enumerate(rep.generators):
        columns = [coords_of(gen.apply(vec), k, j) for j, vec in enumerate(vectors)]
        sub_generators.append(RatMatrix.from_columns(columns))
    e_action = RatMatrix.diagonal(eigenvalues)

    labels = []
    for j, vec in enumerate(vectors):
        support = [i for i, v in enumerate(vec) if v != 0]
        if len(support) == 1:
            labels.append(rep.labels[support[0]])
        else:
            labels.append(span_slot(j))

    return _finish(
        rep.model,
        descriptor if descriptor is not None else f"sub({rep.descriptor})",
        labels,
        sub_generators,
        e_action,
    )


def cartan_kernel_s2lambda2(model: GradedLieModel) -> Representation:
    """Kernel of the wedge map S^2(Lambda^2 W*) -> Lambda^4 W*, W the standard module.

    This is the module whose solutions are the valence-2 Killing tensors.
    For n < 3 the target is trivial, the map is zero, and the kernel is
    the whole space (returned with a warning).
    """
    if not isinstance(model.kind, Projective):
        raise ValueError("the kernel-of-wedge module is built over projective models")
    dual = dual_rep(standard_rep(model))
    lam2 = exterior_power(dual, 2)
    s2 = symmetric_power(lam2, 2)
    if model.n < 3:
        warnings.warn(
            "wedge target is trivial for n < 3; returning the full space",
            stacklevel=2,
        )
        return replace(s2, descriptor="cartanS2L2")

    d = model.ambient_dim
    pairs = list(combinations(range(d), 2))
    pair_index = {p: i for i, p in enumerate(pairs)}
    s2_items = list(combinations_with_replacement(range(len(pairs)), 2))
    quads = list(combinations(range(d), 4))
    quad_index = {q: i for i, q in enumerate(quads)}

    rows = [[Fraction(0)] * len(s2_items) for _ in quads]
    for col, (ai, bi) in enumerate(s2_items):
        merged = pairs[ai] + pairs[bi]
        if len(set(merged)) != 4:
            continue
        sign = _sort_sign(merged)
        rows[quad_index[tuple(sorted(merged))]][col] += sign
    wedge_map = RatMatrix(rows)
    kernel = wedge_map.nullspace()
    return invariant_subrep(s2, kernel, descriptor="cartanS2L2")


def _sort_sign(seq) -> int:
    inversions = sum(
        1
        for i in range(len(seq))
        for j in range(i + 1, len(seq))
        if seq[i] > seq[j]
    )
    return -1 if inversions % 2 else 1


# -- descriptor grammar -------------------------------------------------------
#
#   R := "std" | "dual(" R ")" | "ext(" INT "," R ")" | "sym(" INT "," R ")"
#        | "tensor(" R "," R ")" | "cartanS2L2"


def parse_descriptor(text: str):
    node, rest = _parse_node(text.replace(" ", ""))
    if rest:
        raise ValueError(f"trailing input {rest!r} in descriptor {text!r}")
    return _normalize(node)


def _parse_node(text: str):
    if text.startswith("cartanS2L2"):
        return ("cartan",), text[len("cartanS2L2") :]
    if text.startswith("std"):
        return ("std",), text[3:]
    if text.startswith("dual("):
        inner, rest = _parse_node(text[5:])
        rest = _expect(rest, ")")
        return ("dual", inner), rest
    for tag in ("ext", "sym"):
        if text.startswith(tag + "("):
            body = text[len(tag) + 1 :]
            num, _, body = body.partition(",")
            if not num.isdigit():
                raise ValueError(f"{tag} degree must be a positive integer, got {num!r}")
            inner, rest = _parse_node(body)
            rest = _expect(rest, ")")
            return (tag, int(num), inner), rest
    if text.startswith("tensor("):
        left, rest = _parse_node(text[7:])
        rest = _expect(rest, ",")
        right, rest = _parse_node(rest)
        rest = _expect(rest, ")")
        return ("tensor", left, right), rest
    raise ValueError(f"cannot parse representation descriptor at {text!r}")


def _expect(text: str, char: str) -> str:
    if not text.startswith(char):
        raise ValueError(f"expected {char!r} at {text!r}")
    return text[1:]


def _normalize(node):
    tag = node[0]
    if tag in ("std", "cartan"):
        return node
    if tag == "dual":
        inner = _normalize(node[1])
        if inner[0] == "dual":
            return inner[1]
        return ("dual", inner)
    if tag in ("ext", "sym"):
        degree, inner = node[1], _normalize(node[2])
        if degree == 1:
            return inner
        return (tag, degree, inner)
    if tag == "tensor":
        return ("tensor", _normalize(node[1]), _normalize(node[2]))
    raise ValueError(f"unknown node {node!r}")


def canonical_descriptor(node) -> str:
    node = _normalize(node)
    tag = node[0]
    if tag == "std":
        return "std"
    if tag == "cartan":
        return "cartanS2L2"
    if tag == "dual":
        return f"dual({canonical_descriptor(node[1])})"
    if tag in ("ext", "sym"):
        return f"{tag}({node[1]},{canonical_descriptor(node[2])})"
    return f"tensor({canonical_descriptor(node[1])},{canonical_descriptor(node[2])})"


def build_representation(model: GradedLieModel, descriptor: str) -> Representation:
    """Build the representation named by a descriptor string."""
    return _build(model, parse_descriptor(descriptor))


def _build(model: GradedLieModel, node) -> Representation:
    tag = node[0]
    if tag == "std":
        return standard_rep(model)
    if tag == "cartan":
        return cartan_kernel_s2lambda2(model)
    if tag == "dual":
        return dual_rep(_build(model, node[1]))
    if tag == "ext":
        return exterior_power(_build(model, node[2]), node[1])
    if tag == "sym":
        return symmetric_power(_build(model, node[2]), node[1])
    if tag == "tensor":
        return tensor_product(_build(model, node[1]), _build(model, node[2]))
    raise ValueError(f"unknown node {node!r}")
