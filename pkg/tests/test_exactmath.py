import random
from fractions import Fraction

import pytest

from bggpoly.exactmath import (
    MultiPoly,
    PolyMatrix,
    RatMatrix,
    format_rational,
    grlex_key,
    monomials_up_to,
    parse_rational,
)


def x(nvars, i):
    return MultiPoly.variable(nvars, i)


def random_poly(rng, nvars, max_deg=2, max_terms=4):
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        exp = tuple(rng.randint(0, max_deg) for _ in range(nvars))
        terms[exp] = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
    return MultiPoly(nvars, terms)


def test_rational_text_forms():
    assert format_rational(Fraction(3)) == "3"
    assert format_rational(Fraction(-1, 2)) == "-1/2"
    assert parse_rational("7/3") == Fraction(7, 3)
    assert parse_rational("-5") == Fraction(-5)


def test_product_difference_of_squares():
    p = (x(2, 0) + x(2, 1)) * (x(2, 0) - x(2, 1))
    assert p == x(2, 0) * x(2, 0) - x(2, 1) * x(2, 1)


def test_additive_identity_and_scale():
    p = x(2, 0) * x(2, 1) + 3
    assert p + MultiPoly.zero(2) == p
    half_square = (x(2, 0) * x(2, 0)).scale(Fraction(1, 2))
    assert half_square.scale(2) == x(2, 0) * x(2, 0)


def test_variable_count_mismatch():
    with pytest.raises(ValueError):
        x(2, 0) + x(3, 0)
    with pytest.raises(ValueError):
        x(2, 0) * x(1, 0)


def test_evaluate():
    p = x(2, 0) * x(2, 0) - x(2, 1) * x(2, 1)
    assert p.evaluate([3, 2]) == 5
    q = p + 7
    assert q.evaluate([0, 0]) == 7
    half = (x(2, 0) * x(2, 0) + x(2, 1) * x(2, 1)).scale(Fraction(1, 2))
    assert half.evaluate([1, 1]) == 1
    with pytest.raises(ValueError):
        p.evaluate([1])


def test_partial():
    p = x(2, 0) * x(2, 0) * x(2, 1)
    assert p.partial(0) == x(2, 0) * x(2, 1) * 2
    assert x(2, 0).partial(1).is_zero()
    with pytest.raises(ValueError):
        p.partial(2)


def test_mixed_partials_commute():
    rng = random.Random(7)
    for _ in range(25):
        p = random_poly(rng, 3, max_deg=3)
        assert p.partial(0).partial(1) == p.partial(1).partial(0)


def test_ring_axioms_randomized():
    rng = random.Random(11)
    for _ in range(25):
        nvars = rng.randint(0, 3)
        a = random_poly(rng, nvars)
        b = random_poly(rng, nvars)
        c = random_poly(rng, nvars)
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c


def test_leibniz_rule():
    rng = random.Random(13)
    for _ in range(25):
        p = random_poly(rng, 2, max_deg=3)
        q = random_poly(rng, 2, max_deg=3)
        lhs = (p * q).partial(0)
        rhs = p.partial(0) * q + p * q.partial(0)
        assert lhs == rhs


def test_evaluate_is_ring_homomorphism():
    rng = random.Random(17)
    for _ in range(25):
        p = random_poly(rng, 2)
        q = random_poly(rng, 2)
        point = [Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(2)]
        assert (p * q).evaluate(point) == p.evaluate(point) * q.evaluate(point)
        assert (p + q).evaluate(point) == p.evaluate(point) + q.evaluate(point)


def test_zero_variable_constants():
    c = MultiPoly.const(0, Fraction(5, 2))
    d = MultiPoly.const(0, 2)
    assert (c * d).constant_value() == 5
    assert c.evaluate([]) == Fraction(5, 2)
    assert c.total_degree() == 0
    assert MultiPoly.zero(0).total_degree() == -1


def test_canonical_text_examples():
    p = (x(2, 0) * x(2, 0)).scale(Fraction(1, 2)) - x(2, 1)
    assert p.to_text() == "1/2*x1^2 - x2"
    assert MultiPoly.zero(3).to_text() == "0"
    assert MultiPoly.const(2, -3).to_text() == "-3"
    assert (-x(2, 1) + x(2, 0) * x(2, 0)).to_text() == "x1^2 - x2"
    assert (x(3, 0) * x(3, 2) * 3).to_text() == "3*x1*x3"


def test_text_round_trip():
    rng = random.Random(19)
    for _ in range(50):
        nvars = rng.randint(1, 4)
        p = random_poly(rng, nvars, max_deg=4, max_terms=6)
        assert MultiPoly.from_text(p.to_text(), nvars) == p
    for text in ("1/2*x1^2 - x2", "0", "-x1 + 3", "x1*x2^3 + 1/7"):
        p = MultiPoly.from_text(text, 2)
        assert p.to_text() == text


def test_grlex_ordering():
    exps = [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]
    ordered = sorted(exps, key=grlex_key)
    assert ordered == [(2, 0), (1, 1), (0, 2), (1, 0), (0, 1), (0, 0)]
    monos = monomials_up_to(2, 2)
    assert monos == ordered


def test_poly_matrix_identity_power():
    ident = PolyMatrix.identity(3, 2)
    assert ident.matpow(5) == ident


def test_strictly_lower_triangular_cube_vanishes():
    n = MultiPoly.zero(1)
    one = MultiPoly.const(1, 1)
    m = PolyMatrix(
        [
            [n, n, n],
            [one, n, n],
            [x(1, 0), one, n],
        ]
    )
    assert not m.matpow(2).is_zero()
    assert m.matpow(3).is_zero()


def test_poly_matrix_shape_checks():
    with pytest.raises(ValueError):
        PolyMatrix([[MultiPoly.zero(1), MultiPoly.zero(1)]]).matpow(2)
    with pytest.raises(ValueError):
        PolyMatrix([[MultiPoly.zero(1), MultiPoly.zero(2)]])


def test_poly_matrix_apply_and_evaluate():
    m = PolyMatrix([[x(2, 0), MultiPoly.const(2, 1)], [MultiPoly.zero(2), x(2, 1)]])
    out = m.apply([1, x(2, 0)])
    assert out[0] == x(2, 0) + x(2, 0)  # x1*1 + 1*x1
    assert out[1] == x(2, 1) * x(2, 0)
    evaluated = m.evaluate([2, 3])
    assert evaluated == RatMatrix([[2, 1], [0, 3]])


def test_nullspace_zero_and_identity():
    assert len(RatMatrix.zero(2, 2).nullspace()) == 2
    assert RatMatrix.identity(3).nullspace() == []
    assert RatMatrix.identity(3).rank() == 3


def test_nullspace_vectors_annihilate():
    rng = random.Random(23)
    for _ in range(30):
        rows = rng.randint(1, 5)
        cols = rng.randint(1, 5)
        m = RatMatrix(
            [
                [Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(cols)]
                for _ in range(rows)
            ]
        )
        basis = m.nullspace()
        assert m.rank() + len(basis) == cols
        for vec in basis:
            assert all(v == 0 for v in m.apply(vec))


def _gauss_rank(matrix):
    # Independent oracle: plain rational Gaussian elimination.
    m = [list(row) for row in matrix.entries]
    rank = 0
    for col in range(matrix.cols):
        pivot = next(
            (r for r in range(rank, matrix.rows) if m[r][col] != 0), None
        )
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        for r in range(matrix.rows):
            if r != rank and m[r][col] != 0:
                factor = m[r][col] / m[rank][col]
                m[r] = [a - factor * b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def test_rank_matches_gauss_oracle():
    rng = random.Random(29)
    for _ in range(40):
        rows = rng.randint(1, 6)
        cols = rng.randint(1, 6)
        m = RatMatrix(
            [
                [Fraction(rng.randint(-2, 2), rng.randint(1, 2)) for _ in range(cols)]
                for _ in range(rows)
            ]
        )
        assert m.rank() == _gauss_rank(m)


def test_solve_full_column_rank():
    a = RatMatrix([[1, 2], [3, 4], [5, 6]])
    xvec = (Fraction(1, 2), Fraction(-3))
    rhs = a.apply(xvec)
    assert a.solve(rhs) == xvec
    with pytest.raises(ValueError):
        a.solve([1, 0, 0])  # not in the column span
    dependent = RatMatrix([[1, 2], [2, 4]])
    with pytest.raises(ValueError):
        dependent.solve([1, 2])


def test_rat_matrix_algebra():
    a = RatMatrix([[1, 2], [3, 4]])
    b = RatMatrix([[0, 1], [1, 0]])
    assert a * b == RatMatrix([[2, 1], [4, 3]])
    assert a.commutator(b) == a * b - b * a
    assert a.transpose().transpose() == a
    assert a.trace() == 5
    assert (a - a).is_zero()
