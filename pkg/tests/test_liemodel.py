import pytest

from bggpoly.exactmath import RatMatrix
from bggpoly.liemodel import (
    Conformal,
    Projective,
    build_conformal,
    build_model,
    build_projective,
    geometry_str,
    parse_geometry,
    rho_symbolic,
)

DESK_BOUND = 8


def unit(d, i):
    return tuple(1 if j == i else 0 for j in range(d))


def test_parse_geometry():
    assert parse_geometry("projective:3") == Projective(3)
    assert parse_geometry("conformal:2,1") == Conformal(2, 1)
    assert geometry_str(parse_geometry("conformal:0,3")) == "conformal:0,3"
    for bad in ("projective:x", "conformal:3", "spherical:2", "conformal:1,a"):
        with pytest.raises(ValueError):
            parse_geometry(bad)


def test_dimension_bounds():
    with pytest.raises(ValueError):
        build_projective(1)
    with pytest.raises(ValueError):
        build_conformal(1, 0)
    with pytest.raises(ValueError):
        build_conformal(-1, 3)
    build_conformal(1, 1)  # n = 2 is allowed for desk tests


@pytest.mark.parametrize("n", range(2, DESK_BOUND + 1))
def test_projective_model_invariants(n):
    model = build_projective(n)
    e = model.grading_element
    assert e.trace() == 0
    for i, b in enumerate(model.g_minus):
        assert b.trace() == 0
        assert e.commutator(b) == -b
        for b2 in model.g_minus:
            assert b.commutator(b2).is_zero()
    eigen = {e.entry(i, i) for i in range(model.ambient_dim)}
    assert len(eigen) == 2
    assert max(eigen) - min(eigen) == 1


@pytest.mark.parametrize("p,q", [(2, 0), (1, 1), (3, 0), (2, 1), (2, 2), (5, 3), (4, 4)])
def test_conformal_model_invariants(p, q):
    model = build_conformal(p, q)
    e = model.grading_element
    j = model.form
    for b in model.g_minus:
        assert (b.transpose() * j + j * b).is_zero()
        assert e.commutator(b) == -b
        for b2 in model.g_minus:
            assert b.commutator(b2).is_zero()
    eigen = sorted({e.entry(i, i) for i in range(model.ambient_dim)})
    assert eigen == [-1, 0, 1]


def test_projective_generator_action():
    model = build_projective(2)
    b1 = model.g_minus[0]
    assert b1.apply(unit(3, 0)) == unit(3, 1)
    assert all(v == 0 for v in b1.apply(unit(3, 1)))
    assert all(v == 0 for v in b1.apply(unit(3, 2)))


def test_conformal_generator_action():
    model = build_conformal(1, 1)
    e = model.grading_element
    assert e.apply(unit(4, 0)) == unit(4, 0)
    assert e.apply(unit(4, 3)) == tuple(-v for v in unit(4, 3))
    b1 = model.g_minus[0]
    assert b1.apply(unit(4, 0)) == unit(4, 1)
    # eps_1 = +1 for (1,1): B_1 e_1 = -e_3
    assert b1.apply(unit(4, 1)) == (0, 0, 0, -1)


def test_rho_symbolic_projective_column():
    model = build_projective(2)
    rho = rho_symbolic(model)
    col = rho.column(0)
    assert col[0].is_zero()
    assert col[1].to_text() == "x1"
    assert col[2].to_text() == "x2"


def test_rho_symbolic_conformal_entry():
    model = build_conformal(1, 1)
    rho = rho_symbolic(model)
    # rho(X) e_1 = -eps_1 x_1 e_3
    assert rho.entry(3, 1).to_text() == "-x1"
    # rho(X) e_2 = -eps_2 x_2 e_3 with eps_2 = -1
    assert rho.entry(3, 2).to_text() == "x2"


def test_rho_vanishes_at_origin():
    for model in (build_projective(3), build_conformal(2, 1)):
        rho = rho_symbolic(model)
        assert rho.evaluate([0] * model.n) == RatMatrix.zero(
            model.ambient_dim, model.ambient_dim
        )


def test_build_model_dispatch():
    assert build_model(Projective(2)) == build_projective(2)
    assert build_model(Conformal(2, 1)) == build_conformal(2, 1)
