import random
from fractions import Fraction

import pytest

from qweb.linalg import (
    BasisMismatch,
    GradedBasis,
    SuperMatrix,
    mat_add,
    mat_compose,
    mat_identity,
    mat_inverse,
    mat_rank,
    mat_scale,
    mat_tensor,
    mat_zero,
    matrix_from_json,
    matrix_to_json,
    solve_null,
    supertrace,
    tensor_basis,
)
from qweb.scalars import ONE, Scalar


def _basis(*parities):
    return GradedBasis(tuple((("u", (i,)),) for i in range(len(parities))), tuple(parities))


def _random_matrix(rng, dom, cod, density=0.5):
    entries = {}
    for r in range(len(cod)):
        for c in range(len(dom)):
            if rng.random() < density:
                entries[(r, c)] = Scalar(Fraction(rng.randint(-3, 3)), Fraction(rng.randint(-2, 2)))
    return SuperMatrix(dom, cod, entries)


def test_identity_composition():
    b = _basis(0, 1, 0)
    f = _random_matrix(random.Random(1), b, b)
    assert mat_compose(mat_identity(b), f) == f
    assert mat_compose(f, mat_identity(b)) == f
    assert len(mat_identity(b).entries) == 3


def test_compose_mismatch_raises():
    with pytest.raises(BasisMismatch):
        mat_compose(mat_identity(_basis(0)), mat_identity(_basis(0, 1)))


def test_add_scale_cancel():
    b = _basis(0, 1)
    f = _random_matrix(random.Random(5), b, b)
    assert mat_add(f, mat_scale(-1, f)).is_zero()
    assert mat_scale(1, f) == f


def test_compose_associative_random():
    rng = random.Random(11)
    b1, b2, b3, b4 = _basis(0, 1), _basis(1, 0, 1), _basis(0, 0), _basis(1, 1, 0)
    for _ in range(25):
        f = _random_matrix(rng, b1, b2)
        g = _random_matrix(rng, b2, b3)
        h = _random_matrix(rng, b3, b4)
        assert mat_compose(h, mat_compose(g, f)) == mat_compose(mat_compose(h, g), f)


def test_tensor_interchange_homogeneous():
    """(f (x) id)(id (x) g) = (-1)^{p(f)p(g)} (id (x) g)(f (x) id)."""
    rng = random.Random(23)
    for _ in range(40):
        b = _basis(0, 1)
        c = _basis(1, 0, 0)
        f_full = _random_matrix(rng, b, b)
        g_full = _random_matrix(rng, c, c)
        for pf, f in zip((0, 1), f_full.parity_split()):
            for pg, g in zip((0, 1), g_full.parity_split()):
                lhs = mat_compose(mat_tensor(f, mat_identity(c)), mat_tensor(mat_identity(b), g))
                rhs = mat_compose(mat_tensor(mat_identity(b), g), mat_tensor(f, mat_identity(c)))
                assert lhs == mat_scale((-1) ** (pf * pg), rhs)


def test_tensor_identity():
    b, c = _basis(0, 1), _basis(1, 1)
    assert mat_tensor(mat_identity(b), mat_identity(c)) == mat_identity(tensor_basis(b, c))


def test_inverse_random():
    rng = random.Random(31)
    made = 0
    while made < 20:
        size = rng.randint(1, 20)
        b = GradedBasis(
            tuple((("u", (i,)),) for i in range(size)),
            tuple(rng.randint(0, 1) for _ in range(size)),
        )
        f = _random_matrix(rng, b, b, density=0.4)
        try:
            inv = mat_inverse(f)
        except ZeroDivisionError:
            continue
        made += 1
        assert mat_compose(inv, f) == mat_identity(b)
        assert mat_compose(f, inv) == mat_identity(b)


def test_inverse_scaled_identity():
    b = _basis(0, 1)
    two = mat_scale(2, mat_identity(b))
    assert mat_inverse(two) == mat_scale(Fraction(1, 2), mat_identity(b))


def test_singular_raises():
    b = _basis(0, 1)
    with pytest.raises(ZeroDivisionError):
        mat_inverse(mat_zero(b, b))


def test_rank():
    b = _basis(0, 0, 1, 1, 0)
    assert mat_rank(mat_identity(b)) == 5
    assert mat_rank(mat_zero(b, b)) == 0
    f = SuperMatrix(b, b, {(0, 0): ONE, (1, 0): ONE, (0, 1): ONE, (1, 1): ONE})
    assert mat_rank(f) == 1


def test_solve_null_basic():
    # x0 = x1, x2 free -> dimension 2
    dim, basis = solve_null([{0: ONE, 1: -ONE}], 3)
    assert dim == 2
    for vec in basis:
        lhs = vec.get(0, Scalar.of(0)) - vec.get(1, Scalar.of(0))
        assert not lhs


def test_supertrace():
    b = _basis(0, 1)
    assert supertrace(mat_identity(b)).is_zero()
    f = SuperMatrix(b, b, {(0, 0): Scalar.of(3), (1, 1): Scalar.of(1)})
    assert supertrace(f) == Scalar.of(2)
    assert supertrace(mat_zero(b, b)).is_zero()


def test_json_roundtrip():
    rng = random.Random(7)
    b = _basis(0, 1, 1)
    f = _random_matrix(rng, b, b)
    data = matrix_to_json(f)
    assert data["entries"] == sorted(data["entries"])
    g = matrix_from_json(data)
    assert g.entries == {tuple(k): v for k, v in zip(
        [(r, c) for r, c, _ in data["entries"]],
        [f.entries[(r, c)] for r, c, _ in data["entries"]],
    )}
