import numpy as np
import pytest

from troforge.errors import (
    NotInvariantError,
    PeirceMembershipError,
    PeirceSpectrumError,
)
from troforge.matrix import BlockElement, BlockShape, Subspace, span_basis
from troforge.triple import (
    box_operator,
    c_star_defect,
    is_minimal_tripotent,
    is_tripotent,
    jordan_identity_defect,
    jordan_triple,
    peirce2_membership,
    peirce2_product,
    peirce_decompose,
)


@pytest.fixture
def m2():
    return BlockShape.single(2)


@pytest.fixture
def full_m2(m2):
    return Subspace.full(m2)


def test_jordan_triple_symmetric(random_element, m2):
    x, y, z = (random_element(m2) for _ in range(3))
    assert jordan_triple(x, y, z).allclose(jordan_triple(z, y, x))


def test_jordan_identity(random_element, shape_m2_c):
    a, b, x, y, z = (random_element(shape_m2_c) for _ in range(5))
    scale = np.prod([e.norm() for e in (a, b, x, y, z)])
    assert jordan_identity_defect(a, b, x, y, z) < 1e-10 * scale


def test_c_star_condition(random_element, shape_m2_c):
    assert c_star_defect(random_element(shape_m2_c)) < 1e-10
    assert c_star_defect(shape_m2_c.zeros()) == 0.0


def test_factor_jordan_identity(factor_grid, tol):
    space = factor_grid.span(tol)
    rng = np.random.default_rng(0)
    for _ in range(200):
        a, b, x, y, z = (space.random_element(rng) for _ in range(5))
        scale = np.prod([e.op_norm() for e in (a, b, x, y, z)])
        assert jordan_identity_defect(a, b, x, y, z) < 1e-10 * max(scale, 1.0)


def test_factor_c_star_condition(factor_grid, tol):
    space = factor_grid.span(tol)
    rng = np.random.default_rng(1)
    defects = [c_star_defect(space.random_element(rng)) for _ in range(100)]
    assert max(defects) < 1e-10


def test_tripotents(m2, tol):
    e11 = m2.unit(1, 1, 1)
    assert is_tripotent(e11, tol)
    assert is_tripotent(m2.identity(), tol)
    assert not is_tripotent(2 * e11, tol)


def test_box_operator(m2, full_m2, tol):
    e11 = m2.unit(1, 1, 1)
    box = box_operator(e11, e11, full_m2, tol)
    assert box.matrix.shape == (4, 4)
    # e□e is self-adjoint for the trace pairing
    np.testing.assert_allclose(box.matrix, box.matrix.conj().T, atol=1e-12)


def test_box_operator_not_invariant(m2, tol):
    diagonal = span_basis([m2.unit(1, 1, 1), m2.unit(1, 2, 2)], tol)
    e12 = m2.unit(1, 1, 2)
    with pytest.raises(NotInvariantError):
        box_operator(e12, m2.unit(1, 2, 2), diagonal, tol)


def test_peirce_decomposition_m2(m2, full_m2, tol):
    peirce = peirce_decompose(m2.unit(1, 1, 1), full_m2, tol)
    assert peirce.dims == (1, 2, 1)
    assert peirce.max_spectrum_defect() < 1e-10
    assert peirce_decompose(m2.identity(), full_m2, tol).dims == (0, 0, 4)


def test_peirce_decomposition_rectangular(tol):
    shape = BlockShape.single(2, 3)
    peirce = peirce_decompose(shape.unit(1, 1, 1), Subspace.full(shape), tol)
    # P2 = C e11, P1 = row 1 and column 1, P0 = M_{1,2}
    assert peirce.dims == (2, 3, 1)


def test_peirce_requires_tripotent(m2, full_m2, tol):
    with pytest.raises(PeirceSpectrumError):
        peirce_decompose(3 * m2.unit(1, 1, 1), full_m2, tol)


def test_peirce_tripotent_outside(m2, tol):
    diagonal = span_basis([m2.unit(1, 1, 1)], tol)
    with pytest.raises(PeirceSpectrumError):
        peirce_decompose(m2.unit(1, 1, 2), diagonal, tol)


def test_minimal_tripotent(m2, full_m2, tol):
    assert is_minimal_tripotent(m2.unit(1, 1, 1), full_m2, tol)
    assert not is_minimal_tripotent(m2.identity(), full_m2, tol)


def test_peirce2_product(m2, tol):
    identity = m2.identity()
    a = BlockElement.from_matrix([[1, 2], [3, 4]])
    b = BlockElement.from_matrix([[0, 1j], [1, 0]])
    assert peirce2_membership(identity, a, tol)
    product = peirce2_product(a, b, identity, tol)
    np.testing.assert_allclose(product.parts[0], a.parts[0] @ b.parts[0])


def test_peirce2_product_membership(m2, tol):
    e11 = m2.unit(1, 1, 1)
    with pytest.raises(PeirceMembershipError):
        peirce2_product(m2.unit(1, 1, 2), e11, e11, tol)
