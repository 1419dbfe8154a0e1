import numpy as np
import pytest

from troforge.errors import EmptyGeneratorsError, ShapeMismatchError
from troforge.matrix import (
    BlockElement,
    BlockShape,
    Subspace,
    ToleranceConfig,
    contains,
    element_from_json,
    element_to_json,
    kron,
    matrix_from_json,
    matrix_unit,
    span_basis,
    subspace_equal,
    ternary,
)


def test_kron_index_convention():
    a = np.array([[1, 2], [3, 4]])
    b = np.array([[0, 5], [6, 7]])
    product = kron(a, b)
    assert product.shape == (4, 4)
    # entry ((i-1)*2 + p, (j-1)*2 + q) = a[i, j] b[p, q]
    assert product[1 * 2 + 1, 0 * 2 + 0] == a[1, 0] * b[1, 0]
    assert product[0 * 2 + 0, 1 * 2 + 1] == a[0, 1] * b[0, 1]


def test_matrices_are_frozen():
    unit = matrix_unit(1, 2, 2)
    with pytest.raises(ValueError):
        unit[0, 0] = 1


def test_non_finite_entries():
    with pytest.raises(ValueError):
        BlockElement.from_matrix([[np.nan, 0], [0, 1]])


@pytest.mark.parametrize(("rank_tol", "eq_tol"), [(0, 1e-7), (1e-9, 1.0), (-1, 1e-7)])
def test_tolerance_range(rank_tol, eq_tol):
    with pytest.raises(ValueError):
        ToleranceConfig(rank_tol, eq_tol)


def test_tolerance_thresholds():
    tol = ToleranceConfig(1e-9, 1e-7)
    assert tol.rank_threshold(0.5) == 1e-9
    assert tol.eq_threshold(100.0) == pytest.approx(1e-5)


def test_block_shape():
    shape = BlockShape(((2, 3), (1, 1)))
    assert shape.size == 7
    assert shape.offsets == (0, 6, 7)
    assert shape.adjoint().blocks == ((3, 2), (1, 1))
    assert shape.left().blocks == ((2, 2), (1, 1))
    assert shape.right().blocks == ((3, 3), (1, 1))
    assert len(shape.matrix_units()) == 7
    with pytest.raises(ShapeMismatchError):
        shape.identity()
    with pytest.raises(ValueError):
        BlockShape(())


def test_split_join_stack(random_element):
    shape = BlockShape(((2, 3), (1, 2)))
    elements = [random_element(shape) for _ in range(3)]
    stack = np.array([x.vector for x in elements])
    parts = shape.split_stack(stack)
    assert [part.shape for part in parts] == [(3, 2, 3), (3, 1, 2)]
    np.testing.assert_allclose(parts[0][1], elements[1].parts[0])
    np.testing.assert_allclose(shape.join_stack(parts), stack)


def test_ternary_blockwise(random_element, shape_m2_c):
    x, y, z = (random_element(shape_m2_c) for _ in range(3))
    result = ternary(x, y, z)
    for part, a, b, c in zip(result.parts, x.parts, y.parts, z.parts):
        np.testing.assert_allclose(part, a @ b.conj().T @ c)


def test_ternary_shape_mismatch(random_element):
    x = random_element(BlockShape.single(2))
    y = random_element(BlockShape.single(3))
    with pytest.raises(ShapeMismatchError):
        ternary(x, y, x)
    with pytest.raises(ShapeMismatchError):
        x + y


def test_trace_pairing(random_element, shape_m2_c):
    x, y = random_element(shape_m2_c), random_element(shape_m2_c)
    expected = sum(np.trace(b.conj().T @ a) for a, b in zip(x.parts, y.parts))
    assert x.inner(y) == pytest.approx(expected)
    assert x.norm() == pytest.approx(np.sqrt(x.inner(x).real))


def test_op_norm():
    x = BlockElement.from_parts(np.diag([3.0, 1.0]), np.array([[2.0]]))
    assert x.op_norm() == pytest.approx(3.0)


def test_span_basis(tol):
    units = BlockShape.single(2).matrix_units()
    space = span_basis(units + [units[0] + 2 * units[3]], tol)
    assert space.dim == 4
    np.testing.assert_allclose(space.vectors @ space.vectors.conj().T, np.eye(4), atol=1e-12)


def test_span_basis_empty():
    with pytest.raises(EmptyGeneratorsError):
        span_basis([])


def test_span_near_dependent(tol):
    e11, e12 = matrix_unit(1, 1, 2), matrix_unit(1, 2, 2)
    gens = [
        BlockElement.from_matrix(e11),
        BlockElement.from_matrix(e11 + 1e-12 * e12),
    ]
    assert span_basis(gens, tol).dim == 1


def test_contains_and_project(random_element, tol):
    shape = BlockShape.single(2)
    units = shape.matrix_units()
    diagonal = span_basis([units[0], units[3]], tol)
    assert contains(diagonal, 2 * units[0] - 1j * units[3], tol)
    assert not contains(diagonal, units[1], tol)
    x = random_element(shape)
    projection = diagonal.project(x)
    np.testing.assert_allclose(projection.parts[0], np.diag(np.diag(x.parts[0])))


def test_subspace_equal(tol):
    units = BlockShape.single(2).matrix_units()
    first = span_basis([units[0], units[1]], tol)
    second = span_basis([units[0] + units[1], units[0] - units[1]], tol)
    third = span_basis([units[0], units[2]], tol)
    assert subspace_equal(first, second, tol)
    assert not subspace_equal(first, third, tol)
    zero = Subspace.zero(first.ambient)
    assert zero.dim == 0
    assert subspace_equal(zero, Subspace.zero(first.ambient), tol)


def test_element_json(random_element, shape_m2_c):
    x = random_element(shape_m2_c)
    obj = element_to_json(x)
    assert [block["rows"] for block in obj["blocks"]] == [2, 1]
    assert element_from_json(obj).allclose(x)


@pytest.mark.parametrize(
    "obj",
    [
        {"rows": 2, "cols": 2, "data": [[1, 0]] * 3},
        {"rows": 1, "cols": 1, "data": [[1]]},
        {"cols": 1, "data": [[1, 0]]},
        {"rows": 0, "cols": 1, "data": []},
    ],
)
def test_malformed_matrix_json(obj):
    with pytest.raises(ValueError):
        matrix_from_json(obj)


def test_malformed_element_json():
    with pytest.raises(ValueError):
        element_from_json({"blocks": []})
    with pytest.raises(ValueError):
        element_from_json([1, 2])
