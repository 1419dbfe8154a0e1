import pytest

from troforge.errors import InvalidGridError
from troforge.grids import build_hermitian_grid, build_symplectic_grid
from troforge.matrix import BlockShape
from troforge.tro import (
    MatrixUnitSystem,
    extract_matrix_units_hermitian,
    extract_matrix_units_symplectic,
    verify_matrix_units,
)


def units_of(shape):
    return {
        (alpha, i, j): shape.unit(alpha, i, j)
        for alpha, (n, m) in enumerate(shape, start=1)
        for i in range(1, n + 1)
        for j in range(1, m + 1)
    }


def test_standard_units(tol):
    shape = BlockShape(((2, 3), (1, 1)))
    system = MatrixUnitSystem(units_of(shape), shape.blocks)
    assert system.dim == 7
    assert system.block(1).shape == (2, 3)
    report = verify_matrix_units(system, tol)
    assert report.passed
    assert report.kind == "matrix-units"


def test_swapped_units(tol):
    shape = BlockShape.single(2)
    units = units_of(shape)
    units[(1, 1, 2)], units[(1, 2, 1)] = units[(1, 2, 1)], units[(1, 1, 2)]
    report = verify_matrix_units(MatrixUnitSystem(units, shape.blocks), tol)
    assert not report.passed
    assert "MU1" in report.violated_axioms


def test_dependent_units(tol):
    shape = BlockShape.single(2)
    units = units_of(shape)
    units[(1, 2, 2)] = units[(1, 1, 1)]
    report = verify_matrix_units(MatrixUnitSystem(units, shape.blocks), tol)
    assert "MU3" in report.violated_axioms


def test_unit_labels():
    shape = BlockShape.single(2)
    units = units_of(shape)
    del units[(1, 2, 2)]
    with pytest.raises(ValueError):
        MatrixUnitSystem(units, shape.blocks)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_hermitian_units(n, tol):
    system = extract_matrix_units_hermitian(build_hermitian_grid(n), tol)
    assert system.block_dims == ((n, n),)
    assert verify_matrix_units(system, tol).passed


@pytest.mark.parametrize("n", [5, 6])
def test_symplectic_units(n, tol):
    system = extract_matrix_units_symplectic(build_symplectic_grid(n), tol)
    assert system.block_dims == ((n, n),)
    assert verify_matrix_units(system, tol).passed
    assert system.extras["reflection_residual"] < 1e-10
    assert system.extras["product_residual"] < 1e-10


def test_symplectic_units_small(tol):
    with pytest.raises(ValueError):
        extract_matrix_units_symplectic(build_symplectic_grid(4), tol)


def test_units_require_valid_grid(tol):
    with pytest.raises(InvalidGridError):
        extract_matrix_units_hermitian(build_symplectic_grid(5), tol)
    grid = build_hermitian_grid(3)
    broken = grid.with_element((1, 2), 2 * grid[(1, 2)])
    with pytest.raises(InvalidGridError):
        extract_matrix_units_hermitian(broken, tol)
