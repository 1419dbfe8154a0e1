import numpy as np
import pytest

from troforge.errors import GridFormatError, InvalidGridError
from troforge.grids import (
    TRIPOTENT,
    Grid,
    Spin,
    available_kinds,
    build_Hkn_basis,
    build_hermitian_grid,
    build_rank_one_grid,
    build_rectangular_grid,
    build_spin_grid,
    build_standard_spin_system,
    build_symplectic_grid,
    parse_label,
    spin_grid_to_spin_system,
    spin_system_defects,
    tensor_slot_generators,
    verify_grid,
)
from troforge.matrix import BlockElement


def test_available_kinds():
    assert available_kinds() == [
        "hermitian",
        "rank-one",
        "rectangular",
        "spin",
        "symplectic",
    ]


@pytest.mark.parametrize(
    "grid",
    [
        build_spin_grid(2),
        build_spin_grid(3),
        build_spin_grid(4),
        build_spin_grid(5),
        build_hermitian_grid(1),
        build_hermitian_grid(3),
        build_symplectic_grid(2),
        build_symplectic_grid(5),
        build_rectangular_grid(1, 1),
        build_rectangular_grid(2, 3),
        build_rank_one_grid(1),
        build_rank_one_grid(3),
    ],
    ids=str,
)
def test_standard_grids_pass(grid, tol):
    report = verify_grid(grid, tol)
    assert report.passed, report.violated_axioms
    assert report.max_residual < 1e-10
    # every ordered triple plus the tripotent checks
    assert report.checked >= len(grid) ** 3


def test_standard_spin_system():
    system = build_standard_spin_system(3)
    assert len(system) == 4
    assert system[0].shape == (4, 4)
    for s in system[1:]:
        np.testing.assert_allclose(s @ s, np.eye(4), atol=1e-12)
    for s, t in zip(system[1:], system[2:]):
        np.testing.assert_allclose(s @ t + t @ s, 0, atol=1e-12)


def test_spin_grid_labels():
    assert build_spin_grid(4).kind == Spin(pairs=2, has_odd_center=True)
    assert len(build_spin_grid(5)) == 6


def test_spin_grid_to_spin_system(tol):
    v, system = spin_grid_to_spin_system(build_spin_grid(5), tol)
    assert len(system) == 6
    unitary, anticommutator = spin_system_defects(v, system)
    assert unitary < 1e-10
    assert anticommutator < 1e-10


def test_spin_grid_to_spin_system_invalid(tol):
    grid = build_spin_grid(3)
    broken = grid.with_element((1, 0), 2 * grid[(1, 0)])
    with pytest.raises(InvalidGridError):
        spin_grid_to_spin_system(broken, tol)
    with pytest.raises(InvalidGridError):
        spin_grid_to_spin_system(build_hermitian_grid(2), tol)


def test_tensor_slot_generators():
    a, b, c = tensor_slot_generators(2, 2)
    assert a.shape == (4, 4)
    np.testing.assert_allclose(a @ b + b @ a, 0, atol=1e-12)
    with pytest.raises(ValueError):
        tensor_slot_generators(2, 3)


@pytest.mark.parametrize(("n", "k", "shape"), [(3, 1, (3, 1)), (3, 2, (3, 3)), (4, 2, (6, 4))])
def test_Hkn_basis(n, k, shape):
    basis = build_Hkn_basis(n, k)
    assert len(basis) == n
    for b in basis:
        assert b.shape == shape
        np.testing.assert_allclose(b @ b.conj().T @ b, b, atol=1e-12)


def test_mutation_scaled_tripotent(tol):
    grid = build_symplectic_grid(4)
    broken = grid.with_element((1, 2), 1.5 * grid[(1, 2)])
    report = verify_grid(broken, tol)
    assert not report.passed
    assert [v.index for v in report.violations_of(TRIPOTENT)] == [((1, 2),) * 3]


def test_mutation_alias_sign(tol):
    grid = build_symplectic_grid(3)
    broken = grid.with_element((2, 1), grid[(1, 2)])
    report = verify_grid(broken, tol)
    assert report.violated_axioms == ["SYG1"]

    grid = build_hermitian_grid(3)
    broken = grid.with_element((3, 1), -grid[(1, 3)])
    assert verify_grid(broken, tol).violated_axioms == ["HG1"]


def test_mutation_swapped_units(tol):
    grid = build_rectangular_grid(2, 2)
    broken = grid.with_element((1, 2), grid[(2, 1)])
    report = verify_grid(broken, tol)
    assert not report.passed
    assert not report.violations_of(TRIPOTENT)


def test_mutation_spin_center(tol):
    grid = build_spin_grid(4)
    broken = grid.with_element((0, 0), -1j * grid[(0, 0)])
    report = verify_grid(broken, tol)
    assert not report.passed
    assert "SPG9" in report.violated_axioms


def test_report_to_dict(tol):
    grid = build_symplectic_grid(3)
    broken = grid.with_element((1, 3), 2 * grid[(1, 3)])
    report = verify_grid(broken, tol).to_dict()
    assert report["kind"] == "symplectic(n=3)"
    assert report["passed"] is False
    assert report["violations"][0]["axiom"]
    assert all(isinstance(v["index"], list) for v in report["violations"])


def test_grid_json(tol):
    grid = build_hermitian_grid(2)
    obj = grid.to_json()
    assert set(obj["elements"]) == {"1,1", "1,2", "2,1", "2,2"}
    again = Grid.from_json(obj)
    assert again.kind == grid.kind
    assert verify_grid(again, tol).passed


@pytest.mark.parametrize(
    "obj",
    [
        {"kind": "hermitian", "params": {"n": 2}, "elements": {}},
        {"kind": "octonion", "params": {}, "elements": {"1": {}}},
        {"kind": "hermitian", "params": {"n": 0}, "elements": {"1,1": {}}},
        {"params": {"n": 2}},
        [],
        {"kind": "rectangular", "params": {"n": 2, "m": 2}, "elements": [1]},
        {"kind": "rectangular", "params": {"n": 2, "m": 2}, "elements": {"1,1": 1}},
        {"kind": "rectangular", "params": {"n": 2, "m": 2}, "elements": {"1,1": {"blocks": 5}}},
    ],
)
def test_grid_json_malformed(obj):
    with pytest.raises(GridFormatError):
        Grid.from_json(obj)


def test_grid_missing_label():
    grid = build_rectangular_grid(2, 2)
    obj = grid.to_json()
    del obj["elements"]["2,2"]
    with pytest.raises(GridFormatError):
        Grid.from_json(obj)


def test_grid_mixed_shapes():
    grid = build_rank_one_grid(2)
    elements = dict(grid.elements)
    elements[(2,)] = BlockElement.from_matrix(np.eye(2))
    with pytest.raises(GridFormatError):
        Grid(grid.kind, elements)


def test_parse_label():
    assert parse_label("1,2") == (1, 2)
    with pytest.raises(GridFormatError):
        parse_label("a,b")
