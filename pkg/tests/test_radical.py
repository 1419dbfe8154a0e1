import numpy as np
import pytest

from troforge.errors import HilbertBlockError, NotAbelianError, NotSubtripleError
from troforge.grids import build_standard_spin_system
from troforge.matrix import BlockElement, BlockShape, Subspace, matrix_unit, span_basis
from troforge.radical import (
    characters,
    exact_sequence_report,
    is_abelian,
    is_reversible,
    orthogonal_tripotent_basis,
    radical,
    tro_from_blocks,
)
from troforge.tro import tro_closure


@pytest.fixture
def diagonal_m2_c(tol):
    shape = BlockShape(((2, 2), (1, 1)))
    return span_basis(
        [shape.unit(1, 1, 1) + shape.unit(2, 1, 1), shape.unit(1, 2, 2)], tol
    )


def test_is_abelian(diagonal_m2_c, tol):
    assert is_abelian(diagonal_m2_c, tol)
    assert not is_abelian(Subspace.full(BlockShape.single(2)), tol)
    shape = BlockShape.single(2)
    assert is_abelian(span_basis([shape.unit(1, 1, 2)], tol), tol)


def test_is_abelian_not_subtriple(tol):
    shape = BlockShape.single(2)
    space = span_basis([shape.unit(1, 1, 1), shape.unit(1, 1, 2) + shape.unit(1, 2, 1)])
    with pytest.raises(NotSubtripleError):
        is_abelian(space, tol)


def test_orthogonal_tripotent_basis(diagonal_m2_c, tol):
    tripotents = orthogonal_tripotent_basis(diagonal_m2_c, tol)
    assert len(tripotents) == 2
    assert span_basis(tripotents, tol).dim == 2
    # one tripotent couples the two ambient blocks
    supports = sorted(
        tuple(bool(np.abs(part).max() > 1e-9) for part in e.parts) for e in tripotents
    )
    assert supports == [(True, False), (True, True)]


def test_orthogonal_tripotent_basis_not_abelian(tol, caplog):
    with pytest.raises(NotAbelianError):
        orthogonal_tripotent_basis(Subspace.full(BlockShape.single(2)), tol)
    assert "attempt 5" in caplog.text


def test_characters(diagonal_m2_c, tol):
    family = characters(diagonal_m2_c, tol)
    assert len(family) == 2
    for k, e in enumerate(family.tripotents):
        values = family(e)
        assert values[k] == pytest.approx(1.0)
        assert abs(values[1 - k]) < 1e-9
    assert family.torus_note


@pytest.mark.parametrize(
    ("blocks", "radical_dim", "abelian", "dims"),
    [
        ([[2, 2], [1, 1], [1, 1]], 4, 2, (8, 10, 2)),
        ([[2, 2], [3, 3]], 13, 0, (26, 26, 0)),
        ([[1, 1]], 0, 1, (0, 1, 1)),
        ([[2, 3], [1, 1]], 6, 1, (12, 13, 1)),
    ],
)
def test_exact_sequence(blocks, radical_dim, abelian, dims, tol):
    report = exact_sequence_report(tro_from_blocks(blocks, tol), tol)
    assert report.passed, report.checks
    assert report.radical_space.dim == radical_dim
    assert report.abelian_quotient_dim == abelian
    sequence = report.sequence
    assert (sequence.left, sequence.middle, sequence.right) == dims
    assert sequence.cross_checked_middle == dims[1]
    assert report.exact


def test_exact_sequence_without_cross_check(tol):
    report = exact_sequence_report(tro_from_blocks([[2, 2]], tol), tol, cross_check=False)
    assert report.sequence.cross_checked_middle is None
    assert report.exact


def test_hilbert_blocks(tol):
    with pytest.raises(HilbertBlockError):
        exact_sequence_report(tro_from_blocks([[2, 2], [1, 3]], tol), tol)


def test_radical_of_hidden_blocks(tol):
    gens = [
        BlockElement.from_matrix(matrix_unit(i, j, 3))
        for i, j in ((1, 1), (1, 2), (2, 1), (2, 2), (3, 3))
    ]
    report = radical(tro_closure(gens, tol), tol)
    assert report.tro_blocks == ((2, 2), (1, 1))
    assert report.radical_blocks == ((2, 2),)
    assert report.abelian_quotient_dim == 1
    assert all(report.checks.values())
    assert report.sequence is None


def test_radical_report_dict(tol):
    report = exact_sequence_report(tro_from_blocks([[2, 2], [1, 1]], tol), tol, seed=5)
    result = report.to_dict()
    assert result["blocks"] == [[2, 2], [1, 1]]
    assert result["radical_blocks"] == [[2, 2]]
    assert result["radical_dim"] == 4
    assert result["abelian_dim"] == 1
    assert result["seed"] == 5
    assert result["sequence"]["exact"] is True
    assert result["sequence"]["middle"] == 9


def test_is_reversible(tol):
    assert is_reversible(Subspace.full(BlockShape.single(2)), tol)
    spin = span_basis(
        [BlockElement.from_matrix(s) for s in build_standard_spin_system(4)], tol
    )
    assert is_reversible(spin, tol, max_length=3)
    assert not is_reversible(spin, tol, max_length=5)
