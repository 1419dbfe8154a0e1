import numpy as np
import pytest

from troforge.errors import EmptyGeneratorsError, ShapeMismatchError, WordCapError
from troforge.grids import build_standard_spin_system, build_symplectic_grid
from troforge.matrix import BlockElement, BlockShape, span_basis, subspace_equal
from troforge.tro import closure_defect, evaluate_word, tro_closure


def spin_generators(k):
    return [BlockElement.from_matrix(s) for s in build_standard_spin_system(k)]


@pytest.mark.parametrize(("k", "dim"), [(2, 4), (3, 8), (4, 16)])
def test_spin_closure(k, dim, tol):
    closure = tro_closure(spin_generators(k), tol)
    assert closure.dim == dim
    assert len(closure.words) == dim
    assert closure_defect(closure.space, tol) < 1e-9


def test_full_span_needs_no_round(tol):
    closure = tro_closure(BlockShape.single(2).matrix_units(), tol)
    assert closure.dim == 4
    assert closure.iterations == 0
    assert closure.word_length == 1


def test_single_tripotent(tol):
    shape = BlockShape.single(2)
    closure = tro_closure([shape.unit(1, 1, 1)], tol)
    assert closure.dim == 1
    assert closure.iterations == 1


def test_off_diagonal_pair(tol):
    shape = BlockShape.single(2)
    closure = tro_closure([shape.unit(1, 1, 2), shape.unit(1, 2, 1)], tol)
    assert closure.dim == 2


def test_symplectic_closure(tol):
    grid = build_symplectic_grid(5)
    closure = tro_closure(grid.canonical_elements(), tol)
    assert closure.dim == 25


def test_words_span_the_closure(tol):
    gens = spin_generators(3)
    closure = tro_closure(gens, tol)
    assert all(len(word) % 2 == 1 for word in closure.words)
    words = span_basis([evaluate_word(gens, word) for word in closure.words], tol)
    assert words.dim == closure.dim


def test_evaluate_word():
    a = BlockElement.from_matrix([[1, 2], [0, 1j]])
    b = BlockElement.from_matrix([[0, 1], [1, 0]])
    value = evaluate_word([a, b], (0, 1, 0))
    np.testing.assert_allclose(
        value.parts[0], a.parts[0] @ b.parts[0].conj().T @ a.parts[0]
    )


def test_word_cap(tol):
    with pytest.raises(WordCapError):
        tro_closure(spin_generators(3), tol, max_word_length=1)
    assert tro_closure(spin_generators(3), tol, max_word_length=3).dim == 8


def test_closure_errors(tol):
    with pytest.raises(EmptyGeneratorsError):
        tro_closure([], tol)
    with pytest.raises(ShapeMismatchError):
        tro_closure(
            [BlockShape.single(2).unit(1, 1, 1), BlockShape.single(3).unit(1, 1, 1)],
            tol,
        )


def test_closure_defect_detects_non_subtriple(tol):
    shape = BlockShape.single(2)
    space = span_basis([shape.unit(1, 1, 1), shape.unit(1, 1, 2) + shape.unit(1, 2, 1)])
    assert closure_defect(space, tol) == pytest.approx(0.5)


def test_closure_to_dict(tol):
    report = tro_closure(spin_generators(2), tol).to_dict()
    assert report["dim"] == 4
    assert report["ambient"] == [[2, 2]]
    assert report["generator_count"] == 3
    assert set(report) == {"dim", "ambient", "iterations", "generator_count", "word_length"}


@pytest.mark.parametrize("seed", [0, 1, 42])
def test_closure_generator_order(factor_grid, seed, tol):
    gens = factor_grid.canonical_elements()
    reference = tro_closure(gens, tol)
    rng = np.random.default_rng(seed)
    for _ in range(20):
        shuffled = [gens[i] for i in rng.permutation(len(gens))]
        closure = tro_closure(shuffled, tol)
        assert closure.dim == reference.dim
        assert subspace_equal(closure.space, reference.space, tol)


def test_closure_recombined_generators(tol):
    gens = spin_generators(3)
    reference = tro_closure(gens, tol)
    rng = np.random.default_rng(3)
    # an invertible upper triangular recombination spans the same space
    coefficients = np.triu(rng.uniform(1.0, 2.0, (len(gens), len(gens))))
    recombined = []
    for row in coefficients:
        element = gens[0] * float(row[0])
        for c, g in zip(row[1:], gens[1:]):
            element = element + g * float(c)
        recombined.append(element)
    assert tro_closure(recombined, tol).dim == reference.dim
