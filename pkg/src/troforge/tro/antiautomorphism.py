"""Word reversal
==============

On the universal enveloping TRO of a triple, reversing the words
``g_{i1} g_{i2}* ... g_{iL}`` extends to a linear antiautomorphism of order 2
fixing the generators. On any other realization (a proper quotient) the
reversal may fail to be well defined; :func:`word_antiautomorphism` measures
that failure on the words rejected during the closure.

"""
from dataclasses import dataclass

import numpy as np
from scipy import linalg

from ..const import DEFAULT_SEED
from ..errors import NotUniversalError
from ..log import logger
from ..matrix import ToleranceConfig, stack_elements, ternary
from .closure import evaluate_word

#: Random basis triples checked for anti-multiplicativity
ANTIMULTIPLICATIVE_SAMPLES = 100


@dataclass(frozen=True, eq=False)
class AntiAutomorphism:
    """Linear map ``θ`` of ``domain``; ``matrix`` acts on coordinate columns."""

    domain: object
    matrix: np.ndarray
    residual: float
    generator_defect: float = 0.0
    involution_defect: float = 0.0
    antimultiplicative_defect: float = 0.0

    def __call__(self, x):
        return self.domain.element(self.matrix @ self.domain.coordinates(x))

    def to_dict(self):
        return {
            "dim": self.domain.dim,
            "residual": self.residual,
            "generator_defect": self.generator_defect,
            "involution_defect": self.involution_defect,
            "antimultiplicative_defect": self.antimultiplicative_defect,
        }


def _word_vectors(gens, words):
    if not words:
        return np.empty((0, gens[0].shape.size), dtype=complex)
    return stack_elements([evaluate_word(gens, word) for word in words])


def word_antiautomorphism(gens, closure, tol=None, seed=DEFAULT_SEED):
    """Linear extension of the word reversal on ``closure = tro_closure(gens)``.

    The source words ``w_k`` of the closure basis have lower triangular
    coordinates ``C``; with ``R`` the coordinates of the reversed words, the
    map is ``C^{-1} R`` (transposed to act on columns).

    Raises
    ------
    NotUniversalError
        If some rejected word ``w``, a combination of the source words, does
        not reverse to the same combination of reversed words.

    """
    tol = tol or ToleranceConfig()
    gens = list(gens)
    space = closure.space
    words = list(closure.words)

    coords = space.coordinates_stack(_word_vectors(gens, words))
    reversed_words = [word[::-1] for word in words]
    images = space.coordinates_stack(_word_vectors(gens, reversed_words))
    theta = linalg.solve_triangular(coords, images, lower=True)
    matrix = theta.T

    residual = 0.0
    checked = list(closure.rejected_words) + [(index,) for index in range(len(gens))]
    if checked:
        vectors = _word_vectors(gens, checked)
        targets = _word_vectors(gens, [word[::-1] for word in checked])
        predicted = space.coordinates_stack(vectors) @ matrix.T
        # reversed words leaving the span count as a defect too
        errors = np.linalg.norm(predicted @ space.vectors - targets, axis=1)
        scales = np.maximum(1.0, np.linalg.norm(targets, axis=1))
        residual = float(np.max(errors / scales))

    if residual > tol.eq_tol:
        raise NotUniversalError(
            f"Word reversal is not well defined on this realization "
            f"(residual {residual:.3g}): not the universal envelope",
            residual,
        )

    gen_coords = space.coordinates_stack(stack_elements(gens))
    generator_defect = float(np.max(np.abs(gen_coords @ matrix.T - gen_coords)))
    involution_defect = float(np.max(np.abs(matrix @ matrix - np.eye(space.dim))))

    result = AntiAutomorphism(space, matrix, residual, generator_defect, involution_defect)
    rng = np.random.default_rng(seed)
    basis = space.basis
    defect = 0.0
    for i, j, k in rng.integers(0, space.dim, size=(ANTIMULTIPLICATIVE_SAMPLES, 3)):
        lhs = result(ternary(basis[i], basis[j], basis[k]))
        rhs = ternary(result(basis[k]), result(basis[j]), result(basis[i]))
        defect = max(defect, lhs.distance(rhs))
    result = AntiAutomorphism(
        space, matrix, residual, generator_defect, involution_defect, defect
    )
    logger.debug(
        f"word reversal: residual {residual:.2e}, θ² - id {involution_defect:.2e}, "
        f"anti-multiplicativity {defect:.2e}"
    )
    return result
