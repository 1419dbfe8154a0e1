"""Ternary rings of operators
==========================

.. autosummary::
   :toctree:

   closure
   units
   blocks
   antiautomorphism

"""
from .antiautomorphism import AntiAutomorphism, word_antiautomorphism
from .blocks import BlockDecomposition, decompose_blocks
from .closure import ClosureResult, closure_defect, evaluate_word, tro_closure
from .units import (
    MatrixUnitSystem,
    extract_matrix_units_hermitian,
    extract_matrix_units_symplectic,
    verify_matrix_units,
)

__all__ = [
    "AntiAutomorphism",
    "BlockDecomposition",
    "ClosureResult",
    "MatrixUnitSystem",
    "closure_defect",
    "decompose_blocks",
    "evaluate_word",
    "extract_matrix_units_hermitian",
    "extract_matrix_units_symplectic",
    "tro_closure",
    "verify_matrix_units",
    "word_antiautomorphism",
]
