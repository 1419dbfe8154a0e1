"""Symmetric matrices (type III)
=============================

"""
from ..const import DEFAULT_SEED
from ..grids import build_hermitian_grid, verify_grid
from ..matrix import ToleranceConfig
from ..tro import extract_matrix_units_hermitian, verify_matrix_units
from .base import CartanSpec, build_report


def envelope_type3(n, tol=None, seed=DEFAULT_SEED, max_word_length=None):
    """The enveloping TRO of the symmetric ``n x n`` matrices is ``M_n``."""
    if n < 2:
        raise ValueError(f"Type III factors need n >= 2 (got {n})")
    tol = tol or ToleranceConfig()
    grid = build_hermitian_grid(n)
    units = extract_matrix_units_hermitian(grid, tol)
    return build_report(
        CartanSpec.type3(n),
        grid.canonical_elements(),
        [(n, n)],
        n * n,
        tol,
        seed,
        max_word_length,
        upper_bound=n * n,
        grid=verify_grid(grid, tol).passed,
        matrix_units=verify_matrix_units(units, tol).passed,
    )
