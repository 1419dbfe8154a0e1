"""Skew symmetric matrices (type II)
==================================

"""
from ..const import DEFAULT_SEED
from ..errors import ReassignedFactorError
from ..grids import build_symplectic_grid, verify_grid
from ..matrix import ToleranceConfig
from ..tro import extract_matrix_units_symplectic, verify_matrix_units
from .base import CartanSpec, build_report

_reassigned = {
    2: "the 1 dimensional skew matrices form the factor C (type I with n = m = 1)",
    3: "the 3 dimensional skew matrices form a rank one factor (type I with n = 1, m = 3)",
    4: "the 6 dimensional skew matrices form the spin factor of dimension 6 (type IV, dim 6)",
}


def envelope_type2(n, tol=None, seed=DEFAULT_SEED, max_word_length=None):
    """The enveloping TRO of the skew symmetric ``n x n`` matrices is ``M_n``.

    Raises
    ------
    ReassignedFactorError
        For ``n < 5``, whose factors belong to other families.

    """
    if n < 5:
        reason = _reassigned.get(n, "type II needs n >= 5")
        raise ReassignedFactorError(f"Type II with n = {n} is not handled here: {reason}")
    tol = tol or ToleranceConfig()
    grid = build_symplectic_grid(n)
    units = extract_matrix_units_symplectic(grid, tol)
    unit_report = verify_matrix_units(units, tol)
    relations = max(units.extras["reflection_residual"], units.extras["product_residual"])
    return build_report(
        CartanSpec.type2(n),
        grid.canonical_elements(),
        [(n, n)],
        n * n,
        tol,
        seed,
        max_word_length,
        upper_bound=n * n,
        grid=verify_grid(grid, tol).passed,
        matrix_units=unit_report.passed,
        unit_relations=relations < tol.eq_tol,
    )
