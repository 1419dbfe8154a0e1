"""Grids
=====

Families of tripotents obeying one of the five grid axiom systems, their
standard realizations and an exhaustive verifier.

.. autosummary::
   :toctree:

   base
   spin
   hermitian
   symplectic
   rectangular

"""
from .base import (
    TRIPOTENT,
    AxiomReport,
    Grid,
    GridKind,
    Violation,
    available_kinds,
    format_label,
    parse_label,
    verify_grid,
)
from .hermitian import Hermitian, build_hermitian_grid
from .rectangular import (
    RankOne,
    Rectangular,
    build_Hkn_basis,
    build_rank_one_grid,
    build_rectangular_grid,
)
from .spin import (
    Spin,
    build_spin_grid,
    build_standard_spin_system,
    spin_grid_to_spin_system,
    spin_system_defects,
    tensor_slot_generators,
)
from .symplectic import Symplectic, build_symplectic_grid

__all__ = [
    "TRIPOTENT",
    "AxiomReport",
    "Grid",
    "GridKind",
    "Hermitian",
    "RankOne",
    "Rectangular",
    "Spin",
    "Symplectic",
    "Violation",
    "available_kinds",
    "build_Hkn_basis",
    "build_hermitian_grid",
    "build_rank_one_grid",
    "build_rectangular_grid",
    "build_spin_grid",
    "build_standard_spin_system",
    "build_symplectic_grid",
    "format_label",
    "parse_label",
    "spin_grid_to_spin_system",
    "spin_system_defects",
    "tensor_slot_generators",
    "verify_grid",
]
