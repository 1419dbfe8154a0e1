"""Rectangular factors (type I)
=============================

For ``n, m >= 2`` the grid ``ê_ij = (E_ij, E_ji)`` of ``M_{n,m} ⊕ M_{m,n}``
realizes ``A -> (A, A^t)`` and its closure is the whole direct sum. With
``min(n, m) = 1`` the factor is a Hilbert space of rank one and the envelope
is the direct sum of the ``H^k_n``.

"""
import math

import numpy as np

from ..const import DEFAULT_SEED, rank1_envelope_dim
from ..errors import RankOneRoutingError
from ..grids import (
    Grid,
    Rectangular,
    build_Hkn_basis,
    build_rank_one_grid,
    verify_grid,
)
from ..log import logger
from ..matrix import BlockElement, BlockShape, ToleranceConfig, span_basis, subspace_equal
from ..tro import tro_closure
from .base import CartanSpec, build_report


def realized_rectangular_grid(n, m):
    """Rectangular grid ``ê_ij = (E_ij, E_ji)`` in the shape ``[(n, m), (m, n)]``."""
    shape = BlockShape(((n, m), (m, n)))
    elements = {
        (i, j): shape.unit(1, i, j) + shape.unit(2, j, i)
        for i in range(1, n + 1)
        for j in range(1, m + 1)
    }
    return Grid(Rectangular(n, m), elements)


def support_projection(grid):
    """``p = sum_i prod_j ê_ij ê_ij*`` in the left algebra."""
    kind = grid.kind
    p = None
    for i in range(1, kind.n + 1):
        term = None
        for j in range(1, kind.m + 1):
            e = grid[(i, j)]
            factor = e.dot(e.adjoint())
            term = factor if term is None else term.dot(factor)
        p = term if p is None else p + term
    return p


def projection_checks(grid, space, tol=None):
    """Verdicts on the projection ``p`` splitting the realized grid.

    ``p`` is a self-adjoint idempotent with ``p ê_ij != 0``; ``p ê`` and
    ``(1 - p) ê`` are rectangular grids, orthogonal to each other, which
    together span ``space``.

    """
    tol = tol or ToleranceConfig()
    p = support_projection(grid)
    scale = max(1.0, p.norm())
    complement = p.shape.identity() - p
    elements = grid.canonical_elements()
    left = Grid(grid.kind, {label: p.dot(grid[label]) for label in grid.labels})
    right = Grid(grid.kind, {label: complement.dot(grid[label]) for label in grid.labels})

    orthogonal = all(
        x.dot(y.adjoint()).norm() < tol.eq_tol and x.adjoint().dot(y).norm() < tol.eq_tol
        for x in left.canonical_elements()
        for y in right.canonical_elements()
    )
    joint = span_basis(left.canonical_elements() + right.canonical_elements(), tol)
    return {
        "p_idempotent": p.dot(p).distance(p) < tol.eq_tol * scale,
        "p_selfadjoint": p.adjoint().distance(p) < tol.eq_tol * scale,
        "p_nonzero": all(p.dot(e).norm() > tol.eq_tol for e in elements),
        "p_grids": verify_grid(left, tol).passed and verify_grid(right, tol).passed,
        "p_orthogonal": orthogonal,
        "p_span": subspace_equal(joint, space, tol),
    }


def envelope_type1(n, m, tol=None, seed=DEFAULT_SEED, max_word_length=None):
    """The enveloping TRO of ``M_{n,m}`` (rank >= 2) is ``M_{n,m} ⊕ M_{m,n}``.

    Raises
    ------
    RankOneRoutingError
        If ``min(n, m) = 1``: use :func:`envelope_rank1`.

    """
    if min(n, m) < 2:
        raise RankOneRoutingError(
            f"M_({n},{m}) has rank one: use envelope_rank1({max(n, m)})"
        )
    tol = tol or ToleranceConfig()
    grid = realized_rectangular_grid(n, m)
    report = build_report(
        CartanSpec.type1(n, m),
        grid.canonical_elements(),
        [(n, m), (m, n)],
        2 * n * m,
        tol,
        seed,
        max_word_length,
        upper_bound=2 * n * m,
        grid=verify_grid(grid, tol).passed,
    )
    checks = projection_checks(grid, report.envelope.space, tol)
    checks["strictly_larger"] = report.envelope_dim > n * m
    return report.with_checks(**checks)


def rank1_blocks(n):
    """``(C(n, k), C(n, k-1))`` for ``k = 1..n``."""
    return [(math.comb(n, k), math.comb(n, k - 1)) for k in range(1, n + 1)]


def envelope_rank1(n, tol=None, seed=DEFAULT_SEED, max_word_length=None):
    """The enveloping TRO of the ``n`` dimensional Hilbert space is
    ``⊕_k M_{C(n,k), C(n,k-1)}``."""
    if n < 1:
        raise ValueError(f"n = {n} should be positive")
    tol = tol or ToleranceConfig()
    grid = build_rank_one_grid(n)
    expected_dim = rank1_envelope_dim(n)

    per_block = []
    for k in range(1, n + 1):
        gens = [BlockElement.from_matrix(b) for b in build_Hkn_basis(n, k)]
        dim = tro_closure(gens, tol, max_word_length).dim
        per_block.append(dim == math.comb(n, k) * math.comb(n, k - 1))
        logger.debug(f"H^{k}_{n}: closure dim {dim}")

    partial_isometries = all(
        np.allclose(b @ b.conj().T @ b, b)
        for k in range(1, n + 1)
        for b in build_Hkn_basis(n, k)
    )
    return build_report(
        CartanSpec.type1(1, n),
        grid.canonical_elements(),
        rank1_blocks(n),
        expected_dim,
        tol,
        seed,
        max_word_length,
        upper_bound=expected_dim,
        grid=verify_grid(grid, tol).passed,
        per_block_closure=all(per_block),
        partial_isometries=partial_isometries,
    )
