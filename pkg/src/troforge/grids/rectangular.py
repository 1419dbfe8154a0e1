"""Rectangular and rank one grids
===============================

.. autosummary::

   Rectangular
   RankOne
   build_rectangular_grid
   build_Hkn_basis
   build_rank_one_grid

"""
import itertools
import math
from dataclasses import dataclass

import numpy as np

from ..matrix import BlockElement, BlockShape, as_complex_matrix, matrix_unit
from .base import Grid, GridKind


def _rectangular_same(p, q):
    """Axiom for ``{u_p, u_p, u_q}`` with ``p != q``."""
    if p[0] != q[0] and p[1] != q[1]:
        return "RG1", {}
    return "RG2", {q: 0.5}


@dataclass(frozen=True)
class Rectangular(GridKind):
    n: int
    m: int
    name = "rectangular"

    def __post_init__(self):
        if self.n < 1 or self.m < 1:
            raise ValueError(f"Grid dimensions ({self.n}, {self.m}) should be positive")

    def labels(self):
        return list(itertools.product(range(1, self.n + 1), range(1, self.m + 1)))

    def rule(self, x, y, z):
        if x == y:
            return _rectangular_same(x, z)
        if z == y:
            return _rectangular_same(z, x)
        for a, b, c in ((x, y, z), (z, y, x)):
            # {u_jk, u_jl, u_il} = u_ik / 2 for j != i, k != l
            (j, k), (j2, l), (i, l2) = a, b, c
            if j == j2 and l == l2 and i != j and k != l:
                return "RG3", {(i, k): 0.5}
        return "RG4", {}


@dataclass(frozen=True)
class RankOne(GridKind):
    n: int
    name = "rank-one"

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n = {self.n} should be positive")

    def labels(self):
        return [(i,) for i in range(1, self.n + 1)]

    def rule(self, x, y, z):
        if x == y:
            return "RG'2", {z: 0.5}
        if z == y:
            return "RG'2", {x: 0.5}
        if x == z:
            return "RG'1", {}
        return "RG'3", {}


def build_rectangular_grid(n, m):
    """Matrix units ``u_ij = E_ij`` of ``M_{n,m}``."""
    kind = Rectangular(n, m)
    elements = {
        (i, j): BlockElement.from_matrix(matrix_unit(i, j, n, m))
        for i, j in kind.labels()
    }
    return Grid(kind, elements)


def _signature(sequence):
    """Signature of the permutation sorting ``sequence``."""
    inversions = sum(
        1 for a, b in itertools.combinations(sequence, 2) if a > b
    )
    return -1 if inversions % 2 else 1


def build_Hkn_basis(n, k):
    """Basis ``b_1, ..., b_n`` of the rank one factor ``H^k_n``.

    Matrices of shape ``(C(n, k), C(n, k-1))``: rows are indexed by the
    ``(n-k)``-subsets J and columns by the ``(k-1)``-subsets I of ``{1..n}``,
    both in lexicographic order. The entry ``(J, I)`` of ``b_i`` is the
    signature of ``(I, i, J)`` when ``I``, ``{i}`` and ``J`` partition
    ``{1..n}``.

    """
    if not 1 <= k <= n:
        raise ValueError(f"k = {k} should be in 1..{n}")
    indices = range(1, n + 1)
    rows = list(itertools.combinations(indices, n - k))
    cols = list(itertools.combinations(indices, k - 1))
    assert len(rows) == math.comb(n, k) and len(cols) == math.comb(n, k - 1)
    row_position = {subset: index for index, subset in enumerate(rows)}

    basis = []
    for i in indices:
        matrix = np.zeros((len(rows), len(cols)), dtype=complex)
        for col, subset_i in enumerate(cols):
            if i in subset_i:
                continue
            subset_j = tuple(x for x in indices if x != i and x not in subset_i)
            matrix[row_position[subset_j], col] = _signature(subset_i + (i,) + subset_j)
        basis.append(as_complex_matrix(matrix))
    return basis


def build_rank_one_grid(n, levels=None):
    """Rank one grid ``u_i = (b^{n,k}_i)_k`` in the direct sum of the ``H^k_n``.

    Parameters
    ----------
    levels: iterable of int, optional
        The values of k to include (default ``1..n``).

    """
    levels = list(range(1, n + 1)) if levels is None else list(levels)
    bases = [build_Hkn_basis(n, k) for k in levels]
    shape = BlockShape(tuple(basis[0].shape for basis in bases))
    elements = {
        (i,): BlockElement(shape, [basis[i - 1] for basis in bases])
        for i in range(1, n + 1)
    }
    return Grid(RankOne(n), elements)
