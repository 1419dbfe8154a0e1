"""Hermitian grids
================

Canonical labels ``(i, j)`` with ``i <= j``; ``(j, i)`` is an alias of
``(i, j)`` (HG1).

"""
from dataclasses import dataclass

from ..matrix import BlockElement, matrix_unit
from .base import Grid, GridKind


def _orientations(label):
    i, j = label
    return ((i, j),) if i == j else ((i, j), (j, i))


def _sorted(i, j):
    return (i, j) if i <= j else (j, i)


def _hermitian_same(p, q):
    """Axiom for ``{u_p, u_p, u_q}`` with ``p != q``."""
    if not set(p) & set(q):
        return "HG2", {}
    if p[0] == p[1]:
        return "HG3", {q: 0.5}
    if q[0] == q[1]:
        return "HG3", {q: 1.0}
    return "HG4", {q: 0.5}


@dataclass(frozen=True)
class Hermitian(GridKind):
    n: int
    name = "hermitian"

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n = {self.n} should be positive")

    def labels(self):
        return [(i, j) for i in range(1, self.n + 1) for j in range(i, self.n + 1)]

    def aliases(self):
        return [("HG1", (j, i), (i, j), 1) for i, j in self.labels() if i < j]

    def rule(self, x, y, z):
        if x == y:
            return _hermitian_same(x, z)
        if z == y:
            return _hermitian_same(z, x)
        for a, b, c in ((x, y, z), (z, y, x)):
            for i, j in _orientations(a):
                for j2, k in _orientations(b):
                    if j2 != j:
                        continue
                    for k2, l in _orientations(c):
                        if k2 != k:
                            continue
                        if i != l:
                            return "HG5", {_sorted(i, l): 0.5}
                        return "HG6", {(i, i): 1.0}
        return "HG7", {}


def build_hermitian_grid(n):
    """``u_ii = E_ii`` and ``u_ij = u_ji = E_ij + E_ji`` in ``M_n``."""
    kind = Hermitian(n)
    elements = {}
    for i, j in kind.labels():
        unit = matrix_unit(i, j, n)
        element = BlockElement.from_matrix(unit if i == j else unit + unit.T)
        elements[(i, j)] = element
        if i != j:
            elements[(j, i)] = element
    return Grid(kind, elements)
