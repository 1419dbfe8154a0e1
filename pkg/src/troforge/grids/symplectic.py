"""Symplectic grids
=================

Canonical labels ``(i, j)`` with ``i < j``; ``(j, i)`` is an alias of
``-(i, j)`` (SYG1).

"""
from dataclasses import dataclass

from ..matrix import BlockElement, matrix_unit
from .base import Grid, GridKind


def _oriented(label):
    i, j = label
    return (((i, j), 1), ((j, i), -1))


def _canonical(i, j):
    return ((i, j), 1) if i < j else ((j, i), -1)


@dataclass(frozen=True)
class Symplectic(GridKind):
    n: int
    name = "symplectic"

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"n = {self.n} should be at least 2")

    def labels(self):
        return [(i, j) for i in range(1, self.n + 1) for j in range(i + 1, self.n + 1)]

    def aliases(self):
        return [("SYG1", (j, i), (i, j), -1) for i, j in self.labels()]

    def rule(self, x, y, z):
        if x == y:
            return ("SYG2", {z: 0.5}) if set(x) & set(z) else ("SYG3", {})
        if z == y:
            return ("SYG2", {x: 0.5}) if set(x) & set(z) else ("SYG3", {})
        for a, b, c in ((x, y, z), (z, y, x)):
            # {u_ij, u_il, u_kl} = u_kj / 2 for pairwise distinct i, j, k, l
            for (i, j), sign_a in _oriented(a):
                for (i2, l), sign_b in _oriented(b):
                    if i2 != i:
                        continue
                    for (k, l2), sign_c in _oriented(c):
                        if l2 != l or len({i, j, k, l}) != 4:
                            continue
                        label, sign = _canonical(k, j)
                        return "SYG4", {label: 0.5 * sign_a * sign_b * sign_c * sign}
        return "SYG5", {}


def build_symplectic_grid(n):
    """``u_ij = E_ij - E_ji`` in ``M_n``, with the aliases ``u_ji = -u_ij``."""
    kind = Symplectic(n)
    elements = {}
    for i, j in kind.labels():
        unit = matrix_unit(i, j, n)
        element = BlockElement.from_matrix(unit - unit.T)
        elements[(i, j)] = element
        elements[(j, i)] = -element
    return Grid(kind, elements)
