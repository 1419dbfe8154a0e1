"""Spin grids and spin systems
============================

Labels: ``(j, 0)`` is ``u_j``, ``(j, 1)`` is ``ũ_j`` for ``j = 1..pairs`` and
``(0, 0)`` is the odd center ``u_0``.

.. autosummary::

   Spin
   build_standard_spin_system
   build_spin_grid
   spin_grid_to_spin_system
   spin_system_defects
   tensor_slot_generators

"""
import itertools
import math
from dataclasses import dataclass

import numpy as np

from ..const import PAULI, SIGMA1, SIGMA2, SIGMA3
from ..errors import InvalidGridError
from ..log import logger
from ..matrix import BlockElement, as_complex_matrix, kron_all, ternary
from .base import Grid, GridKind, verify_grid

CENTER = (0, 0)


def _partner(label):
    return (label[0], 1 - label[1])


def _spin_rule(a, b, c):
    if a == b != c:
        if a == CENTER:
            return ("SPG7" if c[1] == 0 else "SPG8"), {c: 1.0}
        if c == CENTER:
            return ("SPG7" if a[1] == 0 else "SPG8"), {CENTER: 0.5}
        if a[0] != c[0]:
            axiom = {(0, 0): "SPG2", (1, 1): "SPG3"}.get((a[1], c[1]), "SPG1")
            return axiom, {c: 0.5}
        return None
    if a == c == CENTER and b != CENTER:
        return "SPG9", {_partner(b): -1.0}
    if b == CENTER and a != CENTER and c == _partner(a):
        # implied by SPG9 and the Jordan identity
        return "SPG9", {CENTER: -0.5}
    if CENTER in (a, b, c):
        return None

    (i, ta), (j, tb), (l, tc) = a, b, c
    if l != i or j == i or tc != 1 or ta != 0:
        return None
    if tb == 0:
        # {u_i, u_j, ũ_i} = -ũ_j / 2
        return "SPG4", {(j, 1): -0.5}
    # {u_i, ũ_j, ũ_i} = -u_j / 2
    return "SPG5", {(j, 0): -0.5}


@dataclass(frozen=True)
class Spin(GridKind):
    """Spin grid with ``pairs`` pairs ``(u_j, ũ_j)`` and optionally ``u_0``."""

    pairs: int
    has_odd_center: bool = False
    name = "spin"

    def __post_init__(self):
        if self.pairs < 1:
            raise ValueError(f"A spin grid needs at least one pair (got {self.pairs})")

    def labels(self):
        labels = [(j, tilde) for j in range(1, self.pairs + 1) for tilde in (0, 1)]
        if self.has_odd_center:
            labels.append(CENTER)
        return labels

    def rule(self, x, y, z):
        for a, b, c in ((x, y, z), (z, y, x)):
            matched = _spin_rule(a, b, c)
            if matched:
                return matched
        return "SPG6", {}


def _spin_size(k):
    if k < 2:
        raise ValueError(f"Spin systems need k >= 2 (got {k})")
    return math.ceil(k / 2)


def build_standard_spin_system(k):
    """Standard spin system ``[id, s_1, ..., s_k]`` in ``M_{2^n}``, ``n = ceil(k/2)``.

    ``s_{2l+1} = σ3^{⊗l} ⊗ σ1 ⊗ id^{⊗(n-l-1)}`` and
    ``s_{2l+2} = σ3^{⊗l} ⊗ σ2 ⊗ id^{⊗(n-l-1)}``.

    """
    n = _spin_size(k)
    identity = np.eye(2, dtype=complex)
    system = [as_complex_matrix(np.eye(2**n))]
    for index in range(k):
        level, sigma = divmod(index, 2)
        factors = [SIGMA3] * level + [(SIGMA1, SIGMA2)[sigma]]
        factors += [identity] * (n - level - 1)
        system.append(kron_all(*factors))
    return system


def tensor_slot_generators(n, j):
    """``(a_j, b_j, c_j)``: ``σ1, σ2, σ3`` placed in the j-th of ``n`` tensor slots."""
    if not 1 <= j <= n:
        raise ValueError(f"Slot {j} out of range 1..{n}")
    identity = np.eye(2, dtype=complex)
    return tuple(
        kron_all(*([identity] * (j - 1) + [sigma] + [identity] * (n - j)))
        for sigma in PAULI
    )


def build_spin_grid(k):
    """Spin grid spanning the spin factor ``span{id, s_1, ..., s_k}``.

    With ``m = ceil(k/2)``, ``t_1 = s_1`` and for ``j >= 2`` the pair
    ``(s_{2j-2}, t_j = s_{2j-1})``::

        u_1 = -i (id + t_1) / 2        ũ_1 = -i (id - t_1) / 2
        u_j = (s_{2j-2} - i t_j) / 2   ũ_j = (s_{2j-2} + i t_j) / 2

    For even ``k`` the left over ``s_k`` is the center ``u_0``.

    """
    system = build_standard_spin_system(k)
    identity, s = system[0], system[1:]
    pairs = _spin_size(k)

    elements = {
        (1, 0): -0.5j * (identity + s[0]),
        (1, 1): -0.5j * (identity - s[0]),
    }
    for j in range(2, pairs + 1):
        real, imag = s[2 * j - 3], s[2 * j - 2]
        elements[(j, 0)] = 0.5 * (real - 1j * imag)
        elements[(j, 1)] = 0.5 * (real + 1j * imag)
    has_odd_center = k % 2 == 0
    if has_odd_center:
        elements[CENTER] = s[k - 1]

    elements = {
        label: BlockElement.from_matrix(matrix) for label, matrix in elements.items()
    }
    return Grid(Spin(pairs, has_odd_center), elements)


def spin_grid_to_spin_system(grid, tol=None):
    """Spin system carried by the Peirce 2 space of ``v = i (u_1 + ũ_1)``.

    Returns
    -------
    v: BlockElement
    system: list of BlockElement
        ``s_j = u_j + ũ_j`` for ``j != 1``, ``t_j = i (u_j - ũ_j)`` for all j,
        then ``v`` and ``u_0`` when present.

    Raises
    ------
    InvalidGridError
        If the grid is not a spin grid passing :func:`verify_grid`.

    """
    if not isinstance(grid.kind, Spin):
        raise InvalidGridError(f"Expected a spin grid, got {grid.kind}")
    report = verify_grid(grid, tol)
    if not report.passed:
        raise InvalidGridError(
            f"Spin grid fails verification: axioms {report.violated_axioms}"
        )
    pairs = grid.kind.pairs
    v = 1j * (grid[(1, 0)] + grid[(1, 1)])
    symmetric = [grid[(j, 0)] + grid[(j, 1)] for j in range(2, pairs + 1)]
    twisted = [1j * (grid[(j, 0)] - grid[(j, 1)]) for j in range(1, pairs + 1)]
    system = symmetric + twisted + [v]
    if grid.kind.has_odd_center:
        system.append(grid[CENTER])
    logger.debug(f"spin system of {len(system)} elements from {grid.kind}")
    return v, system


def spin_system_defects(v, system):
    """Largest defects of the spin system relations in the Peirce 2 algebra of v.

    Returns ``(unitary, anticommutator)``: max of ``|x v* x - v|`` over the
    system and of ``|x v* y + y v* x|`` over pairs of distinct elements other
    than ``v``.

    """
    unitary = max(ternary(x, v, x).distance(v) for x in system)
    others = [x for x in system if x is not v]
    anticommutator = max(
        (
            (ternary(x, v, y) + ternary(y, v, x)).norm()
            for x, y in itertools.combinations(others, 2)
        ),
        default=0.0,
    )
    return unitary, anticommutator
