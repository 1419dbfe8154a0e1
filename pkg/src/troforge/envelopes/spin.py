"""Spin factors (type IV)
======================

The spin factor of dimension ``k + 1`` is realized as the span of the standard
spin system in ``M_{2^n}``, ``n = ceil(k/2)``. Its enveloping TRO has dimension
``2^k``: ``M_{2^n}`` for ``k = 2n`` and ``M_{2^(n-1)} ⊕ M_{2^(n-1)}`` for
``k = 2n - 1``.

For spin factors the enveloping TRO is also the universal enveloping
C*-algebra; nothing else of the latter is computed here.

"""
import math

from ..const import DEFAULT_SEED
from ..grids import build_spin_grid, build_standard_spin_system, verify_grid
from ..grids.spin import tensor_slot_generators
from ..matrix import BlockElement, ToleranceConfig, contains
from .base import CartanSpec, build_report


def expected_spin_blocks(k):
    n = math.ceil(k / 2)
    if k % 2 == 0:
        return [(2**n, 2**n)]
    half = 2 ** (n - 1)
    return [(half, half), (half, half)]


def tensor_slot_membership(k, space, tol=None):
    """Which of the slot generators ``(a_j, b_j, c_j)`` lie in ``space``.

    Returns a dict mapping ``(j, name)`` to a boolean.

    """
    n = math.ceil(k / 2)
    membership = {}
    for j in range(1, n + 1):
        for name, matrix in zip("abc", tensor_slot_generators(n, j)):
            membership[(j, name)] = contains(space, BlockElement.from_matrix(matrix), tol)
    return membership


def envelope_spin(k, tol=None, seed=DEFAULT_SEED, max_word_length=None):
    """Enveloping TRO of the spin factor of dimension ``k + 1``."""
    if k < 2:
        raise ValueError(f"Spin factors need k >= 2 (got {k})")
    tol = tol or ToleranceConfig()
    gens = [BlockElement.from_matrix(s) for s in build_standard_spin_system(k)]
    grid_report = verify_grid(build_spin_grid(k), tol)

    report = build_report(
        CartanSpec.type4(k + 1),
        gens,
        expected_spin_blocks(k),
        2**k,
        tol,
        seed,
        max_word_length,
        upper_bound=2**k,
        grid=grid_report.passed,
    )

    # slots j < n are always in; the last slot only has a_n when k is odd
    n = math.ceil(k / 2)
    membership = tensor_slot_membership(k, report.envelope.space, tol)
    expected = {(j, name): j < n or k % 2 == 0 or name == "a" for j, name in membership}
    return report.with_checks(tensor_slots=membership == expected)
