"""Envelopes of finite dimensional TROs
=====================================

A TRO ``T = ⊕ M_{n_α, m_α}`` is a direct sum of type I factors, so its
enveloping TRO is the direct sum of theirs:

- ``(n, m)`` with ``n, m >= 2``: ``M_{n,m} ⊕ M_{m,n}``,
- a Hilbert space block ``(1, m)`` or ``(n, 1)``: the rank one envelope,
- ``(1, 1)``: ``C``.

"""
import numpy as np

from ..const import CROSS_CHECK_MAX_DIM
from ..grids import build_Hkn_basis
from ..log import logger
from ..matrix import BlockElement, BlockShape, ToleranceConfig
from ..tro import tro_closure
from .rectangular import rank1_blocks


def _check_blocks(blocks):
    blocks = [(int(n), int(m)) for n, m in blocks]
    if not blocks or any(n < 1 or m < 1 for n, m in blocks):
        raise ValueError(f"Block dimensions should be positive: {blocks}")
    return blocks


def _targets(n, m):
    if n == m == 1:
        return [(1, 1)]
    if min(n, m) == 1:
        return rank1_blocks(max(n, m))
    return [(n, m), (m, n)]


def envelope_of_tro(blocks):
    """Expected blocks and dimension of the enveloping TRO of ``⊕ M_{n,m}``.

    Returns
    -------
    expected_blocks: list of (int, int)
    dim: int

    """
    expected = []
    for n, m in _check_blocks(blocks):
        expected.extend(_targets(n, m))
    return expected, sum(n * m for n, m in expected)


def realize_envelope_of_tro(blocks):
    """Images of the matrix units of ``⊕ M_{n,m}`` under the universal embedding.

    Returns the generators (block elements in the shape of the expected
    envelope blocks), one per matrix unit, block after block.

    """
    blocks = _check_blocks(blocks)
    targets = [_targets(n, m) for n, m in blocks]
    shape = BlockShape(tuple(t for group in targets for t in group))
    offsets = np.cumsum([0] + [len(group) for group in targets])

    gens = []
    for index, (n, m) in enumerate(blocks):
        first = int(offsets[index])
        for i in range(1, n + 1):
            for j in range(1, m + 1):
                parts = [np.zeros(dims, dtype=complex) for dims in shape]
                if n == m == 1:
                    parts[first][0, 0] = 1
                elif min(n, m) == 1:
                    position = max(i, j)
                    size = max(n, m)
                    for k in range(1, size + 1):
                        parts[first + k - 1] = np.array(build_Hkn_basis(size, k)[position - 1])
                else:
                    parts[first][i - 1, j - 1] = 1
                    parts[first + 1][j - 1, i - 1] = 1
                gens.append(BlockElement(shape, parts))
    return gens


def cross_check_envelope_of_tro(blocks, tol=None, max_dim=CROSS_CHECK_MAX_DIM):
    """Closure dimension of :func:`realize_envelope_of_tro`, or None when the
    ambient dimension exceeds ``max_dim``."""
    tol = tol or ToleranceConfig()
    _, dim = envelope_of_tro(blocks)
    if dim > max_dim:
        logger.debug(f"cross check skipped: ambient dim {dim} > {max_dim}")
        return None
    closure = tro_closure(realize_envelope_of_tro(blocks), tol)
    logger.debug(f"cross check of {blocks}: closure dim {closure.dim} (expected {dim})")
    return closure.dim
