"""Mathematical constants and desk-scale limits"""
import math

import numpy as np

#: Pauli matrices in the convention used for spin systems: ``sigma1`` is
#: diagonal, ``sigma2`` real off-diagonal and ``sigma3`` imaginary.
SIGMA1 = np.array([[1, 0], [0, -1]], dtype=complex)
SIGMA2 = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA3 = np.array([[0, 1j], [-1j, 0]], dtype=complex)
PAULI = (SIGMA1, SIGMA2, SIGMA3)

DEFAULT_SEED = 42
DEFAULT_RANK_TOL = 1e-9
DEFAULT_EQ_TOL = 1e-7

#: Upper limits accepted for the parameter caps of a sweep
DESK_CAPS = {"spin_k": 10, "type1_nm": 36, "type23_n": 7, "rank1_n": 6}

#: Rank >= 2 rectangular factors visited by the default sweep
SWEEP_TYPE1_SHAPES = ((2, 2), (2, 3), (3, 3), (2, 4), (3, 4))

#: Exceptional Cartan factors: dimension of the factor. Their universal
#: enveloping TRO is 0, the universal embedding being the zero map.
EXCEPTIONAL_FACTOR_DIMS = {"V": 16, "VI": 27}

#: Ambient dimension below which mixed direct sums are cross-checked by a
#: genuine closure computation
CROSS_CHECK_MAX_DIM = 200


def rank1_envelope_dim(n):
    r"""Dimension of the enveloping TRO of the rank one factor of dimension n.

    .. math::

        \sum_{k=1}^n \binom{n}{k-1}\binom{n}{k} = \binom{2n}{n-1}

    The two sides are compared as an arithmetic cross-check.

    """
    total = sum(math.comb(n, k - 1) * math.comb(n, k) for k in range(1, n + 1))
    if total != math.comb(2 * n, n - 1):
        raise ArithmeticError(f"Vandermonde identity broken for {n = }")
    return total
