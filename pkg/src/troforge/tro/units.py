"""Rectangular matrix units
=========================

A family ``e^α_ij`` (``α`` a block, ``1 <= i <= n_α``, ``1 <= j <= m_α``) is a
system of rectangular matrix units when

- ``MU1``: ``e^α_ij (e^α_lj)* e^α_lk = e^α_ik``,
- ``MU2``: products ``x y* z`` with mismatched blocks or inner indices vanish
  (checked through ``e^α_ij (e^β_lk)* = 0`` unless ``α = β, j = k`` and
  ``(e^β_lk)* e^γ_pq = 0`` unless ``β = γ, l = p``),
- ``MU3``: the units are linearly independent.

Their span is then TRO-isomorphic to the direct sum of the ``M_{n_α, m_α}``.

"""
import itertools
from dataclasses import dataclass, field

import numpy as np

from ..errors import InvalidGridError, WellDefinednessError
from ..grids import Hermitian, Symplectic, verify_grid
from ..grids.base import AxiomReport, ResidualLog
from ..log import logger
from ..matrix import ToleranceConfig, span_basis, stack_elements, ternary

#: Above this number of units, MU2 is checked on random pairs
EXHAUSTIVE_MAX_UNITS = 100


@dataclass(frozen=True, eq=False)
class MatrixUnitSystem:
    """Matrix units ``units[(α, i, j)]`` (1-based) of blocks ``block_dims``."""

    units: dict
    block_dims: tuple
    extras: dict = field(default_factory=dict)

    def __post_init__(self):
        dims = tuple((int(n), int(m)) for n, m in self.block_dims)
        object.__setattr__(self, "block_dims", dims)
        expected = {
            (alpha, i, j)
            for alpha, (n, m) in enumerate(dims, start=1)
            for i in range(1, n + 1)
            for j in range(1, m + 1)
        }
        if set(self.units) != expected:
            raise ValueError("Matrix unit labels do not match the block dimensions")

    @property
    def dim(self):
        return sum(n * m for n, m in self.block_dims)

    def block(self, alpha):
        n, m = self.block_dims[alpha - 1]
        return np.array(
            [[self.units[(alpha, i, j)] for j in range(1, m + 1)] for i in range(1, n + 1)],
            dtype=object,
        )

    def labels(self):
        return sorted(self.units)

    def to_dict(self):
        return {"blocks": [list(dims) for dims in self.block_dims], "dim": self.dim}


def verify_matrix_units(system, tol=None, rng=None, samples=5000):
    """Check MU1, MU2 and MU3 on ``system`` (see the module docstring)."""
    tol = tol or ToleranceConfig()
    labels = system.labels()
    elements = [system.units[label] for label in labels]
    shape = elements[0].shape
    vectors = stack_elements(elements)
    stacks = shape.split_stack(vectors)
    position = {label: index for index, label in enumerate(labels)}
    log = ResidualLog(tol)

    for alpha, (n, m) in enumerate(system.block_dims, start=1):
        for i, j, l in itertools.product(range(1, n + 1), range(1, m + 1), range(1, n + 1)):
            x, y = position[(alpha, i, j)], position[(alpha, l, j)]
            row = [position[(alpha, l, k)] for k in range(1, m + 1)]
            target = [position[(alpha, i, k)] for k in range(1, m + 1)]
            products = shape.join_stack(
                [stack[x] @ np.conj(stack[y]).T @ stack[row] for stack in stacks]
            )
            residuals = np.linalg.norm(products - vectors[target], axis=1)
            for k, residual in enumerate(residuals, start=1):
                log.add("MU1", (alpha, i, j, l, k), residual, 1.0)

    count = len(labels)
    if count <= EXHAUSTIVE_MAX_UNITS:
        pairs = list(itertools.product(range(count), repeat=2))
    else:
        rng = rng or np.random.default_rng()
        pairs = [tuple(pair) for pair in rng.integers(0, count, size=(samples, 2))]
    for a, b in pairs:
        (alpha, i, j), (beta, l, k) = labels[a], labels[b]
        if (alpha, j) != (beta, k):
            norm = sum(
                np.linalg.norm(stack[a] @ np.conj(stack[b]).T) for stack in stacks
            )
            log.add("MU2", (labels[a], labels[b], "xy*"), norm, 1.0)
        if (alpha, i) != (beta, l):
            norm = sum(
                np.linalg.norm(np.conj(stack[a]).T @ stack[b]) for stack in stacks
            )
            log.add("MU2", (labels[a], labels[b], "x*y"), norm, 1.0)

    dim = span_basis(elements, tol).dim
    log.add("MU3", (), float(count - dim), 0.0)
    report = log.report("matrix-units")
    logger.debug(f"matrix units {system.block_dims}: {len(report.violations)} violations")
    return report


def _require_valid(grid, kind, tol):
    if not isinstance(grid.kind, kind):
        raise InvalidGridError(f"Expected a {kind.name} grid, got {grid.kind}")
    report = verify_grid(grid, tol)
    if not report.passed:
        raise InvalidGridError(
            f"{grid.kind} fails verification: axioms {report.violated_axioms}"
        )


def extract_matrix_units_hermitian(grid, tol=None):
    """``e_ij = u_ii (sum_k u_kk)* u_ji`` for a hermitian grid."""
    tol = tol or ToleranceConfig()
    _require_valid(grid, Hermitian, tol)
    n = grid.kind.n
    diagonal = sum((grid[(k, k)] for k in range(2, n + 1)), grid[(1, 1)])
    units = {}
    for i, j in itertools.product(range(1, n + 1), repeat=2):
        u_ji = grid[(min(i, j), max(i, j))]
        units[(1, i, j)] = ternary(grid[(i, i)], diagonal, u_ji)
    return MatrixUnitSystem(units, ((n, n),), {"sum_diagonal": diagonal})


def _symplectic_element(grid, i, j):
    return grid[(i, j)] if i < j else -grid[(j, i)]


def extract_matrix_units_symplectic(grid, tol=None):
    """Matrix units of ``M_n`` from a symplectic grid with ``n >= 5``.

    ``e_ii = u_ik u_kl* u_il`` is evaluated for the two smallest and for the two
    largest ``(k, l)`` distinct from ``i``; ``e_ij = e_ii e_ii* u_ij e_jj* e_jj``.
    The unit ``v = sum_k e_kk`` and the residuals of ``v e_ij* v = e_ji`` and
    ``e_ij v* e_kl = δ_jk e_il`` are stored in ``extras``.

    Raises
    ------
    WellDefinednessError
        If the two evaluations of some ``e_ii`` disagree.

    """
    tol = tol or ToleranceConfig()
    _require_valid(grid, Symplectic, tol)
    n = grid.kind.n
    if n < 5:
        raise ValueError(f"Matrix unit extraction needs n >= 5 (got {n})")

    def u(i, j):
        return _symplectic_element(grid, i, j)

    diagonal = {}
    for i in range(1, n + 1):
        others = [k for k in range(1, n + 1) if k != i]
        candidates = [
            ternary(u(i, k), u(k, l), u(i, l)) for k, l in (others[:2], others[-2:])
        ]
        gap = candidates[0].distance(candidates[1])
        if gap > tol.eq_threshold(candidates[0].norm()):
            raise WellDefinednessError(
                f"e_{i}{i} depends on the choice of (k, l): gap {gap:.3g}"
            )
        diagonal[i] = candidates[0]

    units = {}
    for i, j in itertools.product(range(1, n + 1), repeat=2):
        if i == j:
            units[(1, i, i)] = diagonal[i]
        else:
            left = ternary(diagonal[i], diagonal[i], u(i, j))
            units[(1, i, j)] = ternary(left, diagonal[j], diagonal[j])

    v = sum((diagonal[k] for k in range(2, n + 1)), diagonal[1])
    reflection = max(
        ternary(v, units[(1, i, j)], v).distance(units[(1, j, i)])
        for i, j in itertools.product(range(1, n + 1), repeat=2)
    )
    product = 0.0
    for i, j, k, l in itertools.product(range(1, n + 1), repeat=4):
        value = ternary(units[(1, i, j)], v, units[(1, k, l)])
        expected = units[(1, i, l)] if j == k else v.shape.zeros()
        product = max(product, value.distance(expected))
    logger.debug(f"symplectic units n={n}: v-residuals {reflection:.2e}, {product:.2e}")
    extras = {"v": v, "reflection_residual": reflection, "product_residual": product}
    return MatrixUnitSystem(units, ((n, n),), extras)
