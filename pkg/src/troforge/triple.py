"""Triple structure
===================

The Jordan triple product ``{x, y, z} = (x y* z + z y* x) / 2`` on block
elements, tripotents, box operators ``x□y`` restricted to a subspace and the
Peirce decomposition relative to a tripotent.

"""
from dataclasses import dataclass

import numpy as np
from scipy import linalg

from .errors import (
    NotInvariantError,
    PeirceMembershipError,
    PeirceSpectrumError,
    ShapeMismatchError,
)
from .log import logger
from .matrix import (
    BlockElement,
    Subspace,
    ToleranceConfig,
    _check_shapes,
    contains,
    span_basis,
    stack_elements,
    ternary,
)

#: Peirce eigenvalues of ``e□e``, indexed by k in ``P_k``
PEIRCE_EIGENVALUES = (0.0, 0.5, 1.0)


def jordan_triple(x, y, z):
    """Symmetrized triple product ``(x y* z + z y* x) / 2``, blockwise."""
    shape = _check_shapes(x, y, z)
    parts = []
    for a, b, c in zip(x.parts, y.parts, z.parts):
        b_adj = np.conj(b).T
        parts.append(0.5 * (a @ b_adj @ c + c @ b_adj @ a))
    return BlockElement(shape, parts)


def operator_norm(x):
    """Largest singular value across blocks (C*-norm of a direct sum)."""
    return x.op_norm()


def is_tripotent(e, tol=None):
    tol = tol or ToleranceConfig()
    return jordan_triple(e, e, e).distance(e) < tol.eq_tol * e.norm()


def jordan_identity_defect(a, b, x, y, z):
    """Norm of ``{a,b,{x,y,z}} - {{a,b,x},y,z} + {x,{b,a,y},z} - {x,y,{a,b,z}}``."""
    lhs = jordan_triple(a, b, jordan_triple(x, y, z))
    rhs = (
        jordan_triple(jordan_triple(a, b, x), y, z)
        - jordan_triple(x, jordan_triple(b, a, y), z)
        + jordan_triple(x, y, jordan_triple(a, b, z))
    )
    return lhs.distance(rhs)


def c_star_defect(x):
    """Relative defect of the C*-condition ``|{x,x,x}| = |x|^3`` (operator norms)."""
    norm = operator_norm(x)
    if norm == 0:
        return 0.0
    return abs(operator_norm(jordan_triple(x, x, x)) - norm**3) / norm**3


@dataclass(frozen=True, eq=False)
class BoxOperator:
    """Operator ``z -> {x, y, z}`` expressed in the basis of ``domain``.

    Column ``j`` of ``matrix`` holds the coordinates of the image of the j-th
    basis element.

    """

    domain: Subspace
    matrix: np.ndarray

    def __post_init__(self):
        side = self.domain.dim
        if self.matrix.shape != (side, side):
            raise ValueError(f"Box operator matrix {self.matrix.shape} != ({side}, {side})")


def box_operator(x, y, space, tol=None):
    """Restriction of ``x□y`` to ``space``.

    Raises
    ------
    NotInvariantError
        If some image leaves ``space``.

    """
    tol = tol or ToleranceConfig()
    if x.shape != space.ambient or y.shape != space.ambient:
        raise ShapeMismatchError(f"{x.shape}, {y.shape} != {space.ambient}")
    if space.dim == 0:
        return BoxOperator(space, np.zeros((0, 0), dtype=complex))

    images = stack_elements([jordan_triple(x, y, b) for b in space.basis])
    residuals = space.residual_norms(images)
    scale = max(1.0, x.norm() * y.norm())
    if np.max(residuals) > tol.eq_tol * scale:
        raise NotInvariantError(
            f"Subspace not invariant under x□y (residual {np.max(residuals):.3g})"
        )
    return BoxOperator(space, space.coordinates_stack(images).T)


@dataclass(frozen=True, eq=False)
class PeirceDecomposition:
    """Peirce spaces ``p0, p1, p2`` of a tripotent, for the eigenvalues 0, 1/2
    and 1 of ``e□e``."""

    tripotent: BlockElement
    p0: Subspace
    p1: Subspace
    p2: Subspace
    eigenvalues: np.ndarray

    @property
    def spaces(self):
        return (self.p0, self.p1, self.p2)

    @property
    def dims(self):
        return tuple(space.dim for space in self.spaces)

    def max_spectrum_defect(self):
        """Distance of the computed spectrum to {0, 1/2, 1}."""
        if self.eigenvalues.size == 0:
            return 0.0
        targets = np.array(PEIRCE_EIGENVALUES)
        return float(
            np.max(np.min(np.abs(self.eigenvalues[:, None] - targets[None]), axis=1))
        )


def peirce_decompose(e, space, tol=None):
    """Eigenspaces of ``e□e`` restricted to ``space``.

    ``e□e`` is self-adjoint for the trace pairing: the box operator is
    symmetrized before :func:`scipy.linalg.eigh` and each eigenvalue is snapped
    to the nearest of 0, 1/2 and 1.

    Raises
    ------
    PeirceSpectrumError
        If an eigenvalue is farther than ``eq_tol`` from {0, 1/2, 1}, which signals
        a non tripotent ``e`` or a subspace which is not a subtriple.

    """
    tol = tol or ToleranceConfig()
    if not is_tripotent(e, tol):
        raise PeirceSpectrumError("Peirce decomposition requires a tripotent")
    if not contains(space, e, tol):
        raise PeirceSpectrumError("The tripotent does not belong to the subspace")

    box = box_operator(e, e, space, tol).matrix
    eigenvalues, eigenvectors = linalg.eigh(0.5 * (box + box.conj().T))

    targets = np.array(PEIRCE_EIGENVALUES)
    distances = np.abs(eigenvalues[:, None] - targets[None])
    nearest = np.argmin(distances, axis=1)
    defect = np.max(distances[np.arange(len(eigenvalues)), nearest])
    if defect > tol.eq_tol:
        raise PeirceSpectrumError(
            f"Eigenvalue at distance {defect:.3g} from {{0, 1/2, 1}}: "
            "not a tripotent or not a subtriple"
        )

    spaces = []
    for k in range(3):
        columns = eigenvectors[:, nearest == k]
        spaces.append(Subspace(space.ambient, columns.T @ space.vectors))
    logger.debug(f"Peirce dims (p0, p1, p2) = {tuple(s.dim for s in spaces)}")
    return PeirceDecomposition(e, *spaces, eigenvalues=eigenvalues)


def is_minimal_tripotent(e, space, tol=None):
    """True iff ``{e, space, e}`` is one dimensional."""
    tol = tol or ToleranceConfig()
    images = [jordan_triple(e, b, e) for b in space.basis]
    if not images:
        return False
    return span_basis(images, tol).dim == 1


def peirce2_membership(v, z, tol=None):
    """True iff ``v (v z* v)* v = z``: ``z`` lies in the Peirce 2 space of ``v``."""
    tol = tol or ToleranceConfig()
    image = ternary(v, ternary(v, z, v), v)
    return image.distance(z) < tol.eq_threshold(z.norm())


def peirce2_product(a, b, e, tol=None):
    """Product ``a e* b`` of the unital C*-algebra carried by the Peirce 2 space
    of ``e``.

    Raises
    ------
    PeirceMembershipError
        If ``a`` or ``b`` is not in the Peirce 2 space of ``e``.

    """
    for name, x in (("a", a), ("b", b)):
        if not peirce2_membership(e, x, tol):
            raise PeirceMembershipError(f"{name} is not in the Peirce 2 space of e")
    return ternary(a, e, b)
