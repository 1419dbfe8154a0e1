"""Matrix core
==============

Dense complex matrices, elements of direct sums of rectangular matrix spaces
(:class:`BlockElement`) and the span engine (:class:`SpanBuilder`,
:func:`span_basis`).

Elements are vectorized blockwise in row-major order. The trace pairing
``<x, y> = sum_i trace(y_i^* x_i)`` is then the Hermitian inner product of the
vectorizations, so that :class:`Subspace` stores its orthonormal basis as the
rows of a single complex array.

.. autosummary::

   ToleranceConfig
   BlockShape
   BlockElement
   Subspace
   SpanBuilder

"""
import numbers
from dataclasses import dataclass
from functools import cached_property, reduce

import numpy as np
from scipy import linalg

from .const import DEFAULT_EQ_TOL, DEFAULT_RANK_TOL
from .errors import EmptyGeneratorsError, ShapeMismatchError
from .log import logger

__all__ = [
    "BlockElement",
    "BlockShape",
    "SpanBuilder",
    "Subspace",
    "ToleranceConfig",
    "adjoint",
    "as_complex_matrix",
    "contains",
    "element_from_json",
    "element_to_json",
    "kron",
    "kron_all",
    "matrix_from_json",
    "matrix_to_json",
    "matrix_unit",
    "span_basis",
    "subspace_equal",
    "ternary",
]


def as_complex_matrix(data):
    """Validate and freeze a dense complex matrix.

    Returns a read-only ``complex128`` copy of ``data``.

    """
    matrix = np.array(data, dtype=complex)
    if matrix.ndim != 2 or 0 in matrix.shape:
        raise ValueError(f"Expected a nonempty 2D array, got shape {matrix.shape}")
    if not np.all(np.isfinite(matrix)):
        raise ValueError("Matrix entries must be finite (no NaN / Inf)")
    matrix.setflags(write=False)
    return matrix


def adjoint(matrix):
    """Conjugate transpose."""
    return as_complex_matrix(np.conj(matrix).T)


def kron(a, b):
    """Kronecker product: entry ``((i-1)*rows(b)+p, (j-1)*cols(b)+q)`` is
    ``a[i, j] * b[p, q]``."""
    return as_complex_matrix(np.kron(as_complex_matrix(a), as_complex_matrix(b)))


def kron_all(*matrices):
    """Kronecker product of several matrices, left to right."""
    return reduce(kron, matrices)


def matrix_unit(i, j, rows, cols=None):
    """Matrix unit ``E_ij`` (1-based indices)."""
    cols = rows if cols is None else cols
    unit = np.zeros((rows, cols), dtype=complex)
    unit[i - 1, j - 1] = 1
    unit.setflags(write=False)
    return unit


@dataclass(frozen=True)
class ToleranceConfig:
    """Numerical thresholds.

    Parameters
    ----------
    rank_tol: float
        A residual vector is zero during orthogonalization when its norm is below
        ``rank_tol * max(1, norm of the original vector)``.
    eq_tol: float
        Threshold of matrix equality assertions, relative to operand norms.

    """

    rank_tol: float = DEFAULT_RANK_TOL
    eq_tol: float = DEFAULT_EQ_TOL

    def __post_init__(self):
        for name in ("rank_tol", "eq_tol"):
            value = getattr(self, name)
            if not 0 < value < 1:
                raise ValueError(f"{name} = {value} should be in (0, 1)")

    def rank_threshold(self, norm):
        return self.rank_tol * max(1.0, norm)

    def eq_threshold(self, norm):
        return self.eq_tol * max(1.0, norm)

    def to_dict(self):
        return {"rank_tol": self.rank_tol, "eq_tol": self.eq_tol}


@dataclass(frozen=True)
class BlockShape:
    """Ordered list of ``(rows, cols)`` pairs of a direct sum of matrix spaces."""

    blocks: tuple

    def __post_init__(self):
        blocks = tuple((int(rows), int(cols)) for rows, cols in self.blocks)
        if not blocks:
            raise ValueError("A block shape needs at least one block")
        if any(rows < 1 or cols < 1 for rows, cols in blocks):
            raise ValueError(f"Block dimensions should be positive: {blocks}")
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def single(cls, rows, cols=None):
        return cls(((rows, rows if cols is None else cols),))

    def __len__(self):
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)

    def __str__(self):
        return " + ".join(f"M({rows},{cols})" for rows, cols in self.blocks)

    @cached_property
    def size(self):
        """Total ambient dimension ``sum rows_i * cols_i``."""
        return sum(rows * cols for rows, cols in self.blocks)

    @cached_property
    def offsets(self):
        return tuple(np.cumsum([0] + [rows * cols for rows, cols in self.blocks]))

    @property
    def is_square(self):
        return all(rows == cols for rows, cols in self.blocks)

    def adjoint(self):
        return BlockShape(tuple((cols, rows) for rows, cols in self.blocks))

    def left(self):
        """Shape of the products ``x y*``."""
        return BlockShape(tuple((rows, rows) for rows, _ in self.blocks))

    def right(self):
        """Shape of the products ``x* y``."""
        return BlockShape(tuple((cols, cols) for _, cols in self.blocks))

    def product(self, other):
        """Shape of blockwise products ``x y`` with ``x`` of this shape."""
        if len(self) != len(other) or any(
            cols != rows for (_, cols), (rows, _) in zip(self.blocks, other.blocks)
        ):
            raise ShapeMismatchError(f"Cannot multiply {self} by {other}")
        return BlockShape(
            tuple((rows, cols) for (rows, _), (_, cols) in zip(self.blocks, other.blocks))
        )

    def zeros(self):
        return BlockElement(self, [np.zeros(block, dtype=complex) for block in self])

    def identity(self):
        if not self.is_square:
            raise ShapeMismatchError(f"No identity in non square shape {self}")
        return BlockElement(self, [np.eye(rows, dtype=complex) for rows, _ in self])

    def unit(self, block, i, j):
        """Matrix unit ``E_ij`` placed in block ``block`` (all 1-based)."""
        parts = [np.zeros(dims, dtype=complex) for dims in self.blocks]
        parts[block - 1][i - 1, j - 1] = 1
        return BlockElement(self, parts)

    def matrix_units(self):
        """All matrix units, block by block, in row-major order."""
        return [
            self.unit(block, i, j)
            for block, (rows, cols) in enumerate(self.blocks, start=1)
            for i in range(1, rows + 1)
            for j in range(1, cols + 1)
        ]

    def split_stack(self, stack):
        """Split vectors (shape ``(count, size)``) into per-block matrix stacks."""
        stack = np.asarray(stack).reshape(-1, self.size)
        return [
            stack[:, start:stop].reshape(-1, rows, cols)
            for (rows, cols), start, stop in zip(
                self.blocks, self.offsets[:-1], self.offsets[1:]
            )
        ]

    def join_stack(self, parts):
        """Inverse of :meth:`split_stack`."""
        count = parts[0].shape[0]
        return np.concatenate([part.reshape(count, -1) for part in parts], axis=1)

    def to_json(self):
        return [list(block) for block in self.blocks]


def _frozen(array):
    array = np.array(array, dtype=complex)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class BlockElement:
    """Element of a direct sum of rectangular matrix spaces.

    Parameters
    ----------
    shape: BlockShape
    parts: sequence of arrays
        One matrix per block, conforming to ``shape``.

    """

    shape: BlockShape
    parts: tuple

    def __post_init__(self):
        if len(self.parts) != len(self.shape):
            raise ShapeMismatchError(
                f"{len(self.parts)} parts given for a shape with {len(self.shape)} blocks"
            )
        parts = tuple(_frozen(part) for part in self.parts)
        for part, dims in zip(parts, self.shape):
            if part.shape != dims:
                raise ShapeMismatchError(f"Part of shape {part.shape} != block {dims}")
            if not np.all(np.isfinite(part)):
                raise ValueError("Block entries must be finite (no NaN / Inf)")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def from_matrix(cls, matrix):
        matrix = as_complex_matrix(matrix)
        return cls(BlockShape((matrix.shape,)), (matrix,))

    @classmethod
    def from_parts(cls, *matrices):
        matrices = [as_complex_matrix(matrix) for matrix in matrices]
        return cls(BlockShape(tuple(matrix.shape for matrix in matrices)), matrices)

    @classmethod
    def from_vector(cls, shape, vector):
        return cls(shape, [part[0] for part in shape.split_stack(vector)])

    @cached_property
    def vector(self):
        vector = np.concatenate([part.ravel() for part in self.parts])
        vector.setflags(write=False)
        return vector

    def __repr__(self):
        return f"BlockElement({self.shape}, norm={self.norm():.3g})"

    def _coerce(self, other):
        if not isinstance(other, BlockElement):
            return NotImplemented
        if other.shape != self.shape:
            raise ShapeMismatchError(f"{self.shape} != {other.shape}")
        return other

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return BlockElement(self.shape, [a + b for a, b in zip(self.parts, other.parts)])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return BlockElement(self.shape, [a - b for a, b in zip(self.parts, other.parts)])

    def __neg__(self):
        return BlockElement(self.shape, [-part for part in self.parts])

    def __mul__(self, scalar):
        if not isinstance(scalar, numbers.Number):
            return NotImplemented
        return BlockElement(self.shape, [scalar * part for part in self.parts])

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self * (1 / scalar)

    def adjoint(self):
        return BlockElement(self.shape.adjoint(), [np.conj(part).T for part in self.parts])

    def dot(self, other):
        """Blockwise matrix product ``self * other``."""
        shape = self.shape.product(other.shape)
        return BlockElement(shape, [a @ b for a, b in zip(self.parts, other.parts)])

    def norm(self):
        """Norm of the trace pairing (Frobenius norm of the vectorization)."""
        return float(np.linalg.norm(self.vector))

    def op_norm(self):
        """Operator norm: largest singular value across blocks."""
        return max(float(linalg.svdvals(part)[0]) for part in self.parts)

    def inner(self, other):
        """Trace pairing ``<self, other> = sum_i trace(other_i^* self_i)``."""
        other = self._coerce(other)
        return complex(np.vdot(other.vector, self.vector))

    def distance(self, other):
        return (self - other).norm()

    def allclose(self, other, eq_tol=DEFAULT_EQ_TOL):
        """Equality within ``eq_tol`` relative to the norm of ``other``."""
        return self.distance(other) < eq_tol * max(1.0, other.norm())

    def to_json(self):
        return element_to_json(self)


def _check_shapes(*elements):
    shape = elements[0].shape
    for element in elements[1:]:
        if element.shape != shape:
            raise ShapeMismatchError(f"Mixed shapes: {shape} and {element.shape}")
    return shape


def ternary(x, y, z):
    """TRO product ``x y* z``, blockwise."""
    shape = _check_shapes(x, y, z)
    return BlockElement(
        shape,
        [a @ np.conj(b).T @ c for a, b, c in zip(x.parts, y.parts, z.parts)],
    )


def stack_elements(elements):
    """Vectorizations of ``elements`` as the rows of one array."""
    _check_shapes(*elements)
    return np.array([element.vector for element in elements])


@dataclass(frozen=True, eq=False)
class Subspace:
    """Linear span of block elements, stored through an orthonormal basis.

    Parameters
    ----------
    ambient: BlockShape
    vectors: array of shape ``(dim, ambient.size)``
        Orthonormal rows: vectorizations of the basis elements.

    """

    ambient: BlockShape
    vectors: np.ndarray

    def __post_init__(self):
        vectors = np.array(self.vectors, dtype=complex).reshape(-1, self.ambient.size)
        if vectors.shape[0] > self.ambient.size:
            raise ValueError("More basis vectors than the ambient dimension")
        vectors.setflags(write=False)
        object.__setattr__(self, "vectors", vectors)

    @classmethod
    def zero(cls, ambient):
        return cls(ambient, np.zeros((0, ambient.size), dtype=complex))

    @classmethod
    def full(cls, ambient):
        return cls(ambient, np.eye(ambient.size, dtype=complex))

    @property
    def dim(self):
        return self.vectors.shape[0]

    def __len__(self):
        return self.dim

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"

    @cached_property
    def basis(self):
        return tuple(BlockElement.from_vector(self.ambient, row) for row in self.vectors)

    def coordinates(self, x):
        """Coordinates of the orthogonal projection of ``x`` in the basis."""
        if x.shape != self.ambient:
            raise ShapeMismatchError(f"{x.shape} != {self.ambient}")
        return self.vectors.conj() @ x.vector

    def coordinates_stack(self, stack):
        return np.asarray(stack) @ self.vectors.conj().T

    def element(self, coordinates):
        return BlockElement.from_vector(self.ambient, np.asarray(coordinates) @ self.vectors)

    def project(self, x):
        return self.element(self.coordinates(x))

    def residual_norms(self, stack):
        """Norms of the components of the rows of ``stack`` orthogonal to the span."""
        stack = np.atleast_2d(stack)
        residual = stack - self.coordinates_stack(stack) @ self.vectors
        return np.linalg.norm(residual, axis=1)

    def random_element(self, rng):
        """Element with complex Gaussian coordinates drawn from ``rng``."""
        coords = rng.standard_normal(self.dim) + 1j * rng.standard_normal(self.dim)
        return self.element(coords)

    def to_json(self):
        return {
            "ambient": self.ambient.to_json(),
            "dim": self.dim,
            "basis": [element_to_json(element) for element in self.basis],
        }


class SpanBuilder:
    """Incremental orthonormal basis of a growing span.

    Classical Gram-Schmidt with a second re-orthogonalization pass, applied to
    batches of candidate vectors: a batch is first projected against the
    current basis, then the survivors are accepted one after the other.

    Parameters
    ----------
    size: int
        Ambient dimension.
    tol: ToleranceConfig

    """

    def __init__(self, size, tol=None):
        self.size = size
        self.tol = tol or ToleranceConfig()
        self._vectors = np.empty((min(size, 64), size), dtype=complex)
        self.dim = 0

    @property
    def full(self):
        return self.dim >= self.size

    @property
    def vectors(self):
        return self._vectors[: self.dim]

    def _reserve(self, extra):
        needed = min(self.size, self.dim + extra)
        if needed > self._vectors.shape[0]:
            capacity = min(self.size, max(needed, 2 * self._vectors.shape[0]))
            vectors = np.empty((capacity, self.size), dtype=complex)
            vectors[: self.dim] = self.vectors
            self._vectors = vectors

    def _project_out(self, stack, basis):
        for _ in range(2):
            stack = stack - (stack @ basis.conj().T) @ basis
        return stack

    def residual_norms(self, stack):
        stack = np.atleast_2d(stack)
        if self.dim == 0:
            return np.linalg.norm(stack, axis=1)
        return np.linalg.norm(self._project_out(stack, self.vectors), axis=1)

    def extend(self, stack):
        """Add the rows of ``stack`` to the span.

        Returns
        -------
        accepted: array of bool
            Mask of the rows which increased the dimension.

        """
        stack = np.atleast_2d(np.asarray(stack, dtype=complex))
        accepted = np.zeros(stack.shape[0], dtype=bool)
        if self.full or stack.shape[0] == 0:
            return accepted

        thresholds = self.tol.rank_tol * np.maximum(1.0, np.linalg.norm(stack, axis=1))
        if self.dim:
            residuals = self._project_out(stack, self.vectors)
        else:
            residuals = stack
        candidates = np.flatnonzero(np.linalg.norm(residuals, axis=1) > thresholds)

        start = self.dim
        self._reserve(len(candidates))
        for index in candidates:
            if self.full:
                break
            residual = residuals[index]
            if self.dim > start:
                residual = self._project_out(residual[None], self._vectors[start : self.dim])[0]
            norm = np.linalg.norm(residual)
            if norm > thresholds[index]:
                self._vectors[self.dim] = residual / norm
                self.dim += 1
                accepted[index] = True

        if self.dim > start:
            logger.debug(f"span: dim {start} -> {self.dim} ({len(stack)} candidates)")
        return accepted

    def subspace(self, ambient):
        return Subspace(ambient, self.vectors.copy())


def span_basis(gens, tol=None):
    """Orthonormal basis of the complex linear span of ``gens``.

    Raises
    ------
    EmptyGeneratorsError
        When ``gens`` is empty.
    ShapeMismatchError
        When the generators do not share one shape.

    """
    gens = list(gens)
    if not gens:
        raise EmptyGeneratorsError("Cannot span an empty generator list")
    shape = _check_shapes(*gens)
    builder = SpanBuilder(shape.size, tol)
    builder.extend(stack_elements(gens))
    return builder.subspace(shape)


def contains(space, x, tol=None):
    """True iff the residual of ``x`` off ``space`` is below
    ``rank_tol * max(1, |x|)``."""
    tol = tol or ToleranceConfig()
    if x.shape != space.ambient:
        raise ShapeMismatchError(f"{x.shape} != {space.ambient}")
    return bool(space.residual_norms(x.vector)[0] < tol.rank_threshold(x.norm()))


def subspace_equal(space1, space2, tol=None):
    """Same dimension and mutual containment of the bases."""
    tol = tol or ToleranceConfig()
    if space1.ambient != space2.ambient:
        raise ShapeMismatchError(f"{space1.ambient} != {space2.ambient}")
    if space1.dim != space2.dim:
        return False
    if space1.dim == 0:
        return True
    return bool(
        np.all(space1.residual_norms(space2.vectors) < tol.rank_tol)
        and np.all(space2.residual_norms(space1.vectors) < tol.rank_tol)
    )


def matrix_to_json(matrix):
    matrix = as_complex_matrix(matrix)
    rows, cols = matrix.shape
    return {
        "rows": rows,
        "cols": cols,
        "data": [[float(value.real), float(value.imag)] for value in matrix.ravel()],
    }


def matrix_from_json(obj):
    try:
        rows, cols, data = int(obj["rows"]), int(obj["cols"]), list(obj["data"])
    except (KeyError, TypeError, ValueError) as err:
        raise ValueError(f"Malformed matrix JSON: {err}") from err
    if rows < 1 or cols < 1 or len(data) != rows * cols:
        raise ValueError(f"Matrix JSON has {len(data)} entries for {rows}x{cols}")
    try:
        entries = [complex(float(re), float(im)) for re, im in data]
    except (TypeError, ValueError) as err:
        raise ValueError(f"Matrix entries should be [re, im] pairs: {err}") from err
    return as_complex_matrix(np.reshape(entries, (rows, cols)))


def element_to_json(element):
    return {"blocks": [matrix_to_json(part) for part in element.parts]}


def element_from_json(obj):
    try:
        blocks = obj["blocks"]
    except (KeyError, TypeError) as err:
        raise ValueError(f"Malformed block element JSON: {err}") from err
    if not isinstance(blocks, list):
        raise ValueError("Block element JSON: \"blocks\" should be a list")
    if not blocks:
        raise ValueError("A block element needs at least one block")
    return BlockElement.from_parts(*(matrix_from_json(block) for block in blocks))
