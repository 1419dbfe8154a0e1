"""Block decomposition
====================

Every finite dimensional TRO is TRO-isomorphic to a direct sum
``M_{n_1, m_1} ⊕ ... ⊕ M_{n_r, m_r}``. :func:`decompose_blocks` finds the
summands and matrix units realizing the isomorphism:

1. The left algebra ``A = T T*`` is spanned by ``x g*`` (``x`` in a basis of T,
   ``g`` a generator). With ``a_k`` an orthonormal basis of ``A``, the map
   ``y -> sum_k a_k y a_k*`` sends ``A`` onto its centre ``Z(A)``. A basis
   ``z_i`` of ``Z(A)`` is collected from images of random self-adjoint
   elements, and the eigenprojections of ``c = sum_i t_i z_i`` (``t_i`` uniform
   in [1, 2]) are the minimal central projections ``p_α`` for generic ``t``.
2. A second independent central element must be scalar on every ``p_α``,
   otherwise two eigenvalues collided and the draw is repeated.
3. ``n_α² = dim p_α A`` and ``n_α m_α = dim p_α T``.
4. Minimal projections ``f_i`` of ``p_α A`` and ``g_j`` of ``T_α* T_α`` come from
   generic self-adjoint elements; ``e_ij = v_i1 w w_1j`` with ``w`` spanning
   ``f_1 T g_1`` and ``v_i1``, ``w_1j`` the partial isometries spanning
   ``f_i A f_1`` and ``g_1 B g_j``.

"""
import math
from dataclasses import dataclass

import numpy as np
from scipy import linalg

from ..const import DEFAULT_SEED
from ..errors import BlockCollisionError
from ..log import logger
from ..matrix import BlockElement, SpanBuilder, ToleranceConfig
from .closure import CHUNK_SIZE, _chunks, _flatten
from .units import MatrixUnitSystem

#: Relative gap below which two eigenvalues belong to the same cluster
CLUSTER_RTOL = 1e-6
#: Relative threshold of the eigenvalues of positive elements counted as zero
SUPPORT_RTOL = 1e-8
MAX_ATTEMPTS = 5


class _Collision(Exception):
    pass


@dataclass(frozen=True, eq=False)
class BlockDecomposition:
    """Blocks ``(n_α, m_α)``, minimal central projections of ``T T*`` and the
    matrix units realizing ``T ≅ ⊕ M_{n_α, m_α}``."""

    blocks: tuple
    central_projections: tuple
    units: MatrixUnitSystem
    seed: int = DEFAULT_SEED
    attempts: int = 1

    @property
    def dim(self):
        return sum(n * m for n, m in self.blocks)

    def sorted_blocks(self):
        return sorted(self.blocks)

    def to_dict(self):
        return {
            "blocks": [list(block) for block in self.blocks],
            "dim": self.dim,
            "seed": self.seed,
            "attempts": self.attempts,
        }


def _adjoint_stack(stack):
    return np.conj(stack).transpose(0, 2, 1)


def _parts(element):
    return list(element.parts)


def _span_products(builder, lefts, rights):
    """Add all blockwise products ``l r`` (``l`` in lefts, ``r`` in rights)."""
    count = rights[0].shape[0]
    for start, stop in _chunks(lefts[0].shape[0], max(1, CHUNK_SIZE // count)):
        products = [
            np.einsum("aij,bjk->abik", left[start:stop], right).reshape(
                -1, left.shape[1], right.shape[2]
            )
            for left, right in zip(lefts, rights)
        ]
        builder.extend(_flatten(products))
        if builder.full:
            break
    return builder


def _left_multiply(projection_parts, stacks):
    return [p @ stack for p, stack in zip(projection_parts, stacks)]


def _span(size, stacks, tol):
    builder = SpanBuilder(size, tol)
    builder.extend(_flatten(stacks))
    return builder


def _support_bases(stacks, dims):
    """Orthonormal column bases of the range of ``sum_k b_k b_k*``, per block."""
    positives = [np.einsum("kij,klj->il", stack, np.conj(stack)) for stack in stacks]
    scale = max((np.max(np.abs(p)) for p in positives if p.size), default=0.0)
    bases = []
    for positive, (rows, _) in zip(positives, dims):
        values, vectors = linalg.eigh(0.5 * (positive + np.conj(positive).T))
        bases.append(vectors[:, values > SUPPORT_RTOL * max(scale, 1e-300)])
    return bases


def _spectral_projections(parts, bases):
    """Eigenprojections of the self-adjoint ``parts`` restricted to ``bases``.

    Eigenvalues are clustered across blocks; projections are returned in
    increasing order of eigenvalue, as lists of per-block matrices.

    """
    values, columns = [], []
    for block, (part, basis) in enumerate(zip(parts, bases)):
        if basis.shape[1] == 0:
            continue
        restricted = np.conj(basis).T @ part @ basis
        eigvals, eigvecs = linalg.eigh(0.5 * (restricted + np.conj(restricted).T))
        for value, vector in zip(eigvals, (basis @ eigvecs).T):
            values.append(value)
            columns.append((block, vector))
    if not values:
        return []
    values = np.array(values)
    order = np.argsort(values)
    scale = max(np.max(np.abs(values)), 1e-300)
    groups = [[order[0]]]
    for previous, current in zip(order[:-1], order[1:]):
        if values[current] - values[previous] > CLUSTER_RTOL * scale:
            groups.append([])
        groups[-1].append(current)

    projections = []
    for group in groups:
        proj = [np.zeros((len(basis), len(basis)), dtype=complex) for basis in bases]
        for index in group:
            block, vector = columns[index]
            proj[block] += np.outer(vector, np.conj(vector))
        projections.append(proj)
    return projections


def _centre(algebra, tol, rng):
    """Basis of the centre of ``A``, per block.

    ``phi(y) = sum_k a_k y a_k*`` maps ``A`` onto its centre and self-adjoint
    elements to self-adjoint ones. Images of random self-adjoint ``y`` are
    collected until one of them adds nothing to the span.

    """
    count = algebra[0].shape[0]
    builder = SpanBuilder(sum(stack[0].size for stack in algebra), tol)
    samples = []
    while not builder.full:
        coefficients = rng.standard_normal(count) + 1j * rng.standard_normal(count)
        parts = []
        for stack in algebra:
            x = np.einsum("k,kij->ij", coefficients, stack)
            y = x + np.conj(x).T
            parts.append(
                np.einsum("kij,jl,kml->im", stack, y, np.conj(stack), optimize=True)
            )
        if not builder.extend(np.concatenate([part.ravel() for part in parts]))[0]:
            break
        samples.append(parts)
    logger.debug(f"decompose: dim Z(T T*) = {len(samples)}")
    return [np.array([sample[block] for sample in samples]) for block in range(len(algebra))]


def _central_element(centre, rng):
    """``sum_i t_i z_i`` with ``t_i`` uniform in [1, 2], per block."""
    weights = rng.uniform(1.0, 2.0, size=centre[0].shape[0])
    return [np.einsum("k,kij->ij", weights, stack) for stack in centre]


def _central_projections(centre, supports, rng):
    projections = _spectral_projections(_central_element(centre, rng), supports)
    check = _central_element(centre, rng)
    scale = max(np.max(np.abs(part)) for part in check)
    for proj in projections:
        trace = sum(np.trace(p).real for p in proj)
        value = sum(np.trace(c @ p) for c, p in zip(check, proj)) / trace
        defect = max(np.linalg.norm(c @ p - value * p) for c, p in zip(check, proj))
        if defect > CLUSTER_RTOL * scale * math.sqrt(trace):
            raise _Collision(f"central eigenvalue collision (defect {defect:.3g})")
    return projections


def _first_location(parts):
    for block, part in enumerate(parts):
        rows = np.flatnonzero(np.abs(np.diag(part)) > 1e-6)
        if rows.size:
            return (block, int(rows[0]))
    return (len(parts), 0)


def _partial_isometry(element, tol):
    norm = element.op_norm()
    if norm < tol.eq_tol:
        raise _Collision("degenerate corner of a random element")
    return element / norm


def _block_units(alpha, p, algebra, space_stacks, gens, shape, tol, rng):
    """Block dims and matrix units of the summand ``p T``."""
    left_shape, right_shape = shape.left(), shape.right()

    corner = _span(left_shape.size, _left_multiply(p, algebra), tol)
    n = math.isqrt(corner.dim)
    if n * n != corner.dim:
        raise _Collision(f"dim p A = {corner.dim} is not a square")
    summand = _span(shape.size, _left_multiply(p, space_stacks), tol)
    m, rest = divmod(summand.dim, n)
    if rest:
        raise _Collision(f"dim p T = {summand.dim} is not a multiple of {n}")

    summand_stacks = shape.split_stack(summand.vectors)
    projected_gens = _left_multiply(p, gens)
    right = _span_products(
        SpanBuilder(right_shape.size, tol),
        [_adjoint_stack(stack) for stack in projected_gens],
        summand_stacks,
    )
    right_stacks = right_shape.split_stack(right.vectors)

    corner_space = corner.subspace(left_shape)
    right_space = right.subspace(right_shape)
    left_support = _support_bases(left_shape.split_stack(corner.vectors), left_shape.blocks)
    right_support = _support_bases(right_stacks, right_shape.blocks)

    def minimal_projections(space, support, expected, element_shape):
        x = space.random_element(rng)
        projections = _spectral_projections(_parts(x + x.adjoint()), support)
        if len(projections) != expected:
            raise _Collision(f"{len(projections)} eigenvalues for {expected} projections")
        return [BlockElement(element_shape, proj) for proj in projections]

    fs = minimal_projections(corner_space, left_support, n, left_shape)
    gs = minimal_projections(right_space, right_support, m, right_shape)

    w = _partial_isometry(
        fs[0].dot(summand.subspace(shape).random_element(rng)).dot(gs[0]), tol
    )
    vs = [fs[0]] + [
        _partial_isometry(f.dot(corner_space.random_element(rng)).dot(fs[0]), tol)
        for f in fs[1:]
    ]
    ws = [gs[0]] + [
        _partial_isometry(gs[0].dot(right_space.random_element(rng)).dot(g), tol)
        for g in gs[1:]
    ]
    units = {
        (alpha, i, j): vs[i - 1].dot(w).dot(ws[j - 1])
        for i in range(1, n + 1)
        for j in range(1, m + 1)
    }
    return (n, m), units


def decompose_blocks(closure, tol=None, seed=DEFAULT_SEED, attempts=MAX_ATTEMPTS):
    """Direct sum decomposition of a TRO given by a :class:`ClosureResult`.

    Blocks are listed in the order of their location in the ambient space.

    Raises
    ------
    BlockCollisionError
        When ``attempts`` random draws all produced colliding eigenvalues.

    """
    tol = tol or ToleranceConfig()
    space = closure.space
    shape = space.ambient
    left_shape = shape.left()
    rng = np.random.default_rng(seed)

    space_stacks = shape.split_stack(space.vectors)
    gens = shape.split_stack(np.array([g.vector for g in closure.gens]))
    algebra = _span_products(
        SpanBuilder(left_shape.size, tol),
        space_stacks,
        [_adjoint_stack(stack) for stack in gens],
    )
    algebra_stacks = left_shape.split_stack(algebra.vectors)
    logger.debug(f"decompose: dim T = {space.dim}, dim T T* = {algebra.dim}")
    supports = _support_bases(algebra_stacks, left_shape.blocks)
    centre = _centre(algebra_stacks, tol, rng)

    for attempt in range(1, attempts + 1):
        try:
            projections = _central_projections(centre, supports, rng)
            projections.sort(key=_first_location)
            blocks, units = [], {}
            for alpha, p in enumerate(projections, start=1):
                dims, block_units = _block_units(
                    alpha, p, algebra_stacks, space_stacks, gens, shape, tol, rng
                )
                blocks.append(dims)
                units.update(block_units)
        except _Collision as err:
            logger.warning(f"decompose_blocks attempt {attempt}/{attempts}: {err}")
            continue
        result = BlockDecomposition(
            blocks=tuple(blocks),
            central_projections=tuple(BlockElement(left_shape, p) for p in projections),
            units=MatrixUnitSystem(units, tuple(blocks)),
            seed=seed,
            attempts=attempt,
        )
        logger.debug(f"decompose: blocks {list(result.blocks)}")
        return result

    raise BlockCollisionError(
        f"Central eigenvalues kept colliding after {attempts} attempts (seed {seed})"
    )
