"""Abelian triples and radicals
=============================

Abelian triple detection, diagonalization of abelian triples by orthogonal
tripotents, their characters, the radical of a finite dimensional TRO and the
dimension bookkeeping of the exact sequence

.. code-block:: none

    0 -> R(T) ⊕ θ(R(T)) -> T*(T) -> C_0^T(Epi(T, C)) -> 0

.. autosummary::

   is_abelian
   orthogonal_tripotent_basis
   characters
   radical
   exact_sequence_report
   is_reversible

"""
import itertools
import math
from dataclasses import dataclass, field, replace

import numpy as np
from scipy import linalg

from .const import DEFAULT_SEED
from .envelopes import cross_check_envelope_of_tro, envelope_of_tro
from .errors import (
    CharacterError,
    HilbertBlockError,
    NotAbelianError,
    NotInvariantError,
    NotSubtripleError,
)
from .log import logger
from .matrix import (
    BlockElement,
    BlockShape,
    Subspace,
    ToleranceConfig,
    contains,
    span_basis,
    subspace_equal,
)
from .tro import decompose_blocks, tro_closure
from .triple import box_operator, is_tripotent, jordan_triple

#: Above this dimension, abelian identities are checked on random 5-tuples
ABELIAN_EXHAUSTIVE_MAX_DIM = 8
ABELIAN_SAMPLES = 1000
REVERSIBLE_EXHAUSTIVE_MAX_TUPLES = 20_000
REVERSIBLE_SAMPLES = 2000
MAX_ATTEMPTS = 5


def _triples(x_parts, y_parts, z_stacks):
    """``{x, y, z}`` for one x, one y and a stack of z, per block."""
    out = []
    for x, y, z in zip(x_parts, y_parts, z_stacks):
        y_adj = np.conj(y).T
        out.append(0.5 * (x @ y_adj @ z + z @ y_adj @ x))
    return out


def _flat(parts):
    count = parts[0].shape[0]
    return np.concatenate([part.reshape(count, -1) for part in parts], axis=1)


def check_subtriple(space, tol=None, rng=None, samples=500):
    """Raise :class:`NotSubtripleError` if ``{b_i, b_j, b_k}`` leaves ``space``."""
    tol = tol or ToleranceConfig()
    dim = space.dim
    stacks = space.ambient.split_stack(space.vectors)
    if dim ** 3 <= samples:
        pairs = itertools.product(range(dim), repeat=2)
    else:
        rng = rng or np.random.default_rng(DEFAULT_SEED)
        pairs = rng.integers(0, dim, size=(samples // max(dim, 1) + 1, 2))
    for i, j in pairs:
        images = _flat(_triples([s[i] for s in stacks], [s[j] for s in stacks], stacks))
        residual = float(np.max(space.residual_norms(images)))
        if residual > tol.eq_tol:
            raise NotSubtripleError(f"Subspace not closed under the triple product ({residual:.3g})")


def is_abelian(space, tol=None, seed=DEFAULT_SEED):
    """True iff ``{{a,b,c},d,e} = {a,{b,c,d},e} = {a,b,{c,d,e}}`` on ``space``.

    Exhaustive over basis 5-tuples up to dimension 8, sampled beyond.

    Raises
    ------
    NotSubtripleError
        If ``space`` is not closed under the triple product.

    """
    tol = tol or ToleranceConfig()
    rng = np.random.default_rng(seed)
    check_subtriple(space, tol, rng)
    dim = space.dim
    if dim == 0:
        return True
    stacks = space.ambient.split_stack(space.vectors)

    def part(index):
        return [s[index] for s in stacks]

    if dim > ABELIAN_EXHAUSTIVE_MAX_DIM:
        basis = space.basis
        for a, b, c, d, e in rng.integers(0, dim, size=(ABELIAN_SAMPLES, 5)):
            x, y, z, u, v = (basis[i] for i in (a, b, c, d, e))
            first = jordan_triple(jordan_triple(x, y, z), u, v)
            second = jordan_triple(x, jordan_triple(y, z, u), v)
            third = jordan_triple(x, y, jordan_triple(z, u, v))
            scale = max(1.0, first.norm())
            if first.distance(second) > tol.eq_tol * scale:
                return False
            if first.distance(third) > tol.eq_tol * scale:
                return False
        return True

    # inner[a][b] holds {b_a, b_b, z} for the stack of all z
    inner = [[_triples(part(a), part(b), stacks) for b in range(dim)] for a in range(dim)]
    for a, b, c, d in itertools.product(range(dim), repeat=4):
        abc = [stack[c] for stack in inner[a][b]]
        bcd = [stack[d] for stack in inner[b][c]]
        cd_stack = inner[c][d]
        first = _flat(_triples(abc, part(d), stacks))
        second = _flat(_triples(part(a), bcd, stacks))
        third = _flat(_triples(part(a), part(b), cd_stack))
        scale = max(1.0, float(np.max(np.linalg.norm(first, axis=1))))
        if np.max(np.linalg.norm(first - second, axis=1)) > tol.eq_tol * scale:
            return False
        if np.max(np.linalg.norm(first - third, axis=1)) > tol.eq_tol * scale:
            return False
    return True


def _cluster(values, rtol=1e-6):
    order = np.argsort(values)[::-1]
    scale = max(float(values[order[0]]), 1e-300)
    groups = [[order[0]]]
    for previous, current in zip(order[:-1], order[1:]):
        if values[previous] - values[current] > rtol * scale:
            groups.append([])
        groups[-1].append(current)
    return groups


def _diagonalize(x, threshold):
    """Partial isometry parts of ``x`` grouped by singular value, across blocks."""
    values, pieces = [], []
    for block, part in enumerate(x.parts):
        u, s, vh = linalg.svd(part, full_matrices=False)
        for index, value in enumerate(s):
            if value > threshold:
                values.append(value)
                pieces.append((block, np.outer(u[:, index], vh[index])))
    if not values:
        return []
    tripotents = []
    for group in _cluster(np.array(values)):
        parts = [np.zeros(dims, dtype=complex) for dims in x.shape]
        for index in group:
            block, piece = pieces[index]
            parts[block] += piece
        tripotents.append(BlockElement(x.shape, parts))
    return tripotents


def orthogonal_tripotent_basis(space, tol=None, seed=DEFAULT_SEED):
    """Pairwise orthogonal tripotents spanning the abelian triple ``space``.

    The singular vectors of a random element are grouped by singular value;
    the draw is repeated when the result is not a valid basis.

    Raises
    ------
    NotAbelianError
        After five failed draws.

    """
    tol = tol or ToleranceConfig()
    rng = np.random.default_rng(seed)
    if space.dim == 0:
        return []
    for attempt in range(1, MAX_ATTEMPTS + 1):
        x = space.random_element(rng)
        tripotents = _diagonalize(x, tol.rank_threshold(x.norm()))
        problem = _basis_problem(space, tripotents, tol)
        if problem is None:
            return tripotents
        logger.warning(f"orthogonal_tripotent_basis attempt {attempt}: {problem}")
    raise NotAbelianError(
        f"No orthogonal tripotent basis after {MAX_ATTEMPTS} draws: "
        "the subspace is not abelian at this tolerance"
    )


def _basis_problem(space, tripotents, tol):
    if len(tripotents) != space.dim:
        return f"{len(tripotents)} tripotents for dimension {space.dim}"
    if not all(contains(space, e, tol) for e in tripotents):
        return "a tripotent leaves the subspace"
    if not all(is_tripotent(e, tol) for e in tripotents):
        return "not a tripotent"
    for e, f in itertools.combinations(tripotents, 2):
        try:
            box = box_operator(e, f, space, tol).matrix
        except NotInvariantError:
            return "the subspace is not invariant under e□f"
        if np.linalg.norm(box) > tol.eq_tol:
            return "tripotents are not orthogonal"
    return None


@dataclass(frozen=True, eq=False)
class CharacterFamily:
    """Base characters ``φ_k(z) = <z, e_k> / <e_k, e_k>`` of an abelian triple.

    All characters are ``λ φ_k`` with ``λ`` in the circle group.

    """

    space: Subspace
    tripotents: tuple
    torus_note: str = "characters = T x base_characters"

    def __len__(self):
        return len(self.tripotents)

    @property
    def functionals(self):
        rows = [np.conj(e.vector) / e.norm() ** 2 for e in self.tripotents]
        return np.array(rows).reshape(len(rows), self.space.ambient.size)

    def __call__(self, z):
        return self.functionals @ z.vector


def _character_defect(functionals, elements, rng, samples=500):
    """Largest ``|φ({a, b, c}) - φ(a) conj(φ(b)) φ(c)|`` over basis triples."""
    count = len(elements)
    if count**3 <= samples:
        triples = itertools.product(range(count), repeat=3)
    else:
        triples = rng.integers(0, count, size=(samples, 3))
    values = [functionals @ x.vector for x in elements]
    defect = 0.0
    for i, j, k in triples:
        lhs = functionals @ jordan_triple(elements[i], elements[j], elements[k]).vector
        rhs = values[i] * np.conj(values[j]) * values[k]
        defect = max(defect, float(np.max(np.abs(lhs - rhs), initial=0.0)))
    return defect


def characters(space, tol=None, seed=DEFAULT_SEED):
    """Base characters of the abelian triple ``space``.

    Raises
    ------
    CharacterError
        If some coordinate functional is not multiplicative.

    """
    tol = tol or ToleranceConfig()
    family = CharacterFamily(space, tuple(orthogonal_tripotent_basis(space, tol, seed)))
    if not len(family):
        return family
    rng = np.random.default_rng(seed)
    defect = _character_defect(family.functionals, list(space.basis), rng)
    if defect > tol.eq_tol:
        raise CharacterError(f"Coordinate functionals are not multiplicative ({defect:.3g})")
    return family


@dataclass(frozen=True)
class SequenceDims:
    left: int
    middle: int
    right: int
    cross_checked_middle: int = None

    @property
    def exact(self):
        exact = self.left + self.right == self.middle
        if self.cross_checked_middle is not None:
            exact = exact and self.cross_checked_middle == self.middle
        return exact

    def to_dict(self):
        return {
            "left": self.left,
            "middle": self.middle,
            "right": self.right,
            "cross_checked_middle": self.cross_checked_middle,
            "exact": self.exact,
        }


@dataclass(frozen=True, eq=False)
class RadicalReport:
    tro_blocks: tuple
    radical_blocks: tuple
    abelian_quotient_dim: int
    radical_space: Subspace = field(repr=False)
    checks: dict = field(default_factory=dict)
    sequence: SequenceDims = None
    seed: int = DEFAULT_SEED

    @property
    def exact(self):
        return self.sequence is not None and self.sequence.exact

    @property
    def passed(self):
        return all(self.checks.values()) and (self.sequence is None or self.exact)

    def to_dict(self):
        result = {
            "blocks": [list(b) for b in self.tro_blocks],
            "radical_blocks": [list(b) for b in self.radical_blocks],
            "abelian_dim": self.abelian_quotient_dim,
            "radical_dim": self.radical_space.dim,
            "checks": dict(self.checks),
            "seed": self.seed,
        }
        result["sequence"] = None if self.sequence is None else self.sequence.to_dict()
        return result


def tro_from_blocks(blocks, tol=None):
    """Closure of the matrix units of ``⊕ M_{n,m}`` in block diagonal form."""
    shape = BlockShape(tuple(tuple(block) for block in blocks))
    return tro_closure(shape.matrix_units(), tol)


def radical(closure, tol=None, seed=DEFAULT_SEED):
    """Radical of a TRO: the common kernel of its characters.

    The characters are the coordinate functionals of the ``1 x 1`` blocks;
    the radical is spanned by the blocks with ``n m > 1``. Both descriptions
    are computed and compared.

    """
    tol = tol or ToleranceConfig()
    space = closure.space
    decomposition = decompose_blocks(closure, tol, seed)
    blocks = decomposition.units.block_dims
    units = decomposition.units.units

    radical_units = [
        unit for (alpha, _, _), unit in units.items() if math.prod(blocks[alpha - 1]) > 1
    ]
    abelian_units = [
        units[(alpha, 1, 1)]
        for alpha, dims in enumerate(blocks, start=1)
        if dims == (1, 1)
    ]
    if radical_units:
        radical_space = span_basis(radical_units, tol)
    else:
        radical_space = Subspace.zero(space.ambient)

    if abelian_units:
        functionals = np.array(
            [np.conj(u.vector) / u.norm() ** 2 for u in abelian_units]
        )
        coefficients = functionals @ space.vectors.T
        kernel = linalg.null_space(coefficients, rcond=tol.rank_tol)
        kernel_space = Subspace(space.ambient, kernel.T @ space.vectors)
        vanish = float(np.max(np.abs(functionals @ radical_space.vectors.T), initial=0.0))
        rng = np.random.default_rng(seed)
        multiplicative = _character_defect(functionals, list(space.basis), rng, samples=200)
    else:
        # no characters: the radical is the whole TRO
        kernel_space = space
        vanish = multiplicative = 0.0

    checks = {
        "characters_vanish": vanish < tol.eq_tol,
        "characters_multiplicative": multiplicative < tol.eq_tol,
        "kernel_equals_radical": subspace_equal(kernel_space, radical_space, tol),
    }
    radical_blocks = tuple(dims for dims in blocks if math.prod(dims) > 1)
    report = RadicalReport(
        tro_blocks=tuple(blocks),
        radical_blocks=radical_blocks,
        abelian_quotient_dim=len(abelian_units),
        radical_space=radical_space,
        checks=checks,
        seed=seed,
    )
    logger.info(
        f"radical: blocks {list(blocks)}, radical dim {radical_space.dim}, "
        f"{len(abelian_units)} characters"
    )
    return report


def exact_sequence_report(closure, tol=None, seed=DEFAULT_SEED, cross_check=True):
    """Dimensions of the exact sequence of the radical.

    ``left`` is the envelope dimension of the radical (``2 n m`` per block),
    ``right`` the number of characters and ``middle`` the envelope dimension of
    the TRO, confirmed by a closure computation for small ambient dimensions.

    Raises
    ------
    HilbertBlockError
        If a block ``(1, m)`` or ``(n, 1)`` with ``max(n, m) >= 2`` is present.

    """
    tol = tol or ToleranceConfig()
    report = radical(closure, tol, seed)
    hilbert = [dims for dims in report.tro_blocks if min(dims) == 1 and max(dims) > 1]
    if hilbert:
        raise HilbertBlockError(
            f"Hilbert space blocks {hilbert} are outside the hypotheses of the "
            "radical exact sequence"
        )
    left = envelope_of_tro(report.radical_blocks)[1] if report.radical_blocks else 0
    middle = envelope_of_tro(report.tro_blocks)[1] if report.tro_blocks else 0
    cross_checked = None
    if cross_check and report.tro_blocks:
        cross_checked = cross_check_envelope_of_tro(report.tro_blocks, tol)
    sequence = SequenceDims(left, middle, report.abelian_quotient_dim, cross_checked)
    logger.info(
        f"exact sequence: {left} + {sequence.right} = {middle} "
        f"({'exact' if sequence.exact else 'NOT exact'})"
    )
    return replace(report, sequence=sequence)


def is_reversible(space, tol=None, max_length=5, seed=DEFAULT_SEED):
    """True iff ``(x_1 x_2* x_3 ... x_r + x_r ... x_2* x_1) / 2`` stays in ``space``
    for basis tuples of every odd length ``3 <= r <= max_length``.

    Tuples are enumerated exhaustively up to 20 000 per length, sampled beyond.

    """
    tol = tol or ToleranceConfig()
    rng = np.random.default_rng(seed)
    basis = space.basis
    dim = len(basis)
    if dim == 0:
        return True
    for length in range(3, max_length + 1, 2):
        if dim**length <= REVERSIBLE_EXHAUSTIVE_MAX_TUPLES:
            tuples = itertools.product(range(dim), repeat=length)
        else:
            tuples = rng.integers(0, dim, size=(REVERSIBLE_SAMPLES, length))
        for indices in tuples:
            factors = [basis[i] for i in indices]
            forward = _alternating(factors)
            backward = _alternating(factors[::-1])
            if not contains(space, 0.5 * (forward + backward), tol):
                logger.debug(f"not reversible: witness {tuple(int(i) for i in indices)}")
                return False
    return True


def _alternating(factors):
    result = factors[0]
    for position, factor in enumerate(factors[1:]):
        result = result.dot(factor.adjoint() if position % 2 == 0 else factor)
    return result
