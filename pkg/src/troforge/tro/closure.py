"""Ternary closure
================

The TRO generated by ``g_1, ..., g_r`` is spanned by the odd alternating words
``g_{i1} g_{i2}* g_{i3} ... g_{i(2l+1)}``. :func:`tro_closure` grows this span
length by length, semi-naively: only the words accepted at the previous length
are extended, first by a starred generator (even words, square left-shaped
blocks, deduplicated in their own span) and then by a generator.

Every basis vector of the result comes from one accepted word, so the words
recorded in :class:`ClosureResult` span the same subspace in the same order.

"""
import itertools
from dataclasses import dataclass, field

import numpy as np

from ..errors import EmptyGeneratorsError, WordCapError
from ..log import logger
from ..matrix import SpanBuilder, ToleranceConfig, _check_shapes, stack_elements

#: Maximum number of candidate products materialized at once
CHUNK_SIZE = 2048
#: Rejected odd words kept per round (they feed the antiautomorphism residual)
REJECTED_PER_ROUND = 64


@dataclass(frozen=True, eq=False)
class ClosureResult:
    """TRO span of a generator family.

    Attributes
    ----------
    space: Subspace
    iterations: int
        Number of extension rounds (each adds two letters to the words).
    generator_count: int
    gens: tuple of BlockElement
    words: tuple of tuple of int
        Source word of each basis vector (generator indices, 0-based).
    rejected_words: tuple of tuple of int
        Sample of odd words which were linearly dependent on shorter ones.

    """

    space: object
    iterations: int
    generator_count: int
    gens: tuple = field(repr=False)
    words: tuple = field(repr=False)
    rejected_words: tuple = field(default=(), repr=False)

    @property
    def dim(self):
        return self.space.dim

    @property
    def shape(self):
        return self.space.ambient

    @property
    def word_length(self):
        return max((len(word) for word in self.words), default=0)

    def to_dict(self):
        return {
            "dim": self.dim,
            "ambient": self.shape.to_json(),
            "iterations": self.iterations,
            "generator_count": self.generator_count,
            "word_length": self.word_length,
        }


def evaluate_word(gens, word):
    """Alternating product ``g_{w0} g_{w1}* g_{w2} ...`` (0-based indices)."""
    result = gens[word[0]]
    for position, index in enumerate(word[1:]):
        factor = gens[index].adjoint() if position % 2 == 0 else gens[index]
        result = result.dot(factor)
    return result


def _chunks(count, size=CHUNK_SIZE):
    for start in range(0, count, size):
        yield start, min(count, start + size)


def _times_adjoint(words, gen_stacks):
    """All products ``w g*`` as per-block stacks, ordered word-major."""
    return [
        np.einsum("wij,gkj->wgik", word, np.conj(gen)).reshape(-1, word.shape[1], gen.shape[1])
        for word, gen in zip(words, gen_stacks)
    ]


def _times(words, gen_stacks):
    """All products ``w g`` as per-block stacks, ordered word-major."""
    return [
        np.einsum("wij,gjk->wgik", word, gen).reshape(-1, word.shape[1], gen.shape[2])
        for word, gen in zip(words, gen_stacks)
    ]


def _flatten(parts):
    count = parts[0].shape[0]
    return np.concatenate([part.reshape(count, -1) for part in parts], axis=1)


def _unflatten(vectors, dims):
    parts, start = [], 0
    for rows, cols in dims:
        stop = start + rows * cols
        parts.append(vectors[:, start:stop].reshape(-1, rows, cols))
        start = stop
    return parts


def _extend(builder, frontier_words, frontier, gen_stacks, product, dims, rejected):
    """Extend every frontier word by every generator; returns the accepted ones."""
    gen_count = gen_stacks[0].shape[0]
    accepted_words, accepted_vectors = [], []
    for start, stop in _chunks(len(frontier_words), max(1, CHUNK_SIZE // gen_count)):
        parts = product([part[start:stop] for part in frontier], gen_stacks)
        vectors = _flatten(parts)
        mask = builder.extend(vectors)
        words = [
            word + (index,)
            for word in frontier_words[start:stop]
            for index in range(gen_count)
        ]
        accepted_words.extend(word for word, keep in zip(words, mask) if keep)
        accepted_vectors.append(vectors[mask])
        if rejected is not None and len(rejected) < REJECTED_PER_ROUND:
            rejected.extend(word for word, keep in zip(words, mask) if not keep)
            del rejected[REJECTED_PER_ROUND:]
    width = sum(rows * cols for rows, cols in dims)
    if accepted_vectors:
        vectors = np.concatenate(accepted_vectors)
    else:
        vectors = np.empty((0, width), dtype=complex)
    return accepted_words, _unflatten(vectors, dims)


def tro_closure(gens, tol=None, max_word_length=None):
    """Smallest subspace containing ``gens`` and closed under ``x y* z``.

    Parameters
    ----------
    gens: list of BlockElement
    tol: ToleranceConfig
    max_word_length: int, optional
        Longest word allowed; unbounded by default (the ambient dimension
        always bounds the number of rounds).

    Raises
    ------
    WordCapError
        If words longer than ``max_word_length`` still enlarge the span.

    """
    gens = list(gens)
    if not gens:
        raise EmptyGeneratorsError("Cannot close an empty generator list")
    shape = _check_shapes(*gens)
    tol = tol or ToleranceConfig()

    gen_stacks = shape.split_stack(stack_elements(gens))
    left_dims = [(rows, rows) for rows, _ in shape]

    odd = SpanBuilder(shape.size, tol)
    even = SpanBuilder(shape.left().size, tol)
    mask = odd.extend(stack_elements(gens))
    words = [(int(index),) for index in np.flatnonzero(mask)]
    frontier_words = list(words)
    frontier = [stack[mask] for stack in gen_stacks]
    rejected_words = []

    iterations = 0
    while frontier_words and not odd.full:
        length = 2 * iterations + 3
        iterations += 1
        even_words, even_frontier = _extend(
            even, frontier_words, frontier, gen_stacks, _times_adjoint, left_dims, None
        )
        rejected = []
        frontier_words, frontier = _extend(
            odd, even_words, even_frontier, gen_stacks, _times, shape.blocks, rejected
        )
        rejected_words.extend(rejected)
        words.extend(frontier_words)
        logger.debug(
            f"closure round {iterations}: words of length {length}, "
            f"+{len(frontier_words)} -> dim {odd.dim}"
        )
        if frontier_words and max_word_length is not None and length > max_word_length:
            raise WordCapError(
                f"Words of length {length} > {max_word_length} still enlarge the "
                f"span (dim {odd.dim})"
            )

    result = ClosureResult(
        space=odd.subspace(shape),
        iterations=iterations,
        generator_count=len(gens),
        gens=tuple(gens),
        words=tuple(words),
        rejected_words=tuple(rejected_words),
    )
    logger.debug(f"closure: dim {result.dim} after {iterations} rounds")
    return result


def closure_defect(space, tol=None, rng=None, samples=200, exhaustive_max_dim=12):
    """Largest residual of ``b_i b_j* b_k`` outside ``space``.

    Exhaustive over basis triples when ``space.dim <= exhaustive_max_dim``,
    otherwise over ``samples`` random triples.

    """
    dim = space.dim
    if dim == 0:
        return 0.0
    stacks = space.ambient.split_stack(space.vectors)
    if dim <= exhaustive_max_dim:
        pairs = itertools.product(range(dim), repeat=2)
        defect = 0.0
        for i, j in pairs:
            parts = [stack[i] @ np.conj(stack[j]).T @ stack for stack in stacks]
            defect = max(defect, float(np.max(space.residual_norms(_flatten(parts)))))
        return defect

    rng = rng or np.random.default_rng()
    triples = rng.integers(0, dim, size=(samples, 3))
    parts = [
        stack[triples[:, 0]] @ np.conj(stack[triples[:, 1]]).transpose(0, 2, 1)
        @ stack[triples[:, 2]]
        for stack in stacks
    ]
    return float(np.max(space.residual_norms(_flatten(parts))))
