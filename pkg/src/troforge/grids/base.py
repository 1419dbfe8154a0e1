"""Grids and their axiom verification
===================================

A :class:`Grid` is a family of tripotents indexed by integer tuples (labels).
Each grid family is a :class:`GridKind` subclass which knows

- its canonical labels,
- optional alias labels (``u_ji`` next to ``u_ij``) with the relation tying them
  to the canonical element,
- the structure constants: for an ordered triple of canonical labels, the axiom
  which fixes the product and its value as a combination of grid elements.

:func:`verify_grid` then evaluates every ordered triple exhaustively.

"""
import itertools
from dataclasses import dataclass
from types import MappingProxyType
from typing import ClassVar

import numpy as np

from ..errors import GridFormatError, ShapeMismatchError
from ..log import logger
from ..matrix import (
    ToleranceConfig,
    element_from_json,
    element_to_json,
    span_basis,
    stack_elements,
)

#: Axiom id of the tripotent condition ``{u, u, u} = u``
TRIPOTENT = "TRIP"

_registry = {}


def format_label(label):
    return ",".join(str(index) for index in label)


def parse_label(text):
    try:
        return tuple(int(index) for index in str(text).split(","))
    except ValueError as err:
        raise GridFormatError(f"Invalid index string {text!r}") from err


@dataclass(frozen=True)
class GridKind:
    """Base class of the grid families."""

    name: ClassVar[str] = ""

    def __init_subclass__(cls, **kwargs):
        super().__init_subclass__(**kwargs)
        if cls.name:
            _registry[cls.name] = cls

    def __str__(self):
        params = ", ".join(f"{key}={value}" for key, value in self.params().items())
        return f"{self.name}({params})"

    def params(self):
        return {
            key: value for key, value in self.__dict__.items() if not key.startswith("_")
        }

    def labels(self):
        """Canonical labels, in a fixed order."""
        raise NotImplementedError

    def aliases(self):
        """Tuples ``(axiom_id, alias, canonical, sign)`` meaning
        ``u[alias] = sign * u[canonical]``."""
        return ()

    def rule(self, x, y, z):
        """Axiom fixing ``{u_x, u_y, u_z}`` for canonical labels not all equal.

        Returns
        -------
        axiom_id: str
        expected: dict
            Maps canonical labels to coefficients; empty for a zero product.

        """
        raise NotImplementedError

    @classmethod
    def from_json(cls, name, params):
        try:
            Kind = _registry[name]
        except KeyError:
            raise GridFormatError(
                f"Unknown grid kind {name!r}, expected one of {sorted(_registry)}"
            )
        try:
            return Kind(**(params or {}))
        except (TypeError, ValueError) as err:
            raise GridFormatError(f"Invalid parameters for {name}: {err}") from err


def available_kinds():
    """Names of the registered grid families."""
    return sorted(_registry)


@dataclass(frozen=True, eq=False)
class Grid:
    """Typed family of tripotents.

    Parameters
    ----------
    kind: GridKind
    elements: mapping
        Label tuple to :class:`troforge.matrix.BlockElement`. All canonical labels
        of ``kind`` are required; alias labels are optional.

    """

    kind: GridKind
    elements: MappingProxyType

    def __post_init__(self):
        elements = dict(self.elements)
        if not elements:
            raise GridFormatError("A grid needs at least one element")
        canonical = list(self.kind.labels())
        allowed = set(canonical) | {alias for _, alias, _, _ in self.kind.aliases()}
        missing = [label for label in canonical if label not in elements]
        if missing:
            raise GridFormatError(
                f"{self.kind}: missing labels {[format_label(m) for m in missing]}"
            )
        unknown = [label for label in elements if label not in allowed]
        if unknown:
            raise GridFormatError(
                f"{self.kind}: unknown labels {[format_label(u) for u in unknown]}"
            )
        try:
            stack_elements(list(elements.values()))
        except ShapeMismatchError as err:
            raise GridFormatError(f"Grid elements do not share a shape: {err}") from err
        object.__setattr__(self, "elements", MappingProxyType(elements))

    def __getitem__(self, label):
        return self.elements[label]

    def __len__(self):
        return len(self.kind.labels())

    @property
    def shape(self):
        return next(iter(self.elements.values())).shape

    @property
    def labels(self):
        return list(self.kind.labels())

    def canonical_elements(self):
        return [self.elements[label] for label in self.kind.labels()]

    def span(self, tol=None):
        return span_basis(self.canonical_elements(), tol)

    def with_element(self, label, element):
        """Copy of the grid with one element replaced (used for mutations)."""
        elements = dict(self.elements)
        elements[label] = element
        return Grid(self.kind, elements)

    def to_json(self):
        return {
            "kind": self.kind.name,
            "params": self.kind.params(),
            "elements": {
                format_label(label): element_to_json(element)
                for label, element in self.elements.items()
            },
        }

    @classmethod
    def from_json(cls, obj):
        try:
            name, params, elements = obj["kind"], obj.get("params", {}), obj["elements"]
        except (KeyError, TypeError, AttributeError) as err:
            raise GridFormatError(f"Malformed grid JSON: {err}") from err
        if not isinstance(elements, dict):
            raise GridFormatError("Grid JSON: elements should map labels to elements")
        if not elements:
            raise GridFormatError("Grid JSON has an empty elements map")
        kind = GridKind.from_json(name, params)
        try:
            parsed = {
                parse_label(text): element_from_json(value)
                for text, value in elements.items()
            }
        except ValueError as err:
            raise GridFormatError(str(err)) from err
        return cls(kind, parsed)


@dataclass(frozen=True)
class Violation:
    axiom: str
    index: tuple
    residual: float

    def to_dict(self):
        return {"axiom": self.axiom, "index": _nested_list(self.index), "residual": self.residual}


def _nested_list(index):
    if isinstance(index, tuple):
        return [_nested_list(item) for item in index]
    return index


@dataclass(frozen=True)
class AxiomReport:
    """Outcome of an exhaustive axiom check.

    ``passed`` is true iff there is no violation.

    """

    kind: str
    violations: tuple
    checked: int = 0
    max_residual: float = 0.0

    @property
    def passed(self):
        return not self.violations

    @property
    def violated_axioms(self):
        return sorted({violation.axiom for violation in self.violations})

    def violations_of(self, axiom):
        return [violation for violation in self.violations if violation.axiom == axiom]

    def to_dict(self):
        return {
            "kind": self.kind,
            "passed": self.passed,
            "checked": self.checked,
            "max_residual": self.max_residual,
            "violations": [violation.to_dict() for violation in self.violations],
        }


class ResidualLog:
    """Collects residuals and violations of one verification run."""

    def __init__(self, tol):
        self.tol = tol
        self.violations = []
        self.checked = 0
        self.max_residual = 0.0

    def add(self, axiom, index, residual, scale):
        self.checked += 1
        residual = float(residual)
        self.max_residual = max(self.max_residual, residual)
        if residual > self.tol.eq_threshold(scale):
            self.violations.append(Violation(axiom, index, residual))

    def report(self, kind):
        violations = tuple(sorted(self.violations, key=lambda v: (v.axiom, v.index)))
        return AxiomReport(str(kind), violations, self.checked, self.max_residual)


def verify_grid(grid, tol=None):
    """Check every axiom of ``grid.kind`` on every ordered triple of grid elements.

    The tripotent condition is recorded under the id ``TRIP``, alias relations
    (``u_ji = ±u_ij``) under the first axiom of the family, and products under
    the axiom returned by :meth:`GridKind.rule`, including the "all other
    products vanish" clauses.

    """
    tol = tol or ToleranceConfig()
    kind = grid.kind
    labels = list(kind.labels())
    position = {label: index for index, label in enumerate(labels)}
    vectors = stack_elements(grid.canonical_elements())
    norms = np.linalg.norm(vectors, axis=1)
    stacks = grid.shape.split_stack(vectors)
    log = ResidualLog(tol)

    for axiom, alias, canonical, sign in kind.aliases():
        if alias in grid.elements:
            expected = sign * grid[canonical]
            log.add(axiom, canonical, grid[alias].distance(expected), expected.norm())

    count = len(labels)
    for ix, iy in itertools.product(range(count), repeat=2):
        # all products {u_x, u_y, u_z} for fixed x, y at once
        left = [stack[ix] @ np.conj(stack[iy]).T @ stack for stack in stacks]
        right = [stack @ np.conj(stack[iy]).T @ stack[ix] for stack in stacks]
        products = 0.5 * (grid.shape.join_stack(left) + grid.shape.join_stack(right))
        x, y = labels[ix], labels[iy]
        for iz, z in enumerate(labels):
            if x == y == z:
                axiom, expected = TRIPOTENT, {x: 1.0}
            else:
                axiom, expected = kind.rule(x, y, z)
            target = np.zeros(vectors.shape[1], dtype=complex)
            for label, coef in expected.items():
                target += coef * vectors[position[label]]
            residual = np.linalg.norm(products[iz] - target)
            log.add(axiom, (x, y, z), residual, norms[ix] * norms[iy] * norms[iz])

    report = log.report(kind)
    logger.debug(
        f"verify_grid {kind}: {report.checked} checks, "
        f"max residual {report.max_residual:.2e}, {len(report.violations)} violations"
    )
    return report
