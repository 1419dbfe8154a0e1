"""Factor specifications and envelope reports
===========================================

"""
import re
from dataclasses import dataclass, field, replace

from ..const import DEFAULT_SEED, EXCEPTIONAL_FACTOR_DIMS
from ..log import logger
from ..matrix import ToleranceConfig, span_basis
from ..tro import decompose_blocks, tro_closure

FAMILIES = ("I", "II", "III", "IV", "V", "VI")

_parameter_names = {
    "I": ("n", "m"),
    "II": ("n",),
    "III": ("n",),
    "IV": ("dim",),
    "V": (),
    "VI": (),
}


@dataclass(frozen=True)
class CartanSpec:
    """A finite dimensional Cartan factor.

    ``I(n, m)`` rectangular ``M_{n,m}``, ``II(n)`` skew symmetric and ``III(n)``
    symmetric ``n x n`` matrices, ``IV(dim)`` the spin factor of dimension
    ``dim = k + 1``, ``V`` and ``VI`` the exceptional factors.

    """

    family: str
    params: tuple = ()

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"Unknown family {self.family!r}, expected one of {FAMILIES}")
        params = tuple(int(p) for p in self.params)
        names = _parameter_names[self.family]
        if len(params) != len(names):
            raise ValueError(f"Family {self.family} expects parameters {names}")
        if any(p < 1 for p in params):
            raise ValueError(f"Parameters should be positive: {params}")
        if self.family == "IV" and params[0] < 3:
            raise ValueError("Spin factors have dimension at least 3")
        object.__setattr__(self, "params", params)

    @classmethod
    def type1(cls, n, m):
        return cls("I", (n, m))

    @classmethod
    def type2(cls, n):
        return cls("II", (n,))

    @classmethod
    def type3(cls, n):
        return cls("III", (n,))

    @classmethod
    def type4(cls, dim):
        return cls("IV", (dim,))

    @classmethod
    def parse(cls, text):
        """Parse ``"I:2,3"``, ``"IV:5"`` or ``"V"``."""
        match = re.fullmatch(r"\s*([IV]+)\s*(?::\s*([\d,\s]*))?", text)
        if not match:
            raise ValueError(f"Cannot parse factor specification {text!r}")
        family, params = match.groups()
        values = [int(p) for p in re.split(r"[,\s]+", params.strip())] if params else []
        return cls(family, tuple(values))

    def as_dict(self):
        return dict(zip(_parameter_names[self.family], self.params))

    def __str__(self):
        if not self.params:
            return self.family
        return f"{self.family}({', '.join(str(p) for p in self.params)})"

    @property
    def factor_dim(self):
        if self.family == "I":
            n, m = self.params
            return n * m
        if self.family == "II":
            n = self.params[0]
            return n * (n - 1) // 2
        if self.family == "III":
            n = self.params[0]
            return n * (n + 1) // 2
        if self.family == "IV":
            return self.params[0]
        return EXCEPTIONAL_FACTOR_DIMS[self.family]


@dataclass(frozen=True, eq=False)
class EnvelopeReport:
    """Universal enveloping TRO of a factor and the verdicts of its theorem.

    ``checks`` maps the name of each verified statement to a boolean;
    ``theorem_pass`` is true iff all of them hold.

    """

    spec: CartanSpec
    factor_dim: int
    realization: object
    envelope: object
    blocks: object
    expected_blocks: tuple
    expected_dim: int
    checks: dict = field(default_factory=dict)
    theta_residual: float = None
    seed: int = DEFAULT_SEED
    gens: tuple = field(default=(), repr=False)

    @property
    def envelope_dim(self):
        return 0 if self.envelope is None else self.envelope.dim

    @property
    def computed_blocks(self):
        return [] if self.blocks is None else list(self.blocks.blocks)

    @property
    def theorem_pass(self):
        return all(self.checks.values())

    def with_checks(self, **checks):
        merged = dict(self.checks)
        merged.update(checks)
        return replace(self, checks=merged)

    def to_dict(self):
        return {
            "spec": str(self.spec),
            "factor_dim": self.factor_dim,
            "envelope_dim": self.envelope_dim,
            "expected_dim": self.expected_dim,
            "blocks": [list(block) for block in self.computed_blocks],
            "expected": [list(block) for block in self.expected_blocks],
            "pass": self.theorem_pass,
            "checks": dict(self.checks),
            "theta_residual": self.theta_residual,
            "seed": self.seed,
        }


def same_blocks(blocks, expected):
    return sorted(tuple(b) for b in blocks) == sorted(tuple(b) for b in expected)


def build_report(
    spec,
    gens,
    expected_blocks,
    expected_dim,
    tol=None,
    seed=DEFAULT_SEED,
    max_word_length=None,
    upper_bound=None,
    **checks,
):
    """Close ``gens``, decompose the closure and collect the common verdicts.

    Family specific verdicts are passed as keyword arguments.

    """
    tol = tol or ToleranceConfig()
    realization = span_basis(gens, tol)
    closure = tro_closure(gens, tol, max_word_length)
    decomposition = decompose_blocks(closure, tol, seed)

    verdicts = {
        "realization_dim": realization.dim == spec.factor_dim,
        "envelope_dim": closure.dim == expected_dim,
        "blocks": same_blocks(decomposition.blocks, expected_blocks),
    }
    if upper_bound is not None:
        verdicts["upper_bound"] = closure.dim <= upper_bound
    verdicts.update(checks)

    report = EnvelopeReport(
        spec=spec,
        factor_dim=spec.factor_dim,
        realization=realization,
        envelope=closure,
        blocks=decomposition,
        expected_blocks=tuple(tuple(b) for b in expected_blocks),
        expected_dim=expected_dim,
        checks=verdicts,
        seed=seed,
        gens=tuple(gens),
    )
    failed = [name for name, ok in verdicts.items() if not ok]
    if failed:
        logger.info(f"{spec}: envelope dim {closure.dim}, FAILED {failed}")
    else:
        logger.info(f"{spec}: envelope dim {closure.dim}, blocks {report.computed_blocks}")
    return report
