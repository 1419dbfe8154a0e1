"""Runtime parameters
=====================
Parameter tree shared by the command line interface and the sweep.

.. code-block:: none

    params.seed
    params.tolerance.{rank_tol, eq_tol}
    params.output.{format, path_dir}
    params.caps.{spin_k, type1_nm, type23_n, rank1_n, max_word_length}
    params.sweep.jobs

Values are overridden in this order: defaults, user configuration file (see
:mod:`troforge.config`), command line flags and finally the environment
variable ``TROFORGE_SEED``.

"""
import os
import textwrap

from fluidsim_core.params import Parameters as _Parameters

from .const import DEFAULT_EQ_TOL, DEFAULT_RANK_TOL, DEFAULT_SEED, DESK_CAPS
from .log import logger
from .matrix import ToleranceConfig

#: Accepted values of ``params.output.format``
OUTPUT_FORMATS = ("json", "markdown")


class Parameters(_Parameters):
    """Container of the runtime parameters (a fluiddyn ``ParamContainer``)."""

    @classmethod
    def _load_params_simul(cls, path=None):
        raise NotImplementedError("troforge runs are not saved on disk")


def create_default_params():
    """Generate the default parameter tree."""
    params = Parameters(tag="params")
    params._set_attrib("seed", DEFAULT_SEED)
    params._set_doc(
        textwrap.dedent(
            """
    - ``seed``: int

      Seed of every randomized step (central element, tripotent draw,
      property sampling). Overridden by the environment variable
      ``TROFORGE_SEED``.
"""
        )
    )

    params._set_child(
        "tolerance",
        attribs=dict(rank_tol=DEFAULT_RANK_TOL, eq_tol=DEFAULT_EQ_TOL),
        doc=textwrap.dedent(
            """
    - ``rank_tol``: float

      A residual vector is treated as zero during orthogonalization below
      ``rank_tol * max(1, norm)``.

    - ``eq_tol``: float

      Threshold of matrix equality assertions, relative to operand norms.
"""
        ),
    )

    params._set_child(
        "output",
        attribs=dict(format="json", path_dir=None),
        doc=textwrap.dedent(
            """
    - ``format``: str, ``"json"`` or ``"markdown"``
    - ``path_dir``: str or None

      Directory where reports are written. Reports are printed on stdout when
      None.
"""
        ),
    )

    params._set_child(
        "caps",
        attribs=dict(**DESK_CAPS, max_word_length=None),
        doc=textwrap.dedent(
            """
    Desk scale limits of the sweep and of single computations.

    - ``spin_k``: largest spin system size ``k`` (spin factor of dimension k+1)
    - ``type1_nm``: largest product ``n m`` of rectangular factors
    - ``type23_n``: largest ``n`` of the hermitian and skew families
    - ``rank1_n``: largest dimension of rank one factors
    - ``max_word_length``: closure word length cap (None: unbounded)
"""
        ),
    )

    params._set_child(
        "sweep",
        attribs=dict(jobs=1),
        doc="""
    - ``jobs``: int, number of worker processes running the sweep rows
""",
    )
    return params


def complete_params_from_dict(params, data, path="params"):
    """Recursively set values of ``params`` from a nested dictionary.

    Raises
    ------
    ValueError
        For keys which are not part of the tree.

    """
    for key, value in data.items():
        if key in params._tag_children:
            if not isinstance(value, dict):
                raise ValueError(f"{path}.{key} is a section, got {value!r}")
            complete_params_from_dict(getattr(params, key), value, f"{path}.{key}")
            continue
        try:
            setattr(params, key, value)
        except AttributeError as err:
            raise ValueError(f"Unknown parameter {path}.{key}") from err


def apply_seed_override(params):
    """Apply the environment variable ``TROFORGE_SEED``, if set."""
    seed = os.getenv("TROFORGE_SEED")
    if seed:
        try:
            params.seed = int(seed)
        except ValueError as err:
            raise ValueError(f"TROFORGE_SEED = {seed!r} is not an integer") from err
        logger.debug(f"seed {params.seed} from TROFORGE_SEED")
    return params


def check_params(params):
    """Validate tolerances, output format and caps.

    Raises
    ------
    ValueError

    """
    tolerance_from_params(params)
    if params.output.format not in OUTPUT_FORMATS:
        raise ValueError(
            f"params.output.format = {params.output.format!r} not in {OUTPUT_FORMATS}"
        )
    for name, limit in DESK_CAPS.items():
        value = getattr(params.caps, name)
        if not isinstance(value, int) or not 1 <= value <= limit:
            raise ValueError(f"params.caps.{name} = {value!r} should be in [1, {limit}]")
    max_word_length = params.caps.max_word_length
    if max_word_length is not None and (
        not isinstance(max_word_length, int) or max_word_length < 1
    ):
        raise ValueError(f"params.caps.max_word_length = {max_word_length!r}")
    if not isinstance(params.sweep.jobs, int) or params.sweep.jobs < 1:
        raise ValueError(f"params.sweep.jobs = {params.sweep.jobs!r} should be >= 1")
    if not isinstance(params.seed, int):
        raise ValueError(f"params.seed = {params.seed!r} should be an integer")


def tolerance_from_params(params):
    """:class:`troforge.matrix.ToleranceConfig` of ``params.tolerance``."""
    return ToleranceConfig(
        rank_tol=float(params.tolerance.rank_tol),
        eq_tol=float(params.tolerance.eq_tol),
    )
