# isort: skip_file
"""
API reference

.. rubric:: Sub-packages

.. autosummary::
   :toctree:

   envelopes
   grids
   resources
   tro
   util

.. rubric:: Modules

.. autosummary::
   :toctree:

   cli
   config
   const
   errors
   log
   matrix
   output
   params
   radical
   triple

"""

from importlib import resources as _resources

try:
    from ._version import __version__
except ImportError:
    __version__ = "0.0.0"

from .log import logger  # noqa: F401


def get_resource(resource_name):
    """Fetches path of a file from subpackage ``troforge.resources``.

    Parameters
    ----------
    resource_name: str

        Name of a file packaged in :mod:`troforge.resources`

    """
    return _resources.files("troforge.resources") / resource_name


from .envelopes import envelope  # noqa: E402
from .grids import verify_grid  # noqa: E402
from .tro import decompose_blocks, tro_closure  # noqa: E402

__all__ = [
    "__version__",
    "decompose_blocks",
    "envelope",
    "get_resource",
    "logger",
    "tro_closure",
    "verify_grid",
]
