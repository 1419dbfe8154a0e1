"""Reports
==========

Rendering of report dictionaries as JSON or Markdown, and the sweep table.

JSON reports are byte stable for a given seed and configuration: keys are
sorted and floats rounded to :data:`DIGITS` significant digits.

"""
import json
import math
import numbers
from pathlib import Path

import numpy as np
import pandas as pd

from .log import logger
from .resources import get_base_template
from .util.files import next_path

#: Significant digits kept in reports
DIGITS = 6

#: Columns of the sweep table
SWEEP_COLUMNS = ["spec", "factor_dim", "envelope_dim", "expected_dim", "blocks", "pass"]

SUFFIXES = {"json": ".json", "markdown": ".md"}


def _round(value, digits=DIGITS):
    if not math.isfinite(value):
        return None
    if value == 0:
        return 0.0
    return float(f"{value:.{digits}g}")


def jsonable(obj, digits=DIGITS):
    """Convert a report to plain JSON types, rounding floats."""
    if isinstance(obj, dict):
        return {str(key): jsonable(value, digits) for key, value in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [jsonable(value, digits) for value in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, numbers.Integral):
        return int(obj)
    if isinstance(obj, numbers.Real):
        return _round(float(obj), digits)
    if isinstance(obj, numbers.Complex):
        return [_round(obj.real, digits), _round(obj.imag, digits)]
    return obj


def to_json(report):
    return json.dumps(jsonable(report), indent=2, sort_keys=True) + "\n"


def render_markdown(template_name, **context):
    """Render a template of :mod:`troforge.resources`."""
    template = get_base_template(template_name)
    return template.render(**jsonable(context))


def render(report, fmt="json", template_name=None):
    """Render ``report`` in the format ``fmt`` (``"json"`` or ``"markdown"``)."""
    if fmt == "json":
        return to_json(report)
    if fmt == "markdown":
        return render_markdown(template_name, report=report)
    raise ValueError(f"Unknown output format {fmt!r}")


def write_report(text, path_dir, stem, fmt="json"):
    """Write ``text`` in ``path_dir`` without overwriting an existing report.

    Returns
    -------
    path: Path

    """
    path_dir = Path(path_dir)
    path_dir.mkdir(parents=True, exist_ok=True)
    path = next_path(path_dir / f"{stem}{SUFFIXES[fmt]}")
    path.write_text(text)
    logger.info(f"Report written to {path}")
    return path


def emit(text, path_dir=None, stem="report", fmt="json"):
    """Print ``text`` or write it in ``path_dir``."""
    if path_dir is None:
        print(text, end="")
        return None
    return write_report(text, path_dir, stem, fmt)


def sweep_table(rows):
    """:class:`pandas.DataFrame` of envelope report rows, in the given order."""
    records = [{column: row[column] for column in SWEEP_COLUMNS} for row in rows]
    return pd.DataFrame.from_records(records, columns=SWEEP_COLUMNS)


def render_sweep(table, fmt="json", **meta):
    """Render the sweep table, with ``meta`` (seed, tolerances) echoed."""
    rows = table.to_dict(orient="records")
    if fmt == "json":
        return to_json({"rows": rows, "all_pass": bool(table["pass"].all()), **meta})
    if fmt == "markdown":
        return render_markdown("sweep.md.j2", rows=rows, **meta)
    raise ValueError(f"Unknown output format {fmt!r}")
