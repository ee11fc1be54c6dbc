"""Figure rendering for adp experiment CSVs.

Consumes only the CSV files written by the `adp` command line (the schema is
documented in that package's README); there is no in-process coupling.
"""

import os as _os

# File renderer: always headless, but respect an explicit user backend.
_os.environ.setdefault("MPLBACKEND", "Agg")
del _os

from .csvio import MissingColumnError, Table, read_table
from .render import FIGURE_KINDS, FigureSpec, render

__version__ = "0.1.0"

__all__ = [
    "FIGURE_KINDS",
    "FigureSpec",
    "MissingColumnError",
    "Table",
    "read_table",
    "render",
    "__version__",
]
