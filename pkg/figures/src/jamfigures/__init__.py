"""jamfigures: figure rendering for jamtexter CSV outputs."""

__version__ = "0.1.0"

from .render import FIGURE_KINDS, FigureSpec, render
from .schema import SchemaError, load_grid, load_losses, load_texting

__all__ = [
    "__version__",
    "FIGURE_KINDS",
    "FigureSpec",
    "render",
    "SchemaError",
    "load_grid",
    "load_losses",
    "load_texting",
]
