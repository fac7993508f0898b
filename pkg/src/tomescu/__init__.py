"""Exact k-coloring counts and extremal-graph checks for connectivity-constrained chromatic graphs."""

__version__ = "0.1.0"

from .graph import Graph  # noqa: E402
from .colorings import chromatic_polynomial, count_colorings  # noqa: E402

__all__ = ["Graph", "chromatic_polynomial", "count_colorings", "__version__"]
