"""Random knot and knotoid diagrams as signed combinatorial maps."""

__version__ = "0.1.0"

from .maps import Diagram, DiagramError, KdgSyntaxError, classify, parse, serialize  # noqa: E402
from ._kernels import BACKEND  # noqa: E402

__all__ = ["BACKEND", "Diagram", "DiagramError", "KdgSyntaxError", "classify", "parse", "serialize", "__version__"]
