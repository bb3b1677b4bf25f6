"""Slarc diagram algebras: diagrams, modules, resolutions, and their invariants."""

__version__ = "0.1.0"

from .algebra import MINUS, PLUS, AlgebraElement, multiply  # noqa: E402
from .diagram import Diagram, compose, enumerate_basis  # noqa: E402
from .linalg import Field, use_field  # noqa: E402

__all__ = [
    "MINUS", "PLUS", "AlgebraElement", "Diagram", "Field", "compose", "enumerate_basis", "multiply",
    "use_field", "__version__",
]
