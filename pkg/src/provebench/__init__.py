"""Benchmark construction funnel and evaluation harness for formal provers."""

from .errors import ProvebenchError

__version__ = "0.1.0"

__all__ = ["ProvebenchError", "__version__"]
