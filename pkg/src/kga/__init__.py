"""Exact combinatorics of finite higher-rank graphs."""

from .core import Edge, Skeleton, Square, make_skeleton, validate
from .paths import Path, normalize, path

__version__ = "0.1.0"

__all__ = ["Edge", "Path", "Skeleton", "Square", "make_skeleton", "normalize", "path", "validate"]
