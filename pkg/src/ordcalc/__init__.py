"""Ordinal notations OT(𝕀_N): terms, order, collapse, validation and well-foundedness measures."""
from .config import get_N, set_N, use_N
from .order import compare, less
from .syntax import parse, show
from .validate import enumerate_valid, is_valid, validate

__all__ = [
    "compare", "enumerate_valid", "get_N", "is_valid", "less", "parse", "set_N",
    "show", "use_N", "validate",
]
