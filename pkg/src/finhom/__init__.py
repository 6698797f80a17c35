"""finhom: exact homological workbench for finite-dimensional bound quiver algebras."""

from .exactlin import FieldSpec, ExactMatrix, QQ

__all__ = ["FieldSpec", "ExactMatrix", "QQ"]

__version__ = "0.1.0"
