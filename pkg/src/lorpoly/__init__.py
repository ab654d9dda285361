"""Lorentzian polyhedra with space-like normals: classical phase space and quantization."""
from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "__version__"]
