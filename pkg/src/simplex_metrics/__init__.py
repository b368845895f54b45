"""Exact square-volumes of simplices and checks of infinitesimal-simplex identities."""

from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "__version__"]
