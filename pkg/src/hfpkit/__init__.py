"""Finite equivariant simplicial homotopy: homotopy fixed points, cohomology and descent."""

__version__ = "0.1.0"
