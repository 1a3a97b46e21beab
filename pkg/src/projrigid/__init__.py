"""Exact twisted cohomology and projective rigidity checks for cusped hyperbolic 3-manifolds."""

__version__ = "0.1.0"
