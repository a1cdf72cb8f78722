"""Exact verification toolkit for Bethe algebras of V^{(x)n} (x) C[z] and
the equivariant cohomology of partial flag varieties."""

__version__ = "0.1.0"
