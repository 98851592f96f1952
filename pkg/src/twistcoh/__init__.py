"""Exact computation of twisted cohomology of Artin groups of types A and B
(and, by transfer, affine type A~ and the Tong-Yang-Ma coefficients)."""

__version__ = "0.1.0"
