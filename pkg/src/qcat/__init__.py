"""Exact subquotient calculus for matrix categories.

Objects are cospans of matrices, read as formal subquotients
im(gens)/(im(rels) ∩ im(gens)) of a free row module; morphisms are matrices
between the generator ranks that respect syzygies.  The package provides
fully algorithmic cokernels, images, lifts, colifts and, over backends with
finite syzygies, kernels — over Z, GF(p), and the non-coherent quotient ring
k[x_i, z]/(x_i z), where only the syzygy-inclusion decision survives.
"""

from .rings import GF, Matrix, ZZ, decide_lift, matmul, row_syzygies

__all__ = [
    "GF",
    "Matrix",
    "ZZ",
    "decide_lift",
    "matmul",
    "row_syzygies",
]
