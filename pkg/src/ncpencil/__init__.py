"""Exact computation with quadratic algebras over Q, Q(sqrt(d)) and F_p.

The package provides noncommutative Groebner bases with Hilbert series,
normal/regular element certification with normalizing automorphisms,
quadratic duals and graded Clifford constructions, homogenization, and a
complete classifier for 4-dimensional Frobenius algebras, all with
machine-replayable certificates and a CLI.
"""

__version__ = "0.1.0"
