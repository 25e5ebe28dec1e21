"""Exact-arithmetic engine for a family of Z2 x Z2 graded color superalgebras.

The package builds the N=1 superconformal Galilei superalgebra and its mass
central extension, embeds quadratic composites into the enveloping algebra to
produce two families of Z2 x Z2 graded color superalgebras, and verifies the
whole structure mechanically: graded Jacobi identities, triangular
decomposition, anti-involutions, a boson-fermion Fock representation, and a
first-order vector-field realization on graded Grassmann variables.  All
coefficients are exact rationals (extended by square roots where Fock mode
normalization requires them); nothing is floating point.
"""

__version__ = "0.1.0"
