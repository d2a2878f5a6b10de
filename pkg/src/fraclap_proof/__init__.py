"""Computer-assisted verification that the second Dirichlet eigenfunctions of the
fractional Laplacian on the unit ball in three dimensions are antisymmetric.

Subpackages, bottom-up: :mod:`interval` (outward-rounded arithmetic and dual
numbers), :mod:`specfun` (Gamma-family enclosures), :mod:`exactpoly`
(integer polynomials and Sturm sequences), :mod:`paperfn` (the named
functions), :mod:`prover` and :mod:`claims` (bisection engine and claim
registry) and :mod:`cli`.
"""

__version__ = "0.1.0"
