"""Exact computations in a vertex-labelled graph complex and its bridges.

Subpackages: exact linear algebra over the rationals, labelled multigraphs
with a contraction differential, chord diagrams with package coinvariants,
polynomial tensor words with the Poisson-bracket differential, the
half-shuffle bialgebra layer, and the bivalent-chain reduction machinery.
"""

from .exactlinalg import LinComb, Rational, SparseMatrix, homology_dims, rank

__all__ = ["LinComb", "Rational", "SparseMatrix", "homology_dims", "rank"]
