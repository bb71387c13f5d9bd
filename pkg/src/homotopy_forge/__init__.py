"""Simplicial free groups, commutator calculus and exact graded homotopy computations."""

__version__ = "0.1.0"
