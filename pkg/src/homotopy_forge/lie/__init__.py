"""Lower central series calculus over the integers."""

from .linalg import AbelianInvariants, smith_normal_form, snf
from .lyndon import NotALieElement, lyndon_words, witt_number
from .magnus import LieVector, TruncatedSeries, embed, gamma_degree, leading_lie, lie_component
from .lattice import (
    GradedLattice,
    NotASublattice,
    full_lattice,
    graded_lattice,
    graded_quotient,
    normal_graded_lattice,
)

__all__ = [
    "AbelianInvariants", "smith_normal_form", "snf", "NotALieElement", "lyndon_words",
    "witt_number", "LieVector", "TruncatedSeries", "embed", "gamma_degree", "leading_lie",
    "lie_component", "GradedLattice", "NotASublattice", "full_lattice", "graded_lattice",
    "graded_quotient", "normal_graded_lattice",
]
