"""Exact checks for quotient categories of module categories by subcategories."""

from .approx import SubcategorySpec, quotient_hom
from .commands import reproduce_example, run_command
from .linalg import Field, Matrix
from .problem import ProblemError, ProblemFile, load_problem, parse_problem
from .quiver import BoundQuiver
from .rep import Representation, RepMorphism, hom_basis

__version__ = "0.1.0"

__all__ = [
    "BoundQuiver", "Field", "Matrix", "ProblemError", "ProblemFile", "RepMorphism", "Representation",
    "SubcategorySpec", "hom_basis", "load_problem", "parse_problem", "quotient_hom",
    "reproduce_example", "run_command",
]
