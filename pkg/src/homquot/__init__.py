"""Algebras of quotients of Hom-Lie algebras over small exact fields."""

from .exalg import GF, QQ, Field, Limits, Subspace
from .homlie import HomLieAlgebra, annihilator, check_axioms
from .quotients import Extension, make_extension, self_extension
from .verdict import Method, Mode, Truth, Verdict

__all__ = [
    "GF", "QQ", "Field", "Limits", "Subspace",
    "HomLieAlgebra", "annihilator", "check_axioms",
    "Extension", "make_extension", "self_extension",
    "Method", "Mode", "Truth", "Verdict",
]
__version__ = "0.1.0"
