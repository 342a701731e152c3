"""Waring ranks, apolarity, power-sum decompositions and secant dimensions."""

__version__ = "0.1.0"

from .apolarity import (catalecticant, catalecticant_rank, essential_variables, hilbert_function,
                        max_catalecticant_rank, minimal_generator_degrees)
from .binary import binary_border_rank, binary_decompose, binary_rank, sigma2_rank
from .bounds import monomial_rank, rank_bounds, upper_bounds
from .decomposition import WaringDecomposition
from .errors import (ConvergenceError, DomainError, MethodInapplicable, ParseError, WaringError)
from .multivar import bcmt_decompose, catalecticant_decompose
from .poly import HomogeneousForm, LinearForm, format_form, parse_form
from .secant import parse_spec, secant_dim

__all__ = [
    "HomogeneousForm", "LinearForm", "WaringDecomposition", "parse_form", "format_form",
    "catalecticant", "catalecticant_rank", "max_catalecticant_rank", "hilbert_function",
    "essential_variables", "minimal_generator_degrees",
    "binary_border_rank", "binary_rank", "binary_decompose", "sigma2_rank",
    "catalecticant_decompose", "bcmt_decompose",
    "monomial_rank", "rank_bounds", "upper_bounds", "parse_spec", "secant_dim",
    "WaringError", "ParseError", "DomainError", "ConvergenceError", "MethodInapplicable",
]
