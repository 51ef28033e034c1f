"""poissonlab: exact Poisson cohomology of linear Poisson structures on R^3,
the full sl2* closed-form identity suite, and a numerical flow laboratory."""

__version__ = "0.1.0"

from .poly import Polynomial, RationalFunction, rf_equal
from .exterior import (
    DifferentialForm,
    LinearMap3,
    MultiVector,
    contract_covector,
    contract_multivector_into_form,
    exterior_derivative,
    koszul_differential,
    lie_derivative,
    mu_flat,
    pushforward,
    schouten_bracket,
    sharp,
    wedge,
)

__all__ = [
    "Polynomial",
    "RationalFunction",
    "rf_equal",
    "MultiVector",
    "DifferentialForm",
    "LinearMap3",
    "wedge",
    "contract_covector",
    "contract_multivector_into_form",
    "exterior_derivative",
    "schouten_bracket",
    "lie_derivative",
    "koszul_differential",
    "mu_flat",
    "pushforward",
    "sharp",
]
