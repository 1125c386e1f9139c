"""Singular vectors of sl(n) Verma modules through a differential-operator model.

The Verma module M_lambda is realised on polynomials (and truncated power
series with rational exponents) in the variables x_{i,j}, i > j.  Raising
operators become first-order differential operators, singular vectors become
polynomial solutions of a linear PDE system, and a symmetric-group action on
the solution space produces all of them from the constant 1.
"""

from .operators import (
    DEFAULT_POLICY,
    TruncationPolicy,
    apply_d,
    apply_eta,
    apply_eta_power,
    apply_zeta,
    check_pde,
    is_pde_solution,
)
from .oracle import VermaVector, search_singular, singular_in_degree, tau, tau_inverse
from .series import NEG_INF, Monomial, TruncatedSeries, is_polynomial, weight_of
from .weyl import (
    BudgetExceeded,
    SingularCertificate,
    apply_sigma,
    evaluate_word,
    is_irreducible,
    mff_vector,
    orbit,
    singular_vectors,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "DEFAULT_POLICY",
    "Monomial",
    "NEG_INF",
    "SingularCertificate",
    "TruncatedSeries",
    "TruncationPolicy",
    "VermaVector",
    "apply_d",
    "apply_eta",
    "apply_eta_power",
    "apply_sigma",
    "apply_zeta",
    "check_pde",
    "evaluate_word",
    "is_irreducible",
    "is_pde_solution",
    "is_polynomial",
    "mff_vector",
    "orbit",
    "search_singular",
    "singular_in_degree",
    "singular_vectors",
    "tau",
    "tau_inverse",
    "weight_of",
]
