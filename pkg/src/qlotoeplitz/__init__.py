"""Exact finite-level verification toolkit for Toeplitz algebras of
quasi-lattice ordered groups."""

from .algebra import AlgebraElement, V, parse_element
from .indicator import (Counterexample, IndicatorElement, StructurallyVerified,
                        VerifiedUpTo, chi_product, find_fesspe, is_fesspe,
                        verify_chi_formula)
from .inner import (OutsideP, PartitionCandidate, check_partition_covariance,
                    projection, rank_one, verify_commutation, verify_ideal_J,
                    verify_rank_one_system, verify_sum_to_identity)
from .monomials import ZERO, Monomial, adjoint, apply, monomial_mul
from .qlo import Divisibility, FreeAbelian, FreeMonoid, HalfLine, make_instance
from .scalars import GaussianRational
from .spectrum import enumerate_spectrum, principal_fraction
from .suite import RunConfig, RunReport, run
from .truncation import (Truncation, diagonal_commutant_dimension, truncate,
                         verify_against_matrices)

__all__ = [
    "AlgebraElement", "V", "parse_element", "Counterexample", "IndicatorElement",
    "StructurallyVerified", "VerifiedUpTo", "chi_product", "is_fesspe",
    "verify_chi_formula", "OutsideP", "PartitionCandidate",
    "check_partition_covariance", "projection", "rank_one", "verify_commutation",
    "verify_ideal_J", "verify_rank_one_system", "verify_sum_to_identity", "ZERO",
    "Monomial", "adjoint", "apply", "monomial_mul", "Divisibility", "FreeAbelian",
    "FreeMonoid", "HalfLine", "make_instance", "GaussianRational",
    "enumerate_spectrum", "principal_fraction", "Truncation",
    "diagonal_commutant_dimension", "truncate", "verify_against_matrices",
    "find_fesspe", "RunConfig", "RunReport", "run",
]
