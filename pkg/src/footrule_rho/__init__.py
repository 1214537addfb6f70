"""Spearman's footrule and Spearman's rho of structured copulas.

Exact concordance measures for shuffles of M and their mixtures, quadrature
for other evaluable copulas, the bound curves of the (footrule, rho) region,
the extremal constructions attaining them and the mass-shifting reduction of
doubly symmetric shuffles onto the two diagonals.
"""
from types import ModuleType as _ModuleType

from .bounds import (alpha0_envelope, attained_curve, attained_piece_index,
                     lower_bound_curve, upper_estimate_curve)
from .copulas import (M, PI, W, BernsteinCopula, Copula, Independence, MixtureCopula,
                      Rectangle, ShuffleOfM, SymmetryReport, TransformedCopula,
                      ValidityReport, bernstein, check_copula, is_doubly_symmetric_shuffle,
                      sample, sup_distance, symmetrize, transform, volume)
from .exceptions import (DomainError, InvalidCopulaError, InvalidDiagonalError,
                         NotDoublySymmetricError, QuadratureError, ReductionError,
                         UnsupportedCopulaError)
from .extremal import (DiagonalCopula, DiagonalIdentityReport, OrdinalSum, SymmetricDiagonal,
                       TwoDiagonalCopula, attaining_copula, delta_a, diagonal_copula,
                       family_Ca, family_Cn, kdelta_a, ordinal_sum, smooth_diagonal,
                       two_diagonal_from_delta, verify_diagonal_identities)
from .measures import (DiagonalSection, MeasureReport, blomqvist_beta, concordance,
                       diagonal_mass, diagonal_section, footrule, gini_gamma, kendall_tau,
                       lower_bound_gap, measure_report, monte_carlo, spearman_rho)
from .reduction import (OrbitSquare, ReductionStep, ReductionTrace, apply_step,
                        approx_doubly_symmetric, classify_orbit, reduce_to_diagonals)
from .region import KsmBracket, RegionPoint, compute_ksm, scan_region

__all__ = sorted(name for name, value in globals().items()
                 if not name.startswith("_") and not isinstance(value, _ModuleType))
