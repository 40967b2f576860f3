"""Invariant rings of transitive permutation groups and the exponent tables
they certify: Molien series, primary/secondary invariant data, and exact
discriminant-counting bounds.
"""

from .bounds import (BoundReport, analyze_group, malle_exponent,
                     schmidt_exponent, schmidt_recovery_exponent,
                     theorem_exponent)
from .config import RunConfig
from .errors import (BudgetError, CapacityError, CatalogError, CycleParseError,
                     PolyParseError, PrecisionError)
from .groebner import (GroebnerBasis, buchberger, ideal_dimension,
                       is_zero_dimensional, reduce_poly)
from .invariants import (PrimaryCertificate, PrimarySet, SecondaryData,
                         VerificationFailure, find_primary_invariants,
                         invariant_basis, secondary_data, verify_primary)
from .molien import (DegreeVector, HilbertNumerator, MolienSeries,
                     candidate_degree_vectors, hilbert_numerator,
                     molien_series, scan_candidates)
from .perm import (ConjClassSet, PermGroup, Permutation,
                   conjugacy_and_rational_classes, element_index, group_index,
                   malle_b_Q, parse_cycles, t_value)
from .poly import (Polynomial, apply_permutation, format_polynomial,
                   is_invariant, orbit_sum, parse_polynomial)

__version__ = "0.1.0"
