"""Exact Hochschild, cyclic and periodic cyclic homology of finite-dimensional algebras over Q."""
from .algebra import (Algebra, AlgebraFormatError, BlockDecomposition, NotUnital, TraceFunctional,
                      block_algebra, check_associative, commutator_quotient_dim, direct_sum, dual_numbers,
                      field, from_document, matrix_algebra, nilpotent_line, to_document, trace_space_basis,
                      truncated_convolution, unitalization)
from .cache import DiffCache
from .chern import EvenCycle, NotATrace, NotIdempotent, chern_character, chern_matrix, pair
from .cyclic import (MixedComplex, hc_cohomology_dims, hc_dims, hp_cohomology_dims, hp_dims, mixed_complex,
                     s_map, sbi_report, stabilization_certificate)
from .growth import (GrowthClass, GrowthSequence, NonCanonical, NotComparable, classify, inclusion_witness,
                     lim_prod_demo, separation_witness)
from .hochschild import HomologyReport, SizeLimit, hh_cohomology_dims, hh_dims, hochschild_complex
from .linalg import (CompositionNonzero, DimensionMismatch, RankMismatch, RationalMatrix, homology_dim,
                     kernel_basis, mod_check, modular_rank, rank, rank_log, solve)
from .verifiers import (NotSeparable, check_adjoint_projection, resolution_of_unitalization,
                        separability_idempotent, verify_additivity, verify_separable_vanishing)

__version__ = "0.1.0"
