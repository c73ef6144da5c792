"""Radial and quotient projections over finite fields, with exact bound checkers."""

from .ambient import AmbientSpace, PointSet, plane_subset, random_subset
from .gf import FieldSpec, field_new
from .grassmann import (Subspace, count_containing, enumerate_grassmannian,
                        extend_to_complement, gaussian_binomial, sample_uniform_subspace,
                        subspace_from_vectors)
from .projections import (QuotientMap, RadialImage, collision_count, fiber, fiber_counts,
                          project_set, quotient_map_new, radial_projection, radial_sizes)
from .theorems import (BoundReport, Conjecture, FullDim, TheoremId, check_expectation_identity,
                       check_fullDim, check_largeESC, check_markov_fraction,
                       check_radial_conjecture, check_weak_bound, collision_expectation,
                       exceptional_set, find_good_subspace, markov_condition,
                       reduction_pipeline)

__version__ = "0.1.0"
