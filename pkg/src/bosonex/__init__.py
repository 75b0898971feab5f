"""Exact classical boson sampling with repeated-row permanents.

Draws multisets of output modes from ``|Per A_z|^2 / mu(z)`` by sampling
one row at a time. Each stage's weights come from the column-deleted
minors of the rows chosen so far, computed in a single Guan-code walk
whose length is ``prod(s + 1)`` over the row multiplicities.
"""

from .combinatorics import (BinaryGrayIterator, MixedRadixGrayIterator, OutcomeMultiset,
                            enumerate_multisets, gray_steps, guan_steps, multichoose,
                            multiplicity_product, multiset_from_counts, multiset_from_rows)
from .haar import first_columns, haar_unitary, stream, unitarity_residual
from .permanent import (DimensionError, expand_rows, laplace_permanent, minor_permanents,
                        permanent_naive, permanent_repeated, permanent_ryser)
from .sampler import (SamplerTrace, SamplingError, StageCount, operation_counter, sample_batch,
                      sample_from_weights, sample_many, sample_single)
from .verification import (PmfTable, asymptotic_growth_constant, asymptotic_prefactor,
                           average_complexity_sum, chi_square_test, empirical_pmf,
                           enumerated_multiplicity_product, exact_pmf,
                           expected_multiplicity_product, marginal_uniformity_check,
                           tv_distance)

__version__ = "0.1.0"
