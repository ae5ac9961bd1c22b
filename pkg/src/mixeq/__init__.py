"""Pressure, irreducibility and mixing of matrix equilibrium states.

A tuple ``(A_1, ..., A_N)`` of real d x d matrices defines the pressure
``P(A, s) = lim (1/n) log sum_{|w|=n} ||A_w||^s``, where the word
``w = (i_1, ..., i_n)`` names the product ``A_{i_n} ... A_{i_1}`` (the
first letter acts first).
"""

__version__ = "0.1.0"

from .errors import (BudgetError, InputError, MixeqError, PartialResultError,
                     UnknownStructureError, UnsupportedRegimeError)
from .mats import MatrixTuple, power_tuple, spectral_radius, word_product, words
from .pressure import (PressureEstimate, pressure_estimate, pressure_s2_exact, pressure_upper,
                       pressure_vector_growth)
from .gibbs import (BernoulliMeasure, GibbsTable, Witness, distinctness_witness, gibbs_weights,
                    lyapunov_upper, variational_gap)
from .structure import (BlockTriangularForm, CyclicStructure, MixingReport, Subspace,
                        algebra_span_dim, block_triangularize, classify_mixing,
                        cyclic_decomposition, find_invariant_subspace, is_irreducible)
from .oracle import enumerate_sum, invariant_subspaces_d_le_3
from .fixtures import FIXTURE_NAMES, fixture
