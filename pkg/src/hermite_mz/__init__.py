"""Gauss-Hermite quadrature, weighted Lagrange interpolation and
Hermite-series operators, with an experiment harness comparing discrete and
continuous norms of weighted polynomials."""

from .errors import (CapacityError, DomainError, NumericalError, ShapeError,
                     UsageError)
from .expansion import (HermiteCoefficients, cesaro_kernel, cesaro_mean,
                        coefficients, default_scan_grid, discrete_kernel_scan,
                        freud_poiani_scan, kernel, make_coefficients,
                        partial_sum, vallee_poussin)
from .experiments import (DEFAULT_N_LIST, ExperimentReport, RegressionFit,
                          counterexample_growth, expansion_convergence,
                          hermite_norm_growth, hilbert_matrix_norm,
                          hilbert_matrix_norms, hilbert_section_deviation,
                          interpolation_convergence, kernel_bound_scan,
                          kernel_bound_scan_discrete, kernel_diagonal_growth,
                          mz_ratio_sweep, mz_witness_hn)
from .function_space import (FunctionHandle, NormSpec, norm_x, panel_integrate,
                             sample_at_nodes, scalar_handle, unweighted_lp_norm,
                             weighted_lp_norm)
from .gauss_hermite import QuadratureRule, build_rule, integrate_gaussian, zeros_interlace
from .hermite_core import (envelope_scale, hermite_pair, hermite_sequence,
                           local_sup_abs, phi)
from .interpolation import (NodeValues, WeightedPolyEval, discrete_mz_norm,
                            interpolate, restricted_mz_norm,
                            weighted_lagrange_basis)

__version__ = "0.1.0"
