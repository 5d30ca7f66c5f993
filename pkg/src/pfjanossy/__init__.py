"""Janossy densities and gap probabilities of finite pfaffian ensembles."""
from .errors import *  # noqa: F401,F403
from .skewlinalg import pfaffian, pfaffian_oracle, invert, as_skew
from .ensemble import (PointSpace, EnsembleSpec, MomentSet, moment_matrix, density,
                       orthonormalize)
from .kernels import (MatrixKernel, IntervalMatrices, correlation_kernel,
                      correlation_function, interval_matrices, janossy_kernel_direct,
                      janossy_kernel_resolvent, transform_calK, transform_calL,
                      gap_probability, fredholm_pfaffian, gap_expansion, janossy_density,
                      janossy_density_from_correlation)
from .classical import (WeightSpec, DoubledSpace, beta1_spec, beta2_spec, beta4_spec,
                        biorthogonal_spec, discretize, induced_density, product_density)

__version__ = "0.1.0"
