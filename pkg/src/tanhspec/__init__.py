"""Spectral approximation on the real line with tanh-Jacobi bases.

Orthonormal bases of L2(R) whose differentiation matrix is skew-symmetric,
tridiagonal and irreducible, with O(N log N) coefficient transforms for the
four half-integer Chebyshev parameter pairs, banded Toeplitz-plus-Hankel
multiplication operators, a banded least-squares solver for first-order
operators, and Fourier transforms evaluated through Gamma-product weights.
"""

from .basis import BasisSpec, DiffOp, Expansion, clenshaw_eval, derivative_pointwise, diff_coeffs, phi_full, phi_half
from .fourier import (
    FourierRep,
    carlitz_eval,
    fourier_rep,
    fourier_transform,
    g_weight,
    measure_density,
    normalisation_constant,
)
from .jacobi import (
    QuadratureRule,
    Recurrence,
    chebyshev_eval,
    gauss_jacobi,
    jacobi_eval,
    jacobi_eval_batch,
    recurrence_coefficients,
)
from .operators import (
    BandedMatrix,
    MultOp,
    SolveResult,
    assemble_first_order,
    dense_diff,
    diff_apply,
    diff_squared_apply,
    mult_op,
    solve_first_order,
)
from .special import JacobiParams, jacobi_norm, log_gamma_complex, log_gamma_real, norm_ratio
from .transforms import SampleGrid, analyze_full, analyze_half, analyze_unweighted, dct, sample_grid, synthesize

__version__ = "0.1.0"

__all__ = [
    "BandedMatrix",
    "BasisSpec",
    "DiffOp",
    "Expansion",
    "FourierRep",
    "JacobiParams",
    "MultOp",
    "QuadratureRule",
    "Recurrence",
    "SampleGrid",
    "SolveResult",
    "analyze_full",
    "analyze_half",
    "analyze_unweighted",
    "assemble_first_order",
    "carlitz_eval",
    "chebyshev_eval",
    "clenshaw_eval",
    "dct",
    "dense_diff",
    "derivative_pointwise",
    "diff_apply",
    "diff_coeffs",
    "diff_squared_apply",
    "fourier_rep",
    "fourier_transform",
    "g_weight",
    "gauss_jacobi",
    "jacobi_eval",
    "jacobi_eval_batch",
    "jacobi_norm",
    "log_gamma_complex",
    "log_gamma_real",
    "measure_density",
    "mult_op",
    "norm_ratio",
    "normalisation_constant",
    "phi_full",
    "phi_half",
    "recurrence_coefficients",
    "sample_grid",
    "solve_first_order",
    "synthesize",
]
