"""The antisymmetric GL+(2)-homogeneous singular integral operator on the
plane, its polar companion and the circle operators behind it."""
from .bounds import (BoundReport, c_gamma, check_est3, check_j_bound, check_k1_even_holder,
                     check_k2_bound, riesz_constant, sharpness_profile, v_p_weight)
from .circle_ops import (calK_apply, hilbert_circle, j_apply, k1_apply, k1_apply_quadrature,
                         k1_apply_spectral, k1_decomposition_check, k2_apply)
from .funcspace import (CircleFunction, FourierSpectrum, Function1D, Function2D,
                        HolderWitness, PolarTensorSum, TensorSum2D, from_spec)
from .plane_ops import (GL2Plus, PlanePoint, intertwining_residual, k_apply_est1,
                        k_apply_radon, k_apply_stepanov, kernel_eval, radon_slice)
from .pvquad import PVQuadratureConfig, integrate_halfline, pv_circle, pv_line_hilbert
from .verify import SuiteResult, run_all

__all__ = [
    "BoundReport", "CircleFunction", "FourierSpectrum", "Function1D", "Function2D",
    "GL2Plus", "HolderWitness", "PVQuadratureConfig", "PlanePoint", "PolarTensorSum",
    "SuiteResult", "TensorSum2D", "c_gamma", "calK_apply", "check_est3", "check_j_bound",
    "check_k1_even_holder", "check_k2_bound", "from_spec", "hilbert_circle",
    "integrate_halfline", "intertwining_residual", "j_apply", "k1_apply",
    "k1_apply_quadrature", "k1_apply_spectral", "k1_decomposition_check", "k2_apply",
    "k_apply_est1", "k_apply_radon", "k_apply_stepanov", "kernel_eval", "pv_circle",
    "pv_line_hilbert", "radon_slice", "riesz_constant", "run_all", "sharpness_profile",
    "v_p_weight",
]
