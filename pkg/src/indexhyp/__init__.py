"""Index hypergeometric transform, continuous dual Hahn polynomials and the Lambda function."""

from ._core import BACKEND
from .berezin_spaces import (
    DiskFunction,
    j_abc_forward,
    multinomial_sum_39,
    radial_berezin_norm_sq,
    reproducing_kernel,
    thm53_gram,
    w_norm_sq,
)
from .checks import CheckEntry, CheckReport, run_check, run_suite
from .config import Config, load_config
from .difference_ops import apply_H, apply_L, apply_P
from .errors import (
    CalibrationError,
    DomainError,
    IndexHypError,
    NonConvergenceError,
    PoleError,
    StripViolationError,
    UnknownCheckError,
)
from .hahn import HahnPolynomial, hahn_eval, hahn_generating_coeffs, hahn_gram, hahn_norm_sq, image_lemma42
from .index_transform import SPECTRAL_NORM, forward, inverse, plancherel_pairing, spherical_params
from .lambda_fn import (
    derivative_68,
    iterated_69,
    lambda_eval,
    recurrence_611,
    re_lambda_half_closed,
    symmetry_67,
    volterra_lambda_star,
)
from .matrix_ball import (
    MatrixBallParams,
    MatrixBallPoint,
    kernel_L,
    lambda_det,
    mobius,
    singular_x,
    theorem81_check_p1q1,
)
from .quadrature import (
    HalfLineFunction,
    QuadratureResult,
    QuadratureSpec,
    integrate_2d,
    integrate_s,
    integrate_x,
)
from .special_fn import ParamTriple, contiguous_residual_23, hyp2f1_line, log_gamma, weight_abc, weight_sigma
from .translate_bireflected import (
    BireflectedBasis,
    TranslateKernelParams,
    kernel_K,
    prop73_expansion,
    translate_apply,
    xi_eval,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BireflectedBasis",
    "CalibrationError",
    "CheckEntry",
    "CheckReport",
    "Config",
    "DiskFunction",
    "DomainError",
    "HahnPolynomial",
    "HalfLineFunction",
    "IndexHypError",
    "MatrixBallParams",
    "MatrixBallPoint",
    "NonConvergenceError",
    "ParamTriple",
    "PoleError",
    "QuadratureResult",
    "QuadratureSpec",
    "SPECTRAL_NORM",
    "StripViolationError",
    "TranslateKernelParams",
    "UnknownCheckError",
    "apply_H",
    "apply_L",
    "apply_P",
    "contiguous_residual_23",
    "derivative_68",
    "forward",
    "hahn_eval",
    "hahn_generating_coeffs",
    "hahn_gram",
    "hahn_norm_sq",
    "hyp2f1_line",
    "image_lemma42",
    "integrate_2d",
    "integrate_s",
    "integrate_x",
    "inverse",
    "iterated_69",
    "j_abc_forward",
    "kernel_K",
    "kernel_L",
    "lambda_det",
    "lambda_eval",
    "load_config",
    "log_gamma",
    "mobius",
    "multinomial_sum_39",
    "plancherel_pairing",
    "prop73_expansion",
    "radial_berezin_norm_sq",
    "re_lambda_half_closed",
    "recurrence_611",
    "reproducing_kernel",
    "run_check",
    "run_suite",
    "singular_x",
    "spherical_params",
    "symmetry_67",
    "theorem81_check_p1q1",
    "thm53_gram",
    "translate_apply",
    "volterra_lambda_star",
    "w_norm_sq",
    "weight_abc",
    "weight_sigma",
    "xi_eval",
]
