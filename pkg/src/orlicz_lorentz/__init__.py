"""Embeddings between Orlicz and Lorentz spaces, decided and tested numerically."""

from .criteria import (
    EmbeddingReport,
    State,
    Verdict,
    classify_lorentz_into_orlicz,
    classify_orlicz_into_lorentz,
    condition_integral_A,
    condition_integral_dual,
    limit_condition,
    limit_condition_dual,
    sobolev_corollary,
    sobolev_exponent,
)
from .functionals import InconclusiveError, lorentz_norm, luxemburg_norm, orlicz_modular
from .rearrangement import StepFn, distribution, rearrange
from .young import YoungFn, cap_at, exp_minus_one, make_family, piecewise, power, power_log

__version__ = "0.1.0"

__all__ = [
    "EmbeddingReport", "State", "Verdict", "classify_lorentz_into_orlicz", "classify_orlicz_into_lorentz",
    "condition_integral_A", "condition_integral_dual", "limit_condition", "limit_condition_dual",
    "sobolev_corollary", "sobolev_exponent", "InconclusiveError", "lorentz_norm", "luxemburg_norm",
    "orlicz_modular", "StepFn", "distribution", "rearrange", "YoungFn", "cap_at", "exp_minus_one",
    "make_family", "piecewise", "power", "power_log", "__version__",
]
