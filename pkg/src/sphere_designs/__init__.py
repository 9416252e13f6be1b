"""Potentials, verification, synthesis and size bounds for real and complex spherical designs."""

from importlib.metadata import PackageNotFoundError, version as _dist_version

from .bounds import (
    AnnihilatorSpec,
    BoundReport,
    absolute_lower_complex,
    absolute_lower_real,
    annihilator,
    fisher_bound,
    lower_bound,
    s_angular_bound,
    special_bounds,
    tightness_check,
    upper_bound_acode,
)
from .configurations import builtin_configuration, parse_builtin
from .core_model import (
    AngleSet,
    Configuration,
    Field,
    angle_set,
    gramian,
    load_configuration,
    m_weights,
    save_configuration,
)
from .designs import (
    SynthesisResult,
    VerificationReport,
    max_class,
    synthesize,
    verify,
    verify_half_design_m_weights,
    verify_t_design,
)
from .errors import DesignError
from .gegenbauer import (
    GegExpansion,
    MonomialPoly,
    complex_Q,
    dim_H,
    dim_harm,
    real_Q,
    to_geg_basis,
)
from .index_algebra import ComplexIndexSet, RealIndexSet, named_family, parse_index_set
from .kernels import BACKEND
from .potentials import Potential, canonical_potential, evaluate, monomial_potential

try:
    __version__ = _dist_version("artifact")
except PackageNotFoundError:  # running from a source tree
    __version__ = "0.1.0"

__all__ = [
    "AngleSet", "AnnihilatorSpec", "BACKEND", "BoundReport", "ComplexIndexSet",
    "Configuration", "DesignError", "Field", "GegExpansion", "MonomialPoly", "Potential",
    "RealIndexSet", "SynthesisResult", "VerificationReport", "absolute_lower_complex",
    "absolute_lower_real", "angle_set", "annihilator", "builtin_configuration",
    "canonical_potential", "complex_Q", "dim_H", "dim_harm", "evaluate", "fisher_bound",
    "gramian", "load_configuration", "lower_bound", "m_weights", "max_class",
    "monomial_potential", "named_family", "parse_builtin", "parse_index_set", "real_Q",
    "s_angular_bound", "save_configuration", "special_bounds", "synthesize",
    "tightness_check", "to_geg_basis", "upper_bound_acode", "verify",
    "verify_half_design_m_weights", "verify_t_design",
]
