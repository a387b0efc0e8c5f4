"""L2-Stokes degree calculus, boundary-pairing defects and Friedrichs cone spectra."""

__version__ = "0.1.0"

from .bessel import BACKEND, bessel_j, bessel_zeros
from .defect import CubicCutoff, CutoffPair, HarmonicFormSpec, codifferential_coefficient, defect
from .errors import (
    InconsistencyError,
    L2StokesError,
    NumericError,
    ParameterError,
    QuadratureError,
    ValidationError,
)
from .geometry import (
    CrossSection,
    WarpedModel,
    beta_exponent,
    circle,
    critical_degree,
    explicit,
    form_norm_weight,
    sphere,
    torus,
    volume_weight,
)
from .quadrature import quadrature
from .spectrum import (
    SingularRadialProblem,
    SpectrumTable,
    classify_endpoint,
    cross_section_spectrum,
    friedrichs_spectrum,
    ode_index,
    scalar_cone_spectrum,
)
from .stokes import (
    StokesReport,
    Verdict,
    cheeger_cone_criterion,
    complex_variety_report,
    friedrichs_identity_degrees,
    propagate_uniqueness,
    two_factor_failure,
)
from .varieties import (
    VarietyParams,
    chart_distortion,
    lst_failure_condition,
    pullback_metric_check,
    quasi_isometry_model,
    variety_singular_set,
    vfg_normal_form,
)
