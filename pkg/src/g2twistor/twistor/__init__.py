"""Power-law (2,3,5) distributions D_k and their twistor bundles: coframe, Lie contact data,
symmetry catalogs, the boundary G2-contact structure and the connection solver."""

from .boundary import BoundaryReport, boundary_reduction, g2_contact_pair, g2_generators
from .coframe import CoframeFamily, build_distribution, build_theta_coframe, s_characterization, s_growth
from .connection import (
    CURVATURE,
    ConnectionForms,
    ConnectionSolution,
    CurvatureCoefficients,
    cartan_connection,
    connection_curvature,
    eds_residual,
    solve_connection_forms,
)
from .contact import LieContactData, build_contact_data, contact_volume, metric_example
from .errors import (
    AmbiguousCurvature,
    CrossCheckFailed,
    DegenerateParameter,
    FixtureError,
    IncompatibleParameters,
    InconsistentEDS,
    KindMismatch,
    MatchFailed,
    NotASymmetry,
    NotClosed,
    SignCalibrationFailed,
    TranscriptionSelfCheckFailed,
    TwistorError,
    UnknownObject,
    VerificationFailed,
)
from .model import PowerLawBackend, backend, conformal_root, rational_conformal_ks
from .symmetry import (
    CATALOGS,
    ClosureReport,
    ContactPair,
    Fail,
    Pass,
    SymmetryCatalog,
    bracket_closure_report,
    calibrate_signs,
    catalog,
    prolong_symmetry,
    verify_symmetry,
)

__all__ = [name for name in dir() if not name.startswith("_")]
