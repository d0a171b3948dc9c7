"""Clifford algebras of arbitrary non-degenerate metrics, computed as gauge
deformations of the Euclidean algebra."""
from .errors import (
    DegenerateBasis,
    DimensionMismatch,
    GeometricAlgebraError,
    MissingTables,
    NoConvergence,
    NotLorentz,
    NotOrthogonal,
    NotSymmetric,
    SignatureMismatch,
    SingularCayley,
    SingularExtensor,
    ZeroRho,
)
from .extensor import (
    EigenDecomposition,
    Extensor,
    adjoint,
    adjoint_inverse,
    apply,
    compose,
    determinant,
    extend,
    inverse,
    sym_eigen,
)
from .frames import (
    Frame,
    TetradComponents,
    TetradFrame,
    deform_frame,
    gauge_bases,
    reciprocal,
    tetrad_bases,
    tetrad_components,
    transform_tensor2,
    transform_vector,
)
from .gauge import GaugeFactorization, factor_gauge, synth_metric, twist_gauge
from .golden import DeformedAlgebra, GoldenReport, golden_inverse, golden_product, verify_golden
from .metric import (
    MetricExtensor,
    direct_clifford,
    direct_product,
    g_clifford,
    g_contract_left,
    g_contract_right,
    g_scalar,
    metric_adjoint,
    metric_from_matrix,
)
from .multivector import (
    PRODUCTS,
    Multivector,
    clifford,
    contract_left,
    contract_right,
    euclidean_scalar,
    grade,
    reverse,
    wedge,
)
from .orthometric import (
    OrthoMetric,
    cayley,
    eta_basis_vector,
    eta_composite,
    eta_from_signature,
    eta_general,
    is_lorentz,
    random_lorentz,
    sandwich_eta,
)

__version__ = "0.1.0"
