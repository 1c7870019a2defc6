"""Conformal deformations, isotropic hyperelastic energies, and stress field checks.

The package verifies, numerically and with closed forms, that suitable
isotropic energies produce spatially constant Cauchy stress on conformal
deformation fields, and provides the surrounding toolbox: small-matrix
algebra, conformal map constructions, derivative chains with independent
finite-difference oracles, rank-one convexity certificates, the linearized
(conformal Killing) picture, and field sampling with CSV/JSON/SVG output.
"""

__version__ = "0.1.0"

from .exceptions import (
    ConfmechError,
    InadmissibleDomainWarning,
    InvalidSplice,
    LeavesGLPlus,
    NegativeRadicand,
    NonOrientationPreserving,
    NonPositiveArgument,
    NotConformal,
    NotDifferentiable,
    NotInGLPlus,
    SingularPoint,
    TooFewSamples,
)
from .tensors import (
    DistortionReport,
    cofactor,
    conformality_residual,
    det,
    dev,
    distortions,
    frobenius_and_operator_norm,
    frobenius_norm,
    inverse,
    operator_norm,
    singular_values,
    svd,
    sym,
    sym_dev_tr,
    transpose_inverse,
)
from .conformal import (
    AffineMap,
    ComplexMoebius,
    ConformalDecomposition,
    DeformationMap,
    HyperplaneReflection,
    InversionFlip,
    MoebiusMap,
    SphereReflection,
    decompose_conformal,
    fd_gradient,
    is_conformal_at,
)
from .energies import (
    BUILTIN_ENERGIES,
    CompositeEnergy,
    DistortionEnergy,
    EnergyModel,
    IsochoricNeoHooke,
    PlanarRatioEnergy,
    VolumetricTerm,
    builtin_energy,
    distortion_minus_one,
    fd_first_derivative,
    fd_second_form,
    fd_second_form_from_first,
    linear_distortion_squared,
)
from .convexity import (
    ConvexityReport,
    HCriterionResult,
    KSReport,
    LineScanResult,
    h_criterion,
    knowles_sternberg,
    ks_grid_scan,
    lh_form,
    random_def_gradient,
    random_rotation,
    rank_one_line_scan,
    ratio_minus_one_squared,
    ratio_minus_one_squared_derivatives,
    scan_rank_one_convexity,
    semi_strict_check,
)
from .linearized import (
    KernelDisplacement,
    QuadraticApprox,
    conformal_quadratic_approx,
    kernel_displacement,
    quadratic_approx_error,
    sigma_lin,
    w_lin_2d,
    w_lin_3d_composite,
)
from .fields import (
    AnnulusDomain,
    FieldSample,
    JumpReport,
    Lcg64,
    StressFieldSummary,
    admissible_annulus,
    affine_reference_check,
    jump_check,
    sample_annulus,
    stress_field,
    summary_to_dict,
    write_field_csv,
    write_summary_json,
)
from .gridplot import DiskRegion, boundary_markers, deform_polylines, grid_polylines, render_grid_svg
