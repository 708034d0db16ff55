"""mvlab: mixed volumes, spherical surface-area measures, Orlicz multiple
mixed volumes, and numerical verification of the associated inequality chain
for polytopes in R^2 and R^3."""

from .errors import MvlabError
from .geometry import (
    Body,
    BodyGenSpec,
    ball_approx,
    detect_dilate,
    firey_sum_approx,
    generate,
    hausdorff_distance,
    hull,
    minkowski_sum,
    scale_translate,
    support,
    volume,
)
from .mixed_volumes import (
    AtomicSphericalMeasure,
    MixedVolumeResult,
    mixed_area_measure,
    mixed_quermassintegral,
    mixed_volume,
    mixed_volume_polyfit,
    mixed_volume_via_measure,
    p_mixed_quermassintegral,
    quermassintegral,
    quermassintegral_ball_path,
    surface_measure_i,
)
from .orlicz import (
    OrliczFunction,
    VolumeMeasure,
    cone_volume_measure,
    exp_normalized,
    first_mixed_volume_measure,
    log_expectation,
    lp_multiple_mixed_volume,
    mixed_volume_measure,
    normalize,
    orlicz_mixed_volume_measure,
    orlicz_multiple_mixed_volume,
    piecewise_linear,
    power,
)
from .inequalities import (
    FuzzConfig,
    InequalityId,
    InequalityReport,
    ProofTrace,
    check,
    fuzz,
    proof_trace,
)

__version__ = "0.1.0"
