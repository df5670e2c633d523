"""Exact Ducci dynamics over the p-adic rationals.

Valuations, exact rational linear algebra, orbit classification under two
iteration semantics, Newton-polygon spectra with behavior predictions, and
a seeded sweep harness that compares predictions against observed orbits.
"""

from .dynamics import (
    CYCLE,
    LINEAR_MODE,
    NORM_DIVERGED,
    NORM_MODE,
    TERMINATED,
    UNRESOLVED,
    DucciInstance,
    OrbitLimits,
    OrbitReport,
    classical_matrix,
    classical_orbit,
    classical_step,
    instance_from_dict,
    instance_to_dict,
    linear_step,
    norm_step,
    report_to_dict,
    run_orbit,
)
from .harness import (
    CONFIRMED,
    PROFILE_KINDS,
    REFUTED,
    VERDICT_UNRESOLVED,
    DiscrepancyRecord,
    GeneratorProfile,
    SweepConfig,
    SweepResult,
    child_rng,
    compare_prediction,
    gen_instance,
    profile_predicate,
    run_sweep,
    write_sweep_report,
)
from .linalg import (
    char_poly,
    identity,
    mat_mul,
    mat_pow,
    mat_vec_mul,
    matrix,
    poly,
    squarefree_part,
    vector,
)
from .padic import INF, format_rational, is_p_integer, is_prime, padic_abs, parse_rational, vp
from .spectral import (
    CONTRACTIVE,
    EXPANSIVE,
    MIXED,
    UNITARY,
    NewtonPolygon,
    Prediction,
    SpectralReport,
    UnityOrder,
    classify_spectrum,
    eigenvalue_valuations,
    newton_polygon,
    predict_behavior,
    roots_of_unity_order,
    spectral_report,
    spectral_report_to_dict,
)

__version__ = "0.1.0"
