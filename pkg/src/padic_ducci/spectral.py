"""Eigenvalue valuations via Newton polygons and orbit-behavior prediction.

The valuations of the characteristic polynomial's roots are read off the
lower convex hull of the points (i, vp(a_i)), so no eigenvalue is ever
computed: a hull segment of slope s and horizontal length L certifies
exactly L roots of valuation -s.  A zero constant term contributes zero
eigenvalues, reported as a separate multiplicity with valuation +inf.

The spectrum class drives a structured prediction for linear-mode orbits:
all valuations positive means componentwise norms shrink to zero; all zero
means the orbit never reaches zero from a nonzero seed and, when a matrix
order m with D**m = I is certified, repeats with period dividing m; any
negative valuation predicts unbounded norm growth.  Mixed spectra get no
prediction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .linalg import (
    Matrix,
    Poly,
    char_poly,
    identity,
    mat_pow,
    poly_degree,
    poly_divides,
    squarefree_part,
    t_power_minus_one,
)
from .padic import INF, format_rational, vp

CONTRACTIVE = "contractive"
UNITARY = "unitary"
EXPANSIVE = "expansive"
MIXED = "mixed"

CLAIM_TERMINATES = "terminates"
CLAIM_NEVER_ZERO = "never-zero"
CLAIM_NEVER_ZERO_PERIODIC = "never-zero-periodic"
CLAIM_UNBOUNDED = "unbounded-growth"
CLAIM_NONE = "indeterminate"

# Stable tags naming the claim family each prediction instantiates.
CLAUSE_BY_CLAIM = {
    CLAIM_TERMINATES: "contractive-spectrum-terminates",
    CLAIM_NEVER_ZERO: "unit-spectrum-never-zero",
    CLAIM_NEVER_ZERO_PERIODIC: "unit-spectrum-periodic",
    CLAIM_UNBOUNDED: "expansive-spectrum-unbounded",
    CLAIM_NONE: "no-claim",
}

NORM_NOTE_DIAGONAL = "diagonal-short-cycle"
NORM_NOTE_UNSPECIFIED = "unspecified"

DEFAULT_MAX_UNITY_ORDER = 64


@dataclass(frozen=True)
class NewtonPolygon:
    """Lower hull segments (slope, length) with slopes strictly increasing.

    ``zero_root_multiplicity`` counts roots at t = 0 (valuation +inf);
    segment lengths plus that multiplicity add up to the degree.
    """

    segments: tuple[tuple[Fraction, int], ...]
    zero_root_multiplicity: int


@dataclass(frozen=True)
class UnityOrder:
    """Smallest m with every eigenvalue an m-th root of unity.

    ``certified`` records the stronger fact D**m = I, which is what forces
    linear-mode orbits to repeat with period dividing m even when the
    matrix is not diagonalizable.
    """

    order: int
    certified: bool


@dataclass(frozen=True)
class Prediction:
    claim: str
    clause: str
    spectrum: str
    period_divides: int | None
    unity_order: int | None
    unity_certified: bool
    matrix_p_integral: bool
    norm_mode_note: str


@dataclass(frozen=True)
class SpectralReport:
    polygon: NewtonPolygon
    valuations: tuple
    spectrum: str
    unity_order: int | None
    unity_certified: bool
    prediction: Prediction


def newton_polygon(f: Poly, p: int) -> NewtonPolygon:
    """Newton polygon of a monic polynomial with respect to p."""
    n = poly_degree(f)
    if n < 1:
        raise ValueError("newton_polygon needs degree >= 1")
    if f[-1] != 1:
        raise ValueError("newton_polygon needs a monic polynomial")
    r = next(i for i, c in enumerate(f) if c != 0)
    points = [(i, vp(f[i], p)) for i in range(r, n + 1) if f[i] != 0]
    hull = _lower_hull(points)
    segments = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        segments.append((Fraction(y2 - y1, x2 - x1), x2 - x1))
    return NewtonPolygon(segments=tuple(segments), zero_root_multiplicity=r)


def _lower_hull(points):
    """Monotone-chain lower hull; collinear interior points are dropped."""
    hull = []
    for pt in points:
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], pt) <= 0:
            hull.pop()
        hull.append(pt)
    return hull


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def eigenvalue_valuations(d: Matrix, p: int) -> tuple:
    """Multiset (sorted tuple) of eigenvalue valuations, +inf for zero roots."""
    polygon = newton_polygon(char_poly(d), p)
    return _polygon_valuations(polygon)


def _polygon_valuations(polygon: NewtonPolygon) -> tuple:
    vals = []
    for slope, length in polygon.segments:
        vals.extend([-slope] * length)
    vals.extend([INF] * polygon.zero_root_multiplicity)
    return tuple(sorted(vals, key=lambda v: (v == INF, v)))


def classify_spectrum(valuations) -> str:
    """Spectrum class from the valuation multiset; +inf counts as positive."""
    if not valuations:
        raise ValueError("empty valuation multiset")
    if any(v < 0 for v in valuations):
        return EXPANSIVE
    if all(v > 0 for v in valuations):
        return CONTRACTIVE
    if all(v == 0 for v in valuations):
        return UNITARY
    return MIXED


def roots_of_unity_order(d: Matrix, max_order: int = DEFAULT_MAX_UNITY_ORDER) -> UnityOrder | None:
    """Smallest m <= max_order with squarefree_part(char_poly) | t**m - 1."""
    if max_order < 1:
        raise ValueError("max_order must be >= 1")
    g = squarefree_part(char_poly(d))
    for m in range(1, max_order + 1):
        if poly_divides(g, t_power_minus_one(m)):
            certified = mat_pow(d, m) == identity(len(d))
            return UnityOrder(order=m, certified=certified)
    return None


def _is_diagonal(d: Matrix) -> bool:
    return all(d[i][j] == 0 for i in range(len(d)) for j in range(len(d)) if i != j)


def predict_behavior(d: Matrix, p: int, max_order: int = DEFAULT_MAX_UNITY_ORDER) -> Prediction:
    """Structured linear-mode prediction from the spectrum class.

    Norm-mode behavior is only claimed where it is provable from the
    valuation recurrence (diagonal matrices cycle with preperiod <= 1 and
    period 1 or 2); everything else is left unspecified.
    """
    vals = eigenvalue_valuations(d, p)
    spectrum = classify_spectrum(vals)
    unity = roots_of_unity_order(d, max_order) if spectrum == UNITARY else None
    if spectrum == CONTRACTIVE:
        claim = CLAIM_TERMINATES
        period = None
    elif spectrum == UNITARY:
        if unity is not None and unity.certified:
            claim = CLAIM_NEVER_ZERO_PERIODIC
            period = unity.order
        else:
            claim = CLAIM_NEVER_ZERO
            period = None
    elif spectrum == EXPANSIVE:
        claim = CLAIM_UNBOUNDED
        period = None
    else:
        claim = CLAIM_NONE
        period = None
    return Prediction(
        claim=claim,
        clause=CLAUSE_BY_CLAIM[claim],
        spectrum=spectrum,
        period_divides=period,
        unity_order=unity.order if unity else None,
        unity_certified=bool(unity and unity.certified),
        matrix_p_integral=all(vp(e, p) >= 0 for row in d for e in row),
        norm_mode_note=NORM_NOTE_DIAGONAL if _is_diagonal(d) else NORM_NOTE_UNSPECIFIED,
    )


def spectral_report(d: Matrix, p: int, max_order: int = DEFAULT_MAX_UNITY_ORDER) -> SpectralReport:
    polygon = newton_polygon(char_poly(d), p)
    vals = _polygon_valuations(polygon)
    spectrum = classify_spectrum(vals)
    unity = roots_of_unity_order(d, max_order) if spectrum == UNITARY else None
    prediction = predict_behavior(d, p, max_order)
    return SpectralReport(
        polygon=polygon,
        valuations=vals,
        spectrum=spectrum,
        unity_order=unity.order if unity else None,
        unity_certified=bool(unity and unity.certified),
        prediction=prediction,
    )


def _valuation_json(v):
    return "inf" if v == INF else format_rational(v)


def prediction_to_dict(pred: Prediction) -> dict:
    return {"claim": pred.claim, "paper_clause": pred.clause}


def spectral_report_to_dict(report: SpectralReport) -> dict:
    return {
        "valuations": [_valuation_json(v) for v in report.valuations],
        "class": report.spectrum,
        "unity_order": report.unity_order,
        "certified": report.unity_certified,
        "prediction": prediction_to_dict(report.prediction),
    }
