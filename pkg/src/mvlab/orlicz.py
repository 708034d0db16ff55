"""The Orlicz function class and the Orlicz/L_p multiple mixed volumes and
volume measures built on mixed surface-area measures.

Conventions
-----------
The multiple mixed volume takes n-1 bodies L_1..L_{n-1} that define the
surface measure, plus a numerator body K_n and a denominator body L_n:

    V_phi(L_1, ..., L_{n-1}, K_n, L_n)
        = (1/n) * sum over atoms u of phi(h_{K_n}(u) / h_{L_n}(u)) * h_{L_n}(u) * w(u)

This is the ratio orientation the main log inequality and its proof use. The
literature also defines the functional with the reciprocal ratio and h_{K_n}
outside; pass ``as_written_definition=True`` to evaluate that variant for
comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import geometry as geo
from . import mixed_volumes as mv
from .errors import (
    ArityMismatch,
    LogOfNonpositive,
    NonpositiveSupport,
    OriginNotInterior,
    PhiInvalid,
    ZeroMass,
)
from .geometry import Body
from .mixed_volumes import AtomicSphericalMeasure, make_measure

# Monotonicity/convexity are validated on this grid; user-supplied piecewise
# functions get no symbolic treatment.
_VALIDATION_GRID = np.linspace(0.0, 16.0, 1024)
_CONVEXITY_SLACK = 1e-12
# Above this ratio the exponential kind switches to log-space evaluation.
_LOGSPACE_CUTOFF = 1e6


class OrliczFunction:
    """A member of the admissible class: convex, increasing, phi(0) = 0,
    phi(1) = 1. Construct through ``power``, ``exp_normalized`` or
    ``piecewise_linear``."""

    def __init__(self, kind: str, label: str, fn, log_fn):
        self.kind = kind
        self.label = label
        self._fn = fn
        self._log_fn = log_fn
        self._validate()

    def __call__(self, x):
        return self._fn(np.asarray(x, dtype=float))

    def log_value(self, x):
        """ln(phi(x)) for x > 0, evaluated without overflow."""
        return self._log_fn(np.asarray(x, dtype=float))

    def __repr__(self):
        return f"OrliczFunction({self.label})"

    def _validate(self):
        with np.errstate(all="ignore"):
            self._validate_on_grid()

    def _validate_on_grid(self):
        y = self(_VALIDATION_GRID)
        if not math.isclose(float(self(0.0)), 0.0, abs_tol=1e-15):
            raise PhiInvalid(f"{self.label}: phi(0) != 0")
        if not math.isclose(float(self(1.0)), 1.0, rel_tol=1e-12):
            raise PhiInvalid(f"{self.label}: phi(1) != 1")
        if not np.all(np.diff(y) > 0):
            raise PhiInvalid(f"{self.label}: not strictly increasing on the grid")
        mid = self((_VALIDATION_GRID[:-2] + _VALIDATION_GRID[2:]) / 2.0)
        if np.any(mid > (y[:-2] + y[2:]) / 2.0 + _CONVEXITY_SLACK):
            raise PhiInvalid(f"{self.label}: fails the midpoint convexity test")


def power(p: float) -> OrliczFunction:
    """phi(x) = x^p. Admissible for p >= 1 (p < 1 fails the convexity grid)."""
    p = float(p)

    def fn(x):
        return x ** p

    def log_fn(x):
        return p * np.log(x)

    return OrliczFunction("power", f"power:{p:g}", fn, log_fn)

def exp_normalized(a: float) -> OrliczFunction:
    """phi(x) = (e^(a x) - 1) / (e^a - 1) for a > 0."""
    a = float(a)
    if a <= 0:
        raise PhiInvalid(f"exp_normalized needs a > 0, got {a}")
    denom = math.expm1(a)

    def fn(x):
        return np.expm1(a * x) / denom

    def log_fn(x):
        x = np.asarray(x, dtype=float)
        small = x < _LOGSPACE_CUTOFF
        out = np.empty_like(x)
        out[small] = np.log(np.expm1(a * x[small])) - math.log(denom)
        big = ~small
        # ln(e^{ax} - 1) = a x + ln(1 - e^{-ax}); the correction vanishes here
        out[big] = a * x[big] - math.log(denom)
        return out

    return OrliczFunction("exp_normalized", f"exp_normalized:{a:g}", fn, log_fn)

def piecewise_linear(knots: Sequence) -> OrliczFunction:
    """Piecewise-linear phi through (x, y) knots; extrapolates the last slope.

    Knots must start at (0, 0) and contain (1, 1); the admissibility grid
    rejects non-increasing or non-convex configurations.
    """
    pts = sorted((float(x), float(y)) for x, y in knots)
    if len(pts) < 2:
        raise PhiInvalid("piecewise_linear needs at least two knots")
    if pts[0] != (0.0, 0.0):
        raise PhiInvalid("piecewise_linear: first knot must be (0, 0)")
    if (1.0, 1.0) not in pts:
        raise PhiInvalid("piecewise_linear: knots must contain (1, 1)")
    xs = np.array([p[0] for p in pts])
    ys = np.array([p[1] for p in pts])
    if np.any(np.diff(xs) <= 0):
        raise PhiInvalid("piecewise_linear: duplicate knot abscissae")
    last_slope = (ys[-1] - ys[-2]) / (xs[-1] - xs[-2])

    def fn(x):
        x = np.asarray(x, dtype=float)
        out = np.interp(x, xs, ys)
        beyond = x > xs[-1]
        out = np.where(beyond, ys[-1] + last_slope * (x - xs[-1]), out)
        return out

    def log_fn(x):
        return np.log(fn(x))

    label = "piecewise_linear:" + ";".join(f"{x:g},{y:g}" for x, y in pts)
    return OrliczFunction("piecewise_linear", label, fn, log_fn)


# ---------------------------------------------------------------------------
# scalar functionals
# ---------------------------------------------------------------------------

def _ratio_terms(l_bodies, k_n: Body, l_n: Body):
    dim = k_n.dim
    if len(l_bodies) != dim - 1:
        raise ArityMismatch(f"need {dim - 1} measure bodies, got {len(l_bodies)}")
    if not (k_n.origin_interior and l_n.origin_interior):
        raise OriginNotInterior("ratio bodies must contain the origin strictly")
    measure = mv.mixed_area_measure(l_bodies)
    h_k = geo.support_many(k_n, measure.directions)
    h_l = geo.support_many(l_n, measure.directions)
    return measure, h_k, h_l

def orlicz_multiple_mixed_volume(l_bodies, k_n: Body, l_n: Body, phi: OrliczFunction,
                                 as_written_definition: bool = False) -> float:
    """V_phi(L_1..L_{n-1}, K_n, L_n); see the module docstring for the ratio
    orientation and the ``as_written_definition`` variant."""
    measure, h_k, h_l = _ratio_terms(l_bodies, k_n, l_n)
    if as_written_definition:
        vals = phi(h_l / h_k) * h_k
    else:
        vals = phi(h_k / h_l) * h_l
    return float((vals * measure.weights).sum()) / k_n.dim

def lp_multiple_mixed_volume(l_bodies, k_n: Body, l_n: Body, p: float) -> float:
    """L_p multiple mixed volume (1/n) * sum (h_{K_n}/h_{L_n})^p h_{L_n} w.

    Deliberately not routed through a power-kind Orlicz function so it can
    serve as an independent cross-check of that path.
    """
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    measure, h_k, h_l = _ratio_terms(l_bodies, k_n, l_n)
    vals = (h_k / h_l) ** p * h_l
    return float((vals * measure.weights).sum()) / k_n.dim

def orlicz_mixed_quermassintegral(base: Body, target: Body, phi: OrliczFunction,
                                  i: int, m: int = mv.DEFAULT_BALL_M) -> float:
    """W_{phi,i}(base, target) = (1/n) * sum phi(h_target/h_base) h_base
    over S_i(base, .); approximate for i >= 1."""
    if not (base.origin_interior and target.origin_interior):
        raise OriginNotInterior("Orlicz quermassintegral needs origin-interior bodies")
    measure = mv.surface_measure_i(base, i, m)
    h_b = geo.support_many(base, measure.directions)
    h_t = geo.support_many(target, measure.directions)
    return float((phi(h_t / h_b) * h_b * measure.weights).sum()) / base.dim


# ---------------------------------------------------------------------------
# volume measures
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class VolumeMeasure:
    """A weighted spherical measure tagged with how it was built.

    ``provenance`` is one of plain, orlicz, p_power, cone, v1; ``normalizer``
    records the total mass divided out by ``normalize`` (the mixed volume V
    or the Orlicz functional V_phi of the defining bodies).
    """

    base: AtomicSphericalMeasure
    provenance: str
    normalized: bool = False
    normalizer: Optional[float] = None
    params: dict = field(default_factory=dict)

    @property
    def directions(self) -> np.ndarray:
        return self.base.directions

    @property
    def weights(self) -> np.ndarray:
        return self.base.weights

    @property
    def total_mass(self) -> float:
        return self.base.total_mass

    def __len__(self) -> int:
        return len(self.base)


def mixed_volume_measure(bodies, provenance: str = "plain") -> VolumeMeasure:
    """dv(L_1..L_n) = (1/n) h_{L_n} dS(L_1..L_{n-1}; .); its total mass is the
    mixed volume V(L_1..L_n)."""
    dim = bodies[0].dim
    if len(bodies) != dim:
        raise ArityMismatch(f"need {dim} bodies, got {len(bodies)}")
    if not bodies[-1].full_dim:
        raise NonpositiveSupport("the weighting body must be full-dimensional")
    measure = mv.mixed_area_measure(bodies[:-1])
    h = geo.support_many(bodies[-1], measure.directions)
    if h.min() < 0:
        raise NonpositiveSupport("h_{L_n} < 0 at an atom: origin outside L_n")
    weighted = make_measure(dim, measure.directions, h * measure.weights / dim,
                            measure.approximate)
    return VolumeMeasure(weighted, provenance)

def cone_volume_measure(body: Body) -> VolumeMeasure:
    """dv_L = (1/n) h_L dS_L, the cone-volume measure."""
    return mixed_volume_measure([body] * body.dim, provenance="cone")

def first_mixed_volume_measure(base: Body, target: Body) -> VolumeMeasure:
    """dv_1 = (1/n) h_K dS_L with mass V_1(L, K)."""
    return mixed_volume_measure([base] * (base.dim - 1) + [target], provenance="v1")

def orlicz_mixed_volume_measure(l_bodies, k_n: Body, l_n: Body,
                                phi: OrliczFunction) -> VolumeMeasure:
    """dv_phi = (1/n) phi(h_{K_n}/h_{L_n}) h_{L_n} dS(L_1..L_{n-1}; .).

    With K_n = L_n this coincides atom for atom with the plain mixed volume
    measure, and its total mass is always the Orlicz multiple mixed volume.
    """
    measure, h_k, h_l = _ratio_terms(l_bodies, k_n, l_n)
    weights = phi(h_k / h_l) * h_l * measure.weights / k_n.dim
    weighted = make_measure(k_n.dim, measure.directions, weights, measure.approximate)
    return VolumeMeasure(weighted, "orlicz", params={"phi": phi.label})

def orlicz_quermass_measure(base: Body, target: Body, phi: OrliczFunction, i: int,
                            m: int = mv.DEFAULT_BALL_M) -> VolumeMeasure:
    """dw_{phi,i} = (1/n) phi(h_target/h_base) h_base dS_i(base, .); its mass
    is the i-th Orlicz mixed quermassintegral of (base, target)."""
    if not (base.origin_interior and target.origin_interior):
        raise OriginNotInterior("quermassintegral measure needs origin-interior bodies")
    measure = mv.surface_measure_i(base, i, m)
    h_b = geo.support_many(base, measure.directions)
    h_t = geo.support_many(target, measure.directions)
    weights = phi(h_t / h_b) * h_b * measure.weights / base.dim
    weighted = make_measure(base.dim, measure.directions, weights, measure.approximate)
    return VolumeMeasure(weighted, "orlicz", params={"phi": phi.label, "i": i})

def p_power_mixed_volume_measure(l_bodies, k_n: Body, l_n: Body, p: float) -> VolumeMeasure:
    """The power-kind measure (1/n) (h_{K_n}/h_{L_n})^p h_{L_n} dS."""
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    measure, h_k, h_l = _ratio_terms(l_bodies, k_n, l_n)
    weights = (h_k / h_l) ** p * h_l * measure.weights / k_n.dim
    weighted = make_measure(k_n.dim, measure.directions, weights, measure.approximate)
    return VolumeMeasure(weighted, "p_power", params={"p": p})

def normalize(measure: VolumeMeasure) -> VolumeMeasure:
    """Probability-normalize; idempotent; records the mass divided out."""
    mass = measure.total_mass
    if measure.normalized:
        return measure
    if mass <= 0:
        raise ZeroMass("cannot normalize a measure of mass 0")
    scaled = AtomicSphericalMeasure(measure.base.dim, measure.base.directions,
                                    measure.base.weights / mass,
                                    measure.base.approximate)
    return VolumeMeasure(scaled, measure.provenance, normalized=True,
                         normalizer=mass, params=dict(measure.params))

def log_expectation(k_n: Body, l_n: Body, phi: OrliczFunction,
                    measure: VolumeMeasure) -> float:
    """Integral of ln(phi(h_{K_n}/h_{L_n})) against a probability measure."""
    if not measure.normalized:
        raise ValueError("log_expectation needs a normalized measure")
    h_k = geo.support_many(k_n, measure.directions)
    h_l = geo.support_many(l_n, measure.directions)
    if h_l.min() <= 0 or h_k.min() <= 0:
        raise LogOfNonpositive(
            "phi(h ratio) <= 0 at an atom; bodies must contain the origin strictly")
    return float((phi.log_value(h_k / h_l) * measure.weights).sum())
