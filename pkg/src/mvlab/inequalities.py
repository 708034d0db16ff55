"""Inequality catalog, equality probes, the q -> infinity limit trace, and
seeded fuzzing for minimum slack.

Every check is written in "lhs >= rhs" orientation, so ``slack = lhs - rhs``
is nonnegative whenever the inequality holds. Catalog (bodies are passed as
one ordered list; n is the ambient dimension):

======================== =============================== =====================
id                       bodies                          parameters
======================== =============================== =====================
LOG_MINK_CONJ_1_1        K, L (origin-symmetric)         --
LOG_MINK_1_2             K, L                            --
CLASSICAL_AF_1_8         L_1 .. L_n                      r
MINK_QUERMASS_2_4        K, L                            i in [0, n-2]
LP_QUERMASS_2_8          K, L                            p >= 1, i in [0, n-2]
LP_BM_QUERMASS_2_9       K, L                            p >= 1, i in [0, n-1], m
ORLICZ_AF_3_2            K_1 .. K_n, L_n                 r, phi
ORLICZ_MINK_GHW_3_3      K, L                            phi
ORLICZ_QUERMASS_3_4      K, L                            phi, i in [0, n-1], m
LP_MINK_FIREY_SECOND_3_4 K, L                            p >= 1
LOG_AF_4_9               L_1 .. L_n, K_n                 r, phi
INTERMEDIATE_4_16        L_1 .. L_n, K_n                 phi
COROLLARY_4_17           K, L                            phi, i in [0, n-1], m
======================== =============================== =====================

The r-indexed product shared by the Aleksandrov-Fenchel-type right sides
repeats the i-th body of its argument tuple in the first r slots and fills
the rest with the remaining tuple entries, so at r = n each factor collapses
to a plain volume. Equality probes treat pure dilates (t = 0) as the
equality class; translated dilates are reported by the fuzzer without
assertion.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field, asdict
from enum import Enum
from typing import Optional, Sequence

import numpy as np

from . import geometry as geo
from . import mixed_volumes as mv
from . import orlicz as oz
from .errors import MvlabError, PreconditionViolated
from .geometry import Body
from .orlicz import OrliczFunction

EXACT_TOL_REL = 1e-9
APPROX_TOL_REL = 5e-3


class InequalityId(str, Enum):
    LOG_MINK_CONJ_1_1 = "LOG_MINK_CONJ_1_1"
    LOG_MINK_1_2 = "LOG_MINK_1_2"
    CLASSICAL_AF_1_8 = "CLASSICAL_AF_1_8"
    MINK_QUERMASS_2_4 = "MINK_QUERMASS_2_4"
    LP_QUERMASS_2_8 = "LP_QUERMASS_2_8"
    LP_BM_QUERMASS_2_9 = "LP_BM_QUERMASS_2_9"
    ORLICZ_AF_3_2 = "ORLICZ_AF_3_2"
    ORLICZ_MINK_GHW_3_3 = "ORLICZ_MINK_GHW_3_3"
    ORLICZ_QUERMASS_3_4 = "ORLICZ_QUERMASS_3_4"
    LP_MINK_FIREY_SECOND_3_4 = "LP_MINK_FIREY_SECOND_3_4"
    LOG_AF_4_9 = "LOG_AF_4_9"
    INTERMEDIATE_4_16 = "INTERMEDIATE_4_16"
    COROLLARY_4_17 = "COROLLARY_4_17"


@dataclass
class InequalityReport:
    """One evaluated inequality instance."""

    id: str
    dim: int
    lhs: float
    rhs: float
    slack: float
    tolerance: float
    status: str  # holds | equality | violation | approximate_holds
    approximate: bool
    inputs_digest: str
    r: Optional[int] = None
    p: Optional[float] = None
    i: Optional[int] = None
    phi: str = ""
    seed: Optional[int] = None
    bodies_vertices: Optional[list] = None


# ---------------------------------------------------------------------------
# shared pieces
# ---------------------------------------------------------------------------

def af_product(bodies: Sequence[Body], r: int) -> float:
    """prod over i <= r of V(b_i, ..., b_i [r copies], b_{r+1}, ..., b_n)^(1/r).

    At r = n the trailing block is empty and each factor is Vol(b_i)^... the
    n-fold repetition, i.e. a plain volume; the literal r = n reading that
    keeps the last body in every factor fails on dilate pairs, so the
    convention above (shared with the classical product) is used throughout.
    """
    n = len(bodies)
    if not 1 <= r <= n:
        raise PreconditionViolated(f"r must be in [1, {n}], got {r}")
    prod = 1.0
    for i in range(r):
        factor = mv.mixed_volume([bodies[i]] * r + list(bodies[r:])).value
        prod *= factor ** (1.0 / r)
    return prod

def _require_origin_interior(tag: str, *bodies: Body):
    for body in bodies:
        if not body.origin_interior:
            raise PreconditionViolated(f"{tag}: body must contain the origin strictly")

def _require_symmetric(body: Body):
    flipped = -body.vertices
    flipped = flipped[geo._lexsort_rows(flipped)]
    if not np.allclose(flipped, body.vertices, atol=1e-9):
        raise PreconditionViolated("bodies must be origin-symmetric")

def _log_ratio_expectation(k: Body, l: Body, measure: oz.VolumeMeasure) -> float:
    return oz.log_expectation(k, l, oz.power(1.0), oz.normalize(measure))

def _need(params: dict, key: str, id_: InequalityId):
    value = params.get(key)
    if value is None:
        raise PreconditionViolated(f"{id_.value} requires parameter {key!r}")
    if key == "phi" and not isinstance(value, OrliczFunction):
        raise PreconditionViolated(f"{id_.value}: phi must be an OrliczFunction")
    return value

def _i_in(params: dict, id_: InequalityId, n: int, top: int) -> int:
    i = int(params.get("i") or 0)
    if not 0 <= i <= top:
        raise PreconditionViolated(f"{id_.value}: i must be in [0, {top}], got {i}")
    return i

def _p_at_least_1(params: dict, id_: InequalityId) -> float:
    p = float(_need(params, "p", id_))
    if p < 1:
        raise PreconditionViolated(f"{id_.value}: p must be >= 1, got {p}")
    return p


# ---------------------------------------------------------------------------
# per-id evaluators: return (lhs, rhs, approximate)
# ---------------------------------------------------------------------------

def _eval_log_mink(bodies, params, id_: InequalityId):
    k, l = bodies
    n = k.dim
    _require_origin_interior(id_.value, k, l)
    if id_ is InequalityId.LOG_MINK_CONJ_1_1:
        _require_symmetric(k)
        _require_symmetric(l)
        measure = oz.cone_volume_measure(l)
    else:
        measure = oz.first_mixed_volume_measure(l, k)
    lhs = _log_ratio_expectation(k, l, measure)
    rhs = math.log(geo.volume(k) / geo.volume(l)) / n
    return lhs, rhs, False

def _eval_classical_af(bodies, params, id_):
    n = bodies[0].dim
    if len(bodies) != n:
        raise PreconditionViolated(f"CLASSICAL_AF_1_8 needs {n} bodies, got {len(bodies)}")
    r = int(_need(params, "r", id_))
    lhs = mv.mixed_volume(list(bodies)).value
    rhs = af_product(list(bodies), r)
    return lhs, rhs, False

def _eval_mink_quermass(bodies, params, id_):
    k, l = bodies
    n = k.dim
    i = _i_in(params, id_, n, n - 2)
    m = int(params.get("m") or mv.DEFAULT_BALL_M)
    w_kl = mv.mixed_quermassintegral(k, l, i, m)
    lhs = w_kl ** (n - i)
    rhs = mv.quermassintegral(k, i) ** (n - i - 1) * mv.quermassintegral(l, i)
    return lhs, rhs, i >= 1

def _eval_lp_quermass(bodies, params, id_):
    k, l = bodies
    n = k.dim
    p = _p_at_least_1(params, id_)
    i = _i_in(params, id_, n, n - 2)
    m = int(params.get("m") or mv.DEFAULT_BALL_M)
    _require_origin_interior(id_.value, k, l)
    w_pkl = mv.p_mixed_quermassintegral(k, l, p, i, m)
    lhs = w_pkl ** (n - i)
    rhs = mv.quermassintegral(k, i) ** (n - i - p) * mv.quermassintegral(l, i) ** p
    return lhs, rhs, i >= 1

def _eval_lp_bm_quermass(bodies, params, id_):
    k, l = bodies
    n = k.dim
    p = _p_at_least_1(params, id_)
    i = _i_in(params, id_, n, n - 1)
    m = int(params.get("m") or geo.DEFAULT_FIREY_M[n])
    _require_origin_interior(id_.value, k, l)
    total = geo.firey_sum_approx(k, l, p, m)
    e = p / (n - i)
    lhs = mv.quermassintegral(total, i) ** e
    rhs = mv.quermassintegral(k, i) ** e + mv.quermassintegral(l, i) ** e
    return lhs, rhs, True

def _eval_orlicz_af(bodies, params, id_):
    n = bodies[0].dim
    if len(bodies) != n + 1:
        raise PreconditionViolated(f"ORLICZ_AF_3_2 needs {n + 1} bodies, got {len(bodies)}")
    ks, l_n = list(bodies[:n]), bodies[n]
    r = int(_need(params, "r", id_))
    phi = _need(params, "phi", id_)
    _require_origin_interior(id_.value, ks[-1], l_n)
    lhs = oz.orlicz_multiple_mixed_volume(ks[:-1], ks[-1], l_n, phi)
    den = mv.mixed_volume(ks[:-1] + [l_n]).value
    num = af_product(ks, r)
    rhs = den * float(phi(num / den))
    return lhs, rhs, False

def _eval_orlicz_mink_ghw(bodies, params, id_):
    k, l = bodies
    n = k.dim
    phi = _need(params, "phi", id_)
    _require_origin_interior(id_.value, k, l)
    lhs = oz.orlicz_multiple_mixed_volume([k] * (n - 1), l, k, phi)
    vk, vl = geo.volume(k), geo.volume(l)
    rhs = vk * float(phi((vl / vk) ** (1.0 / n)))
    return lhs, rhs, False

def _eval_orlicz_quermass(bodies, params, id_):
    k, l = bodies
    n = k.dim
    phi = _need(params, "phi", id_)
    i = _i_in(params, id_, n, n - 1)
    m = int(params.get("m") or mv.DEFAULT_BALL_M)
    _require_origin_interior(id_.value, k, l)
    lhs = oz.orlicz_mixed_quermassintegral(k, l, phi, i, m)
    wk, wl = mv.quermassintegral(k, i), mv.quermassintegral(l, i)
    rhs = wk * float(phi((wl / wk) ** (1.0 / (n - i))))
    return lhs, rhs, i >= 1

def _eval_lp_mink_firey(bodies, params, id_):
    k, l = bodies
    n = k.dim
    p = _p_at_least_1(params, id_)
    _require_origin_interior(id_.value, k, l)
    lhs = mv.p_mixed_quermassintegral(k, l, p, 0)
    rhs = geo.volume(k) ** ((n - p) / n) * geo.volume(l) ** (p / n)
    return lhs, rhs, False

def _split_log_af_bodies(bodies, id_):
    n = bodies[0].dim
    if len(bodies) != n + 1:
        raise PreconditionViolated(f"{id_.value} needs {n + 1} bodies, got {len(bodies)}")
    ls, k_n = list(bodies[:n]), bodies[n]
    _require_origin_interior(id_.value, ls[-1], k_n)
    return ls, k_n

def _eval_log_af(bodies, params, id_):
    ls, k_n = _split_log_af_bodies(bodies, id_)
    r = int(_need(params, "r", id_))
    phi = _need(params, "phi", id_)
    measure = oz.normalize(oz.orlicz_mixed_volume_measure(ls[:-1], k_n, ls[-1], phi))
    lhs = oz.log_expectation(k_n, ls[-1], phi, measure)
    num = af_product(ls[:-1] + [k_n], r)
    den = mv.mixed_volume(ls).value
    rhs = float(phi.log_value(num / den))
    return lhs, rhs, False

def _eval_intermediate(bodies, params, id_):
    ls, k_n = _split_log_af_bodies(bodies, id_)
    phi = _need(params, "phi", id_)
    measure = oz.normalize(oz.orlicz_mixed_volume_measure(ls[:-1], k_n, ls[-1], phi))
    lhs = oz.log_expectation(k_n, ls[-1], phi, measure)
    v_phi = oz.orlicz_multiple_mixed_volume(ls[:-1], k_n, ls[-1], phi)
    rhs = math.log(v_phi / mv.mixed_volume(ls).value)
    return lhs, rhs, False

def _eval_corollary(bodies, params, id_):
    k, l = bodies
    n = k.dim
    phi = _need(params, "phi", id_)
    i = _i_in(params, id_, n, n - 1)
    m = int(params.get("m") or mv.DEFAULT_BALL_M)
    _require_origin_interior(id_.value, k, l)
    measure = oz.orlicz_quermass_measure(l, k, phi, i, m)
    lhs = _log_ratio_expectation(k, l, measure)
    rhs = math.log(mv.quermassintegral(k, i) / mv.quermassintegral(l, i)) / (n - i)
    return lhs, rhs, i >= 1


@dataclass(frozen=True)
class _CatalogEntry:
    evaluator: object
    body_count: object  # dim -> expected number of bodies
    proved: bool = True  # LOG_MINK_CONJ_1_1 is report-only in R^3


CATALOG = {
    InequalityId.LOG_MINK_CONJ_1_1: _CatalogEntry(_eval_log_mink, lambda n: 2, proved=False),
    InequalityId.LOG_MINK_1_2: _CatalogEntry(_eval_log_mink, lambda n: 2),
    InequalityId.CLASSICAL_AF_1_8: _CatalogEntry(_eval_classical_af, lambda n: n),
    InequalityId.MINK_QUERMASS_2_4: _CatalogEntry(_eval_mink_quermass, lambda n: 2),
    InequalityId.LP_QUERMASS_2_8: _CatalogEntry(_eval_lp_quermass, lambda n: 2),
    InequalityId.LP_BM_QUERMASS_2_9: _CatalogEntry(_eval_lp_bm_quermass, lambda n: 2),
    InequalityId.ORLICZ_AF_3_2: _CatalogEntry(_eval_orlicz_af, lambda n: n + 1),
    InequalityId.ORLICZ_MINK_GHW_3_3: _CatalogEntry(_eval_orlicz_mink_ghw, lambda n: 2),
    InequalityId.ORLICZ_QUERMASS_3_4: _CatalogEntry(_eval_orlicz_quermass, lambda n: 2),
    InequalityId.LP_MINK_FIREY_SECOND_3_4: _CatalogEntry(_eval_lp_mink_firey, lambda n: 2),
    InequalityId.LOG_AF_4_9: _CatalogEntry(_eval_log_af, lambda n: n + 1),
    InequalityId.INTERMEDIATE_4_16: _CatalogEntry(_eval_intermediate, lambda n: n + 1),
    InequalityId.COROLLARY_4_17: _CatalogEntry(_eval_corollary, lambda n: 2),
}


# ---------------------------------------------------------------------------
# check
# ---------------------------------------------------------------------------

def inputs_digest(id_: InequalityId, bodies, params: dict) -> str:
    """Stable hash of vertex data, phi, and scalar parameters."""
    payload = {
        "id": id_.value,
        "dim": bodies[0].dim,
        "bodies": [[[x.hex() for x in row] for row in b.vertices] for b in bodies],
        "params": {
            k: (v.label if isinstance(v, OrliczFunction) else v)
            for k, v in sorted(params.items()) if v is not None
        },
    }
    blob = json.dumps(payload, sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()[:16]

def check(id_: InequalityId, bodies: Sequence[Body], params: Optional[dict] = None,
          tol: Optional[float] = None, seed: Optional[int] = None,
          keep_bodies: bool = False, exact_tol: Optional[float] = None) -> InequalityReport:
    """Evaluate one catalog inequality on concrete bodies.

    ``tol`` is the relative tolerance base; it defaults to 1e-9 on exact
    paths and 5e-3 whenever a ball or Firey approximant entered, and is
    scaled by max(|lhs|, |rhs|, 1) to give the report tolerance.
    ``exact_tol`` replaces only the exact-path default (the MVLAB_TOL hook).
    """
    id_ = InequalityId(id_)
    params = dict(params or {})
    unknown = set(params) - {"r", "p", "i", "phi", "m"}
    if unknown:
        raise PreconditionViolated(f"unknown parameters {sorted(unknown)}")
    entry = CATALOG[id_]
    dim = bodies[0].dim
    expected = entry.body_count(dim)
    if len(bodies) != expected:
        raise PreconditionViolated(
            f"{id_.value} needs {expected} bodies in R^{dim}, got {len(bodies)}")
    for b in bodies:
        if b.dim != dim:
            raise PreconditionViolated("bodies must share one ambient dimension")

    lhs, rhs, approximate = entry.evaluator(list(bodies), params, id_)
    slack = lhs - rhs
    if tol is not None:
        base = tol
    elif approximate:
        base = APPROX_TOL_REL
    else:
        base = exact_tol if exact_tol is not None else EXACT_TOL_REL
    tolerance = base * max(abs(lhs), abs(rhs), 1.0)
    if slack < -tolerance:
        status = "violation"
    elif abs(slack) <= tolerance:
        status = "equality"
    else:
        status = "approximate_holds" if approximate else "holds"

    phi = params.get("phi")
    return InequalityReport(
        id=id_.value, dim=dim, lhs=float(lhs), rhs=float(rhs), slack=float(slack),
        tolerance=float(tolerance), status=status, approximate=approximate,
        inputs_digest=inputs_digest(id_, bodies, params),
        r=params.get("r"), p=params.get("p"), i=params.get("i"),
        phi=phi.label if isinstance(phi, OrliczFunction) else (phi or ""),
        seed=seed,
        bodies_vertices=[b.vertices.tolist() for b in bodies] if keep_bodies else None,
    )


# ---------------------------------------------------------------------------
# proof trace: the q -> infinity machinery behind the log inequality
# ---------------------------------------------------------------------------

@dataclass
class ProofTrace:
    """Samples of f(q) = (1/V_phi) * integral of phi(ratio)^(q/(q+n)) dv,
    the analytic sign of df/dq, and the Hoelder gaps

        V_phi - (int phi^(q/(q+n)) dv)^((q+n)/q) * (int dv)^(-n/q),

    which are nonnegative and vanish exactly on dilate inputs."""

    q_values: list
    f_values: list
    derivative_signs: list
    holder_gaps: list
    limit_estimate: float

    def to_dict(self) -> dict:
        return asdict(self)


def proof_trace(l_bodies: Sequence[Body], k_n: Body, l_n: Body, phi: OrliczFunction,
                q_list: Sequence[float]) -> ProofTrace:
    q_values = [float(q) for q in q_list]
    increasing = all(a < b for a, b in zip(q_values, q_values[1:]))
    if not q_values or q_values[0] < 1 or not increasing:
        raise PreconditionViolated("q_list must be increasing with all q >= 1")
    n = k_n.dim
    dv = oz.mixed_volume_measure(list(l_bodies) + [l_n])
    v = dv.total_mass
    v_phi = oz.orlicz_multiple_mixed_volume(list(l_bodies), k_n, l_n, phi)
    h_k = geo.support_many(k_n, dv.directions)
    h_l = geo.support_many(l_n, dv.directions)
    log_phi = phi.log_value(h_k / h_l)

    f_values, signs, gaps = [], [], []
    for q in q_values:
        alpha = q / (q + n)
        powered = np.exp(alpha * log_phi)
        integral = float((powered * dv.weights).sum())
        f_values.append(integral / v_phi)
        deriv = float((powered * log_phi * dv.weights).sum())
        signs.append(int(np.sign(deriv)) if abs(deriv) > 1e-15 * max(integral, 1.0) else 0)
        # log-space for the (q+n)/q power; integrals are strictly positive
        holder_rhs = math.exp((q + n) / q * math.log(integral) - n / q * math.log(v))
        gaps.append(v_phi - holder_rhs)
    return ProofTrace(q_values, f_values, signs, gaps, f_values[-1])


# ---------------------------------------------------------------------------
# fuzzing
# ---------------------------------------------------------------------------

@dataclass
class FuzzConfig:
    """Generator and parameter ranges for a fuzz campaign."""

    dim: int = 2
    trials: int = 100
    n_points: int = 8
    symmetric: bool = False
    phi_pool: Optional[Sequence[OrliczFunction]] = None
    p_values: Sequence[float] = (1.0, 1.5, 2.0, 3.0)
    r_values: Optional[Sequence[int]] = None
    i_values: Optional[Sequence[int]] = None
    m: Optional[int] = None
    firey_m: Optional[int] = None


@dataclass
class IdSummary:
    id: str
    trials: int
    violations: int
    min_slack: float
    argmin_digest: str
    worst: list  # up to 5 (slack, digest, seed) triples, smallest slack first


@dataclass
class FuzzResult:
    reports: list
    summaries: dict
    errors: list


def _default_phi_pool():
    return (oz.power(1.0), oz.power(2.0), oz.exp_normalized(1.0))

_NEEDS_R = {InequalityId.CLASSICAL_AF_1_8, InequalityId.ORLICZ_AF_3_2, InequalityId.LOG_AF_4_9}
_NEEDS_PHI = {InequalityId.ORLICZ_AF_3_2, InequalityId.ORLICZ_MINK_GHW_3_3,
              InequalityId.ORLICZ_QUERMASS_3_4, InequalityId.LOG_AF_4_9,
              InequalityId.INTERMEDIATE_4_16, InequalityId.COROLLARY_4_17}
_NEEDS_P = {InequalityId.LP_QUERMASS_2_8, InequalityId.LP_BM_QUERMASS_2_9,
            InequalityId.LP_MINK_FIREY_SECOND_3_4}
_I_TOP = {InequalityId.MINK_QUERMASS_2_4: -2, InequalityId.LP_QUERMASS_2_8: -2,
          InequalityId.LP_BM_QUERMASS_2_9: -1, InequalityId.ORLICZ_QUERMASS_3_4: -1,
          InequalityId.COROLLARY_4_17: -1}

def _trial_params(id_: InequalityId, t: int, config: FuzzConfig) -> dict:
    n = config.dim
    params: dict = {}
    if id_ in _NEEDS_R:
        rs = list(config.r_values or range(1, n + 1))
        params["r"] = int(rs[t % len(rs)])
    if id_ in _NEEDS_PHI:
        pool = list(config.phi_pool or _default_phi_pool())
        params["phi"] = pool[(t // max(1, n)) % len(pool)]
    if id_ in _NEEDS_P:
        ps = list(config.p_values)
        params["p"] = float(ps[t % len(ps)])
    if id_ in _I_TOP:
        top = n + _I_TOP[id_]
        i_values = [i for i in (config.i_values or range(top + 1)) if 0 <= i <= top]
        if not i_values:
            raise PreconditionViolated(f"{id_.value}: no admissible i for dim {n}")
        params["i"] = int(i_values[(t // 2) % len(i_values)])
    if id_ is InequalityId.LP_BM_QUERMASS_2_9:
        params["m"] = config.firey_m or geo.DEFAULT_FIREY_M[n]
    elif "i" in params or id_ in _NEEDS_PHI:
        if config.m is not None:
            params["m"] = config.m
    return params

def _trial_bodies(id_: InequalityId, trial_seed: int, config: FuzzConfig):
    count = CATALOG[id_].body_count(config.dim)
    symmetric = config.symmetric or id_ is InequalityId.LOG_MINK_CONJ_1_1
    kind = "symmetric_hull" if symmetric else "random_hull"
    rng = np.random.default_rng(trial_seed)
    bodies = []
    for _ in range(count):
        sub_seed = int(rng.integers(0, 2 ** 62))
        bodies.append(geo.generate(geo.BodyGenSpec(
            dim=config.dim, kind=kind, seed=sub_seed, n_points=config.n_points)))
    return bodies

def fuzz(ids: Sequence, config: FuzzConfig, seed: int) -> FuzzResult:
    """Run seeded random trials per id; per-trial errors are recorded, never
    raised. Deterministic: trial t draws everything from seed XOR t."""
    reports: list = []
    errors: list = []
    summaries: dict = {}
    for raw_id in ids:
        id_ = InequalityId(raw_id)
        id_reports = []
        for t in range(config.trials):
            trial_seed = int(seed) ^ t
            try:
                bodies = _trial_bodies(id_, trial_seed, config)
                params = _trial_params(id_, t, config)
                report = check(id_, bodies, params, seed=trial_seed, keep_bodies=True)
                id_reports.append(report)
            except MvlabError as exc:
                errors.append({"id": id_.value, "trial": t, "seed": trial_seed,
                               "error": f"{type(exc).__name__}: {exc}"})
        reports.extend(id_reports)
        if id_reports:
            by_slack = sorted(id_reports, key=lambda rep: rep.slack)
            summaries[id_.value] = IdSummary(
                id=id_.value,
                trials=len(id_reports),
                violations=sum(rep.status == "violation" for rep in id_reports),
                min_slack=by_slack[0].slack,
                argmin_digest=by_slack[0].inputs_digest,
                worst=[(rep.slack, rep.inputs_digest, rep.seed) for rep in by_slack[:5]],
            )
    return FuzzResult(reports, summaries, errors)
