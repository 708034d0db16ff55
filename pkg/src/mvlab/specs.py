"""Declarative JSON descriptions of bodies and admissible functions.

Body specs: {"dim": 2|3, "kind": ..., <kind fields>, "name": optional}
with kinds polytope (vertices), box (sides), regular_polygon (k),
symmetric_hull (points), ball_approx (m), dilate_of (of + c + t).
Unknown fields are rejected so fixture typos fail loudly.

Phi specs: {"kind": "power"|"exp_normalized"|"piecewise_linear",
"p"|"a"|"knots"}; the CLI also accepts the compact forms "power:2" and
"exp_normalized:0.5".
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from . import geometry as geo
from . import orlicz as oz
from .errors import MvlabError, SpecError
from .geometry import Body

_KIND_FIELDS = {
    "polytope": {"vertices"},
    "box": {"sides"},
    "regular_polygon": {"k"},
    "symmetric_hull": {"points"},
    "ball_approx": {"m"},
    "dilate_of": {"of", "c", "t"},
}


def parse_body_spec(spec: dict) -> Body:
    if not isinstance(spec, dict):
        raise SpecError("body spec must be a JSON object")
    kind = spec.get("kind")
    if kind not in _KIND_FIELDS:
        raise SpecError(f"unknown body kind {kind!r}")
    dim = spec.get("dim")
    if dim not in (2, 3):
        raise SpecError(f"body spec needs dim 2 or 3, got {dim!r}")
    allowed = _KIND_FIELDS[kind] | {"dim", "kind", "name"}
    unknown = set(spec) - allowed
    if unknown:
        raise SpecError(f"unknown fields {sorted(unknown)} for kind {kind!r}")
    try:
        return _build_body(spec, kind, dim)
    except MvlabError:
        raise
    except (TypeError, ValueError, KeyError) as exc:
        raise SpecError(f"invalid {kind!r} spec: {exc}") from exc

def _build_body(spec: dict, kind: str, dim: int) -> Body:
    if kind == "polytope":
        return geo.hull(np.asarray(spec["vertices"], dtype=float), dim)
    if kind == "box":
        return geo.generate(geo.BodyGenSpec(dim=dim, kind="box", sides=spec["sides"]))
    if kind == "regular_polygon":
        return geo.generate(geo.BodyGenSpec(dim=dim, kind="regular_polygon", k=int(spec["k"])))
    if kind == "symmetric_hull":
        return geo.generate(geo.BodyGenSpec(dim=dim, kind="symmetric_hull",
                                            points=spec["points"]))
    if kind == "ball_approx":
        return geo.ball_approx(dim, int(spec["m"]))
    base = parse_body_spec(spec["of"])
    t = spec.get("t") or [0.0] * dim
    return geo.scale_translate(base, float(spec.get("c", 1.0)), t)

def body_to_spec(body: Body, name: str = None) -> dict:
    """Canonical round-trippable form: the vertex polytope."""
    spec = {"dim": body.dim, "kind": "polytope", "vertices": body.vertices.tolist()}
    if name:
        spec["name"] = name
    return spec

def load_body(path) -> Body:
    try:
        spec = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise SpecError(f"cannot read body spec {path}: {exc}") from exc
    return parse_body_spec(spec)


def parse_phi_spec(spec: dict) -> oz.OrliczFunction:
    if not isinstance(spec, dict):
        raise SpecError("phi spec must be a JSON object")
    kind = spec.get("kind")
    fields = {"power": "p", "exp_normalized": "a", "piecewise_linear": "knots"}
    if kind not in fields:
        raise SpecError(f"unknown phi kind {kind!r}")
    unknown = set(spec) - {"kind", fields[kind]}
    if unknown:
        raise SpecError(f"unknown fields {sorted(unknown)} for phi kind {kind!r}")
    if fields[kind] not in spec:
        raise SpecError(f"phi kind {kind!r} needs field {fields[kind]!r}")
    if kind == "power":
        return oz.power(float(spec["p"]))
    if kind == "exp_normalized":
        return oz.exp_normalized(float(spec["a"]))
    return oz.piecewise_linear(spec["knots"])

def parse_phi_arg(arg: str) -> oz.OrliczFunction:
    """CLI phi argument: 'power:P', 'exp_normalized:A', or a JSON file path."""
    if ":" in arg:
        kind, _, value = arg.partition(":")
        if kind == "power":
            return oz.power(float(value))
        if kind == "exp_normalized":
            return oz.exp_normalized(float(value))
        raise SpecError(f"unknown compact phi form {arg!r}")
    try:
        spec = json.loads(Path(arg).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise SpecError(f"cannot read phi spec {arg}: {exc}") from exc
    return parse_phi_spec(spec)
