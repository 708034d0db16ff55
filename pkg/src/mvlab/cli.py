"""File-driven command line: compute functionals, run inequality checks,
trace the q -> infinity limit, and fuzz for minimum slack.

Exit codes: 0 on success (check: holds or equality), 2 when a check reports
a violation, 1 on any parse or precondition error. Report rows go to stdout
only; stderr carries diagnostics.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import asdict
from pathlib import Path

from . import geometry as geo
from . import mixed_volumes as mv
from . import orlicz as oz
from . import inequalities as iq
from . import reporting, specs
from .errors import MvlabError


def _load_bodies(paths):
    return [specs.load_body(p) for p in paths]

def _emit(payload) -> None:
    print(json.dumps(payload, indent=1, sort_keys=True))

def _dump_bodies(bodies, paths, dump_dir) -> None:
    out = Path(dump_dir)
    out.mkdir(parents=True, exist_ok=True)
    for k, (body, src) in enumerate(zip(bodies, paths)):
        name = Path(src).stem
        target = out / f"{k:02d}_{name}.json"
        target.write_text(json.dumps(specs.body_to_spec(body, name=name), indent=1) + "\n")

def _measure_payload(measure) -> dict:
    return {
        "dim": measure.dim,
        "approximate": measure.approximate,
        "total_mass": measure.total_mass,
        "atoms": [{"direction": list(u), "weight": float(w)} for u, w in measure.atoms()],
    }


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_compute(args) -> int:
    bodies = _load_bodies(args.bodies)
    if args.dump:
        _dump_bodies(bodies, args.bodies, args.dump)
    what = args.what
    if what == "volume":
        _require(len(bodies) == 1, "volume takes one body")
        _emit({"value": geo.volume(bodies[0])})
    elif what == "mixed-volume":
        if args.method == "polyfit":
            result = mv.mixed_volume_polyfit(bodies)
        elif args.method == "measure":
            result = mv.mixed_volume_via_measure(bodies)
        else:
            result = mv.mixed_volume(bodies)
        _emit({"value": result.value, "method": result.method, "condition": result.condition})
    elif what == "quermassintegral":
        _require(len(bodies) == 1 and args.i is not None,
                 "quermassintegral takes one body and --i")
        if args.method == "ball":
            value = mv.quermassintegral_ball_path(bodies[0], args.i,
                                                  args.m or mv.DEFAULT_BALL_M)
            method = "ball"
        else:
            value = mv.quermassintegral(bodies[0], args.i)
            method = "closed_form"
        _emit({"value": value, "i": args.i, "method": method})
    elif what == "orlicz-mmv":
        phi = _require_phi(args)
        _require(len(bodies) == bodies[0].dim + 1,
                 "orlicz-mmv takes L_1..L_{n-1}, K_n, L_n")
        value = oz.orlicz_multiple_mixed_volume(bodies[:-2], bodies[-2], bodies[-1], phi)
        _emit({"value": value, "phi": phi.label})
    elif what == "lp-mmv":
        _require(args.p is not None, "lp-mmv needs --p")
        _require(len(bodies) == bodies[0].dim + 1,
                 "lp-mmv takes L_1..L_{n-1}, K_n, L_n")
        value = oz.lp_multiple_mixed_volume(bodies[:-2], bodies[-2], bodies[-1], args.p)
        _emit({"value": value, "p": args.p})
    elif what == "measure":
        _emit(_measure_payload(mv.mixed_area_measure(bodies)))
    return 0

def cmd_check(args) -> int:
    bodies = _load_bodies(args.bodies)
    params = {}
    if args.r is not None:
        params["r"] = args.r
    if args.p is not None:
        params["p"] = args.p
    if args.i is not None:
        params["i"] = args.i
    if args.m is not None:
        params["m"] = args.m
    if args.phi is not None:
        params["phi"] = specs.parse_phi_arg(args.phi)
    report = iq.check(args.id, bodies, params, tol=args.tol, exact_tol=_env_tol())
    payload = asdict(report)
    payload.pop("bodies_vertices")
    _emit(payload)
    return 2 if report.status == "violation" else 0

def cmd_fuzz(args) -> int:
    ids = [token for chunk in args.ids for token in chunk.split(",") if token]
    config = iq.FuzzConfig(
        dim=args.dim,
        trials=args.trials,
        n_points=args.n_points,
        symmetric=args.symmetric,
        phi_pool=tuple(specs.parse_phi_arg(p) for p in args.phi_pool) if args.phi_pool else None,
        m=args.m,
    )
    result = iq.fuzz(ids, config, seed=args.seed)
    reporting.write_reports_csv(result.reports, args.out)
    if args.json_out:
        reporting.write_reports_json(result.reports, args.json_out)
    if args.plot:
        from . import plotting

        plotting.save_slack_histograms(result.reports, args.plot)
    for line in reporting.summary_lines(result):
        print(line)
    return 0

def cmd_trace(args) -> int:
    bodies = _load_bodies(args.bodies)
    _require(len(bodies) == bodies[0].dim + 1, "trace takes L_1..L_{n-1}, K_n, L_n")
    phi = _require_phi(args)
    q_list = [float(tok) for tok in args.q.split(",") if tok]
    trace = iq.proof_trace(bodies[:-2], bodies[-2], bodies[-1], phi, q_list)
    _emit(trace.to_dict())
    return 0


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise MvlabError(message)

def _require_phi(args):
    _require(args.phi is not None, "this command needs --phi")
    return specs.parse_phi_arg(args.phi)

def _env_tol():
    raw = os.environ.get("MVLAB_TOL")
    return float(raw) if raw else None


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mvlab",
        description="Mixed volumes, Orlicz mixed volume measures, and "
                    "geometric-inequality checks for polytopes in R^2 and R^3.")
    sub = parser.add_subparsers(dest="command", required=True)

    compute = sub.add_parser("compute", help="evaluate a functional on body files")
    compute.add_argument("what", choices=["volume", "mixed-volume", "quermassintegral",
                                          "orlicz-mmv", "lp-mmv", "measure"])
    compute.add_argument("bodies", nargs="+", help="body spec JSON files")
    compute.add_argument("--i", type=int, default=None)
    compute.add_argument("--p", type=float, default=None)
    compute.add_argument("--m", type=int, default=None)
    compute.add_argument("--phi", default=None, help="power:P, exp_normalized:A, or a JSON file")
    compute.add_argument("--method", default="polarization",
                         choices=["polarization", "polyfit", "measure", "closed_form", "ball"])
    compute.add_argument("--dump", default=None,
                         help="directory to write parsed bodies as canonical polytope JSON")
    compute.set_defaults(fn=cmd_compute)

    chk = sub.add_parser("check", help="evaluate one catalog inequality")
    chk.add_argument("--id", required=True, choices=[i.value for i in iq.InequalityId])
    chk.add_argument("--bodies", nargs="+", required=True)
    chk.add_argument("--r", type=int, default=None)
    chk.add_argument("--p", type=float, default=None)
    chk.add_argument("--i", type=int, default=None)
    chk.add_argument("--m", type=int, default=None)
    chk.add_argument("--phi", default=None)
    chk.add_argument("--tol", type=float, default=None,
                     help="relative tolerance base (default 1e-9 exact / 5e-3 approximate; "
                          "MVLAB_TOL overrides the exact default)")
    chk.set_defaults(fn=cmd_check)

    fz = sub.add_parser("fuzz", help="seeded random trials, CSV report, min-slack summary")
    fz.add_argument("--ids", nargs="+", required=True,
                    help="inequality ids (space or comma separated)")
    fz.add_argument("--dim", type=int, default=2, choices=[2, 3])
    fz.add_argument("--trials", type=int, default=100)
    fz.add_argument("--seed", type=int, default=0)
    fz.add_argument("--out", required=True, help="CSV output path")
    fz.add_argument("--json-out", default=None, help="also write the JSON variant with bodies")
    fz.add_argument("--plot", default=None, help="directory for per-id slack histograms (SVG)")
    fz.add_argument("--symmetric", action="store_true",
                    help="generate origin-symmetric bodies")
    fz.add_argument("--n-points", type=int, default=8)
    fz.add_argument("--m", type=int, default=None, help="ball resolution for approximate paths")
    fz.add_argument("--phi-pool", nargs="+", default=None)
    fz.set_defaults(fn=cmd_fuzz)

    tr = sub.add_parser("trace", help="q -> infinity limit trace of the log inequality proof")
    tr.add_argument("--bodies", nargs="+", required=True,
                    help="L_1 .. L_{n-1}, K_n, L_n spec files")
    tr.add_argument("--phi", required=True)
    tr.add_argument("--q", default="1,10,100,1000", help="comma-separated increasing q values")
    tr.set_defaults(fn=cmd_trace)
    return parser

def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except MvlabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

if __name__ == "__main__":
    sys.exit(main())
