"""Command line interface.

    rotsurf generate --space s3 --cmc 2 --C -0.05 --out out/
    rotsurf verify   --space h3 --rotation hyperbolic --chc 2 --C 0.5
    rotsurf torus    --H 2 --n 5:6 --out tori/

Exit codes: 0 ok, 1 verification failed, 2 invalid or infeasible surface,
3 file I/O error, 4 no closing constant found.
"""

import argparse
import json
import os
import sys

from . import export
from .closure import solve_torus, torus_t_range
from .errors import ClosureNotFound, DomainError, InfeasibleSpecError, RangeError
from .profile import SurfaceSpec, solve_profile
from .surface import sample_mesh
from .verify import TOLERANCES, verify_all, verify_table

EXIT_OK, EXIT_FAIL, EXIT_SPEC, EXIT_IO, EXIT_NO_ROOT = 0, 1, 2, 3, 4

DEFAULTS = {
    "space": "s3",
    "rotation": "elliptic",
    "ntheta": 48,
    "nt": 96,
    "project": None,
    "n": "5:6",
}


def _range(text):
    try:
        a, b = (float(x) for x in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a:b, got {text!r}")
    return (a, b)


def _tol(text):
    name, _, value = text.partition("=")
    if name not in TOLERANCES or not value:
        raise argparse.ArgumentTypeError(f"expected NAME=VALUE with NAME in {sorted(TOLERANCES)}")
    return name, float(value)


def _surface_args(p):
    p.add_argument("--config", help="JSON file with default values for any option")
    p.add_argument("--space", choices=["s3", "h3"])
    p.add_argument("--rotation", choices=["elliptic", "hyperbolic", "parabolic"])
    cls = p.add_mutually_exclusive_group()
    cls.add_argument("--cmc", type=float, metavar="H", help="constant mean curvature H >= 0")
    cls.add_argument("--chc", type=float, metavar="HBAR", help="constant ratio K/H = HBAR, |HBAR| >= 1")
    p.add_argument("--C", type=float, help="integration constant")
    p.add_argument("--ntheta", type=int)
    p.add_argument("--nt", type=int)
    p.add_argument("--trange", type=_range, help="t-range a:b (use --trange=-1:1 for negative a)")
    p.add_argument("--out", help="output directory")
    p.add_argument("--project", choices=["stereo", "poincare", "none"])


def build_parser():
    parser = argparse.ArgumentParser(prog="rotsurf", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="write mesh, profile table and metadata")
    _surface_args(gen)

    ver = sub.add_parser("verify", help="check ODE, membership and curvature residuals")
    _surface_args(ver)
    ver.add_argument("--tol", type=_tol, action="append", default=[], help="override a tolerance, NAME=VALUE")
    ver.add_argument("--profile", help="profile CSV (t,r,psi,d) to check against the closed form")
    ver.add_argument("--perturb", type=float, default=0.0, help="shift r by this amount before checking")

    tor = sub.add_parser("torus", help="find C closing a Delaunay profile in S^3")
    tor.add_argument("--config")
    tor.add_argument("--H", type=float, required=False)
    tor.add_argument("--n", help="lobe count or range a:b")
    tor.add_argument("--ntheta", type=int)
    tor.add_argument("--nt", type=int)
    tor.add_argument("--out")
    return parser


def _merge_config(args):
    values = dict(DEFAULTS)
    if getattr(args, "config", None):
        with open(args.config, encoding="utf-8") as fh:
            cfg = json.load(fh)
        if not isinstance(cfg, dict):
            raise ValueError("config must be a JSON object")
        values.update(cfg)
    for key, value in vars(args).items():
        if value is not None and key != "config":
            values[key] = value
    if isinstance(values.get("trange"), (list, tuple)):
        values["trange"] = tuple(float(x) for x in values["trange"])
    elif isinstance(values.get("trange"), str):
        values["trange"] = _range(values["trange"])
    return values


def _spec(values):
    C = values.get("C")
    if C is None:
        raise ValueError("--C is required")
    if values.get("cmc") is not None:
        return SurfaceSpec.cmc(values["cmc"], C, values["space"], values["rotation"])
    if values.get("chc") is not None:
        if values["space"] != "h3":
            raise ValueError("chc surfaces need --space h3")
        return SurfaceSpec.chc(values["chc"], C, values["rotation"])
    raise ValueError("one of --cmc or --chc is required")


def cmd_generate(values):
    sol = solve_profile(_spec(values))
    mesh = sample_mesh(sol, int(values["ntheta"]), int(values["nt"]), t_range=values.get("trange"))
    out = values.get("out") or "."
    os.makedirs(out, exist_ok=True)
    meta = export.profile_metadata(sol)
    meta["mesh"] = {
        "ntheta": int(values["ntheta"]),
        "nt": int(mesh.t.size),
        "theta_range": [float(mesh.theta[0]), float(mesh.theta[-1])],
        "t_range": [float(mesh.t[0]), float(mesh.t[-1])],
        "projection": values["project"] or ("stereo" if sol.spec.kappa == 1 else "poincare"),
        "clipped": mesh.clipped,
    }
    export.write_obj(os.path.join(out, "surface.obj"), mesh.projected(values["project"]), mesh.faces)
    export.write_profile_csv(os.path.join(out, "profile.csv"), sol, mesh.t)
    export.write_json(os.path.join(out, "surface.json"), meta)
    print(f"regime {meta['regime']}: wrote {mesh.vertices.shape[0]} vertices, {len(mesh.faces)} faces to {out}")
    if mesh.clipped:
        print(f"t-range clipped to [{mesh.t[0]!r}, {mesh.t[-1]!r}] to stay off the rotation axis")
    return EXIT_OK


def cmd_verify(values):
    sol = solve_profile(_spec(values))
    if values.get("perturb"):
        sol = sol.perturbed(values["perturb"])
    tol = dict(values.get("tol") or [])
    report = verify_all(sol, tol=tol)
    if values.get("profile"):
        for check in verify_table(sol, export.read_profile_csv(values["profile"]), tol=tol):
            report.add(check)
    text = report.text()
    sys.stdout.write(text)
    out = values.get("out")
    if not out:
        return EXIT_OK if report.passed else EXIT_FAIL
    os.makedirs(out, exist_ok=True)
    with open(os.path.join(out, "report.txt"), "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    export.write_json(os.path.join(out, "report.json"), report.to_dict())
    return EXIT_OK if report.passed else EXIT_FAIL


def _lobes(text):
    text = str(text)
    if ":" in text:
        a, b = (int(x) for x in text.split(":"))
        return list(range(a, b + 1))
    return [int(text)]


def cmd_torus(values):
    H = values.get("H")
    if H is None:
        raise ValueError("--H is required")
    found = 0
    rows = ["n,C,embedded,defect"]
    meshes = []
    for n in _lobes(values["n"]):
        try:
            sols = solve_torus(float(H), n)
        except ClosureNotFound:
            rows.append(f"{n},none,,")
            continue
        for s in sols:
            found += 1
            rows.append(f"{n},{export._num(s.C)},{str(s.embedded).lower()},{export._num(s.defect)}")
            meshes.append(s)
    print("\n".join(rows))
    if not found:
        return EXIT_NO_ROOT
    if values.get("out"):
        out = values["out"]
        os.makedirs(out, exist_ok=True)
        for i, s in enumerate(meshes):
            mesh = sample_mesh(s.profile, int(values["ntheta"]), int(values["nt"]), t_range=torus_t_range(s.profile, s.n))
            name = f"torus_H{export._num(s.H)}_n{s.n}_{i}.obj"
            export.write_obj(os.path.join(out, name), mesh.projected(), mesh.faces)
        with open(os.path.join(out, "tori.csv"), "w", encoding="ascii", newline="\n") as fh:
            fh.write("\n".join(rows) + "\n")
    return EXIT_OK


COMMANDS = {"generate": cmd_generate, "verify": cmd_verify, "torus": cmd_torus}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        values = _merge_config(args)
        return COMMANDS[args.command](values)
    except InfeasibleSpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SPEC
    except (ValueError, DomainError, RangeError) as exc:
        if isinstance(exc, json.JSONDecodeError):
            print(f"error: cannot parse config: {exc}", file=sys.stderr)
            return EXIT_IO
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SPEC
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
