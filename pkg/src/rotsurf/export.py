"""Writers for meshes (OBJ), profile tables (CSV) and metadata (JSON)."""

import csv
import json

import numpy as np

FMT = "%.17g"


def _num(x):
    return FMT % float(x)


def write_obj(path, vertices3, faces, comment=None):
    """Plain OBJ: ``v x y z`` lines then 1-based quad ``f`` lines."""
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        if comment:
            for line in comment.splitlines():
                fh.write(f"# {line}\n")
        for v in np.asarray(vertices3, float):
            fh.write("v " + " ".join(_num(c) for c in v) + "\n")
        for f in np.asarray(faces, int) + 1:
            fh.write("f " + " ".join(str(i) for i in f) + "\n")


def read_obj(path):
    verts, faces = [], []
    with open(path, encoding="ascii") as fh:
        for line in fh:
            parts = line.split()
            if not parts or parts[0].startswith("#"):
                continue
            if parts[0] == "v":
                verts.append([float(x) for x in parts[1:4]])
            elif parts[0] == "f":
                faces.append([int(x.split("/")[0]) - 1 for x in parts[1:]])
    return np.array(verts), np.array(faces, dtype=int)


PROFILE_COLUMNS = ("t", "r", "psi", "d")


def write_profile_csv(path, sol, t):
    t = np.asarray(t, float)
    rows = np.column_stack([t, sol.r(t), sol.psi(t), sol.d(t)])
    with open(path, "w", encoding="ascii", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(PROFILE_COLUMNS)
        for row in rows:
            w.writerow([_num(x) for x in row])


def read_profile_csv(path):
    with open(path, encoding="ascii", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if tuple(h.strip() for h in header) != PROFILE_COLUMNS:
            raise ValueError(f"unexpected profile header {header}")
        return np.array([[float(x) for x in row] for row in reader if row], dtype=float)


def write_json(path, payload):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def profile_metadata(sol):
    spec = sol.spec
    return {
        "space": spec.space_form.name,
        "frame": spec.space_form.frame.value,
        "rotation": spec.rotation.value,
        "class": spec.surface_class.value,
        "curvature": spec.value,
        "C": spec.C,
        "regime": sol.regime.tag.value,
        "radial": sol.shape,
        "roots": [float(x) for x in sol.roots],
        "modulus": float(sol.modulus),
        "scale": float(sol.scale),
        "third_kind_parameter": None if sol.k is None else float(sol.k),
        "domain": [float(x) for x in sol.domain],
    }
