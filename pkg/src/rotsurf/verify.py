"""Numerical checks of a generated surface against its defining equations.

Each check returns a :class:`Check` with the worst residual seen, the
tolerance it was judged against and how many samples were used or skipped.
A :class:`Report` collects checks and serializes them as plain text lines or
JSON.
"""

import json
from dataclasses import asdict, dataclass, field

import numpy as np

from .profile import SurfaceClass, ode_scale, polynomial
from .spaceform import Rotation, inner, numerical_curvatures
from .surface import Surface, default_theta_range, sample_mesh

TOLERANCES = {
    "algebraic": 1e-10,
    "ode": 1e-8,
    "curvature": 1e-5,
    "chc": 1e-4,
    "parallel": 1e-4,
    "table": 1e-10,
}


@dataclass
class Check:
    name: str
    max_residual: float
    tolerance: float
    samples: int
    skipped: int = 0
    detail: dict = field(default_factory=dict)

    @property
    def passed(self):
        return bool(np.isfinite(self.max_residual) and self.max_residual < self.tolerance)

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        text = f"{status} {self.name} max={self.max_residual:.3e} tol={self.tolerance:.1e} n={self.samples}"
        if self.skipped:
            text += f" skipped={self.skipped}"
        return text


@dataclass
class Report:
    checks: list = field(default_factory=list)

    def add(self, check):
        self.checks.append(check)
        return check

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def text(self):
        lines = [c.line() for c in self.checks]
        lines.append(("PASS" if self.passed else "FAIL") + " overall")
        return "\n".join(lines) + "\n"

    def to_dict(self):
        checks = []
        for c in self.checks:
            d = asdict(c)
            d["passed"] = c.passed
            checks.append(d)
        return {"passed": self.passed, "checks": checks}

    def json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, default=float)


def _worst(x):
    x = np.asarray(x, float)
    finite = x[np.isfinite(x)]
    if finite.size == 0:
        return np.inf, x.size
    return float(np.max(np.abs(finite))), int(x.size - finite.size)


def _psi_rhs(sol, r2):
    g = sol.regime
    C = sol.spec.C
    if sol.spec.parabolic:
        return np.sqrt(-1.0 / g.delta) * (g.eps * r2 + g.kp * C) / r2
    return np.sqrt(g.k1 * g.k2 / g.delta) * (g.eps * r2 + g.kp * C) / (g.kp * g.delta + g.k1 * r2)


def verify_ode(sol, t=None, h=1e-6, tol=None):
    """Residuals of the profile ODE system on the samples ``t``.

    r' is the analytic derivative, psi' a central difference of the
    implemented psi; the last check is the algebraic relation between the
    polar radius and r.
    """
    tol = {**TOLERANCES, **(tol or {})}
    if t is None:
        t = sol.sample(400, 0.8)
    t = np.asarray(t, float)
    r = sol.r(t)
    x = r * r
    a2, a1, a0 = polynomial(sol.spec)
    res_r = sol.dr(t) ** 2 - (a2 * x * x + a1 * x + a0) / ode_scale(sol.spec)
    dpsi = (sol.psi(t + h) - sol.psi(t - h)) / (2 * h)
    res_psi = dpsi - _psi_rhs(sol, x)
    g = sol.regime
    if sol.spec.parabolic:
        res_d = 2.0 * r * sol.d(t) - g.kp * g.delta
    else:
        res_d = g.k2 * sol.d_squared(t) + g.kp * g.delta + g.k1 * x
    out = []
    for name, res, key in (("ode.r", res_r, "ode"), ("ode.psi", res_psi, "ode"), ("ode.d", res_d, "algebraic")):
        worst, skipped = _worst(res)
        out.append(Check(name, worst, tol[key], t.size, skipped))
    return out


def verify_membership(mesh, tol=None):
    """max |(f, f) - kappa| over mesh vertices."""
    tol = {**TOLERANCES, **(tol or {})}
    pts = mesh.vertices
    res = inner(pts, pts, mesh.space.frame) - mesh.space.kappa
    worst, skipped = _worst(res)
    return Check("membership", worst, tol["algebraic"], len(pts), skipped)


def interior_grid(sol, n=20, shrink=0.8):
    """n x n (theta, t) grid kept away from the ends of the parameter ranges."""
    a, b = default_theta_range(sol.spec.rotation)
    if sol.spec.rotation == Rotation.ELLIPTIC:
        theta = np.linspace(a, b, n, endpoint=False)
    else:
        mid, half = 0.5 * (a + b), 0.5 * (b - a) * shrink
        theta = np.linspace(mid - half, mid + half, n)
    t = sol.sample(n, shrink)
    T, TH = np.meshgrid(t, theta, indexing="ij")
    return TH, T


def base_orientation(surface, theta0, t0, h=1e-4):
    """Orientation (+1/-1) fixed at one base point.

    cmc: H >= 0 there.  chc: K/H has the sign of Hbar there; the Gauss map
    only determines the surface up to the choice of sheet, which decides that
    sign.
    """
    c = surface.curvatures(np.array([theta0]), np.array([t0]), h=h, strict=False)
    H, K = float(c.H[0]), float(c.K[0])
    if not np.isfinite(H) or H == 0.0:
        return 1.0
    if surface.is_chc:
        return 1.0 if np.sign(H) * np.sign(K) == np.sign(surface.profile.spec.value) else -1.0
    return 1.0 if H > 0 else -1.0


def verify_curvature(sol, theta=None, t=None, h=1e-4, tol=None, weingarten=None):
    """Compare finite-difference curvatures with the prescribed ones.

    cmc: |H - H_target|.  chc: |K - Hbar H| / max(1, |H|).  ``weingarten=(a, b, c)``
    additionally checks |a K + 2 b H + c|.  Samples with a singular first
    fundamental form are skipped and counted.
    """
    tol = {**TOLERANCES, **(tol or {})}
    if theta is None or t is None:
        theta, t = interior_grid(sol)
    theta, t = np.broadcast_arrays(np.asarray(theta, float), np.asarray(t, float))
    surf = Surface(sol)
    orient = base_orientation(surf, theta.flat[0], t.flat[0], h)
    c = surf.curvatures(theta, t, h=h, orientation=orient, strict=False)
    spec = sol.spec
    checks = []
    if spec.surface_class == SurfaceClass.CMC:
        worst, skipped = _worst(c.H - spec.value)
        checks.append(Check("curvature.cmc", worst, tol["curvature"], theta.size, skipped))
    else:
        # absolute where |H| <= 1, relative to H where the front's curvatures blow up
        worst, skipped = _worst((c.K - spec.value * c.H) / np.maximum(1.0, np.abs(c.H)))
        checks.append(Check("curvature.chc", worst, tol["chc"], theta.size, skipped))
    if weingarten is not None:
        a, b, cc = weingarten
        worst, skipped = _worst(a * c.K + 2 * b * c.H + cc)
        checks.append(Check("curvature.weingarten", worst, tol["curvature"], theta.size, skipped))
    return checks


@dataclass
class WeingartenFit:
    offset: float
    coefficients: tuple  # (a, b, c), unit norm
    residual: float
    discriminant: float  # b^2 - a c
    bonnet_case: int


def bonnet_case(a, b, c, tol=1e-9):
    """Classify a Weingarten relation aK + 2bH + c = 0 by comparing |(a+c)/2|
    with |b|: 1 if larger, 2 if equal, 3 if smaller."""
    lhs, rhs = abs(0.5 * (a + c)), abs(b)
    if abs(lhs - rhs) <= tol * max(1.0, lhs, rhs):
        return 2
    return 1 if lhs > rhs else 3


def fit_weingarten(H, K):
    """Unit (a, b, c) with a K + 2 b H + c ~ 0 (least squares via SVD)."""
    A = np.column_stack([K, 2 * H, np.ones_like(H)])
    _, _, vt = np.linalg.svd(A)
    coef = vt[-1]
    big = np.argmax(np.abs(coef))
    return coef * np.sign(coef[big])


def focal_factors(sol, theta, t, offset, h=1e-4):
    """Stretch factors of the parallel map along the two principal directions.

    A factor near zero means the offset surface meets the focal set there.
    """
    surf = Surface(sol)
    c = numerical_curvatures(surf, theta, t, surf.space, h=h, normal=surf.normal, strict=False)
    if surf.space.kappa == 1:
        cs, sn = np.cos(offset), np.sin(offset)
    else:
        cs, sn = np.cosh(offset), np.sinh(offset)
    return cs - sn * c.k1, cs - sn * c.k2


def verify_parallel(sol, offsets, n_fit=3, n_test=50, h=1e-4, tol=None, focal_margin=0.05):
    """Check that each parallel surface satisfies a linear Weingarten relation.

    The relation is fitted on ``n_fit`` profile samples and tested on
    ``n_test`` others (theta fixed; the surfaces are rotational).  Samples
    closer than ``focal_margin`` to the focal set are skipped; a sign change
    of a stretch factor (the offset crosses the focal set) is recorded in the
    check's ``detail``.  Curvatures are taken against the normal transported
    along the normal geodesics, which stays smooth through focal points.
    """
    tol = {**TOLERANCES, **(tol or {})}
    surf = Surface(sol)
    t_all = sol.sample(n_fit + n_test, 0.8)
    idx_fit = np.linspace(0, t_all.size - 1, n_fit).round().astype(int)
    is_fit = np.zeros(t_all.size, bool)
    is_fit[idx_fit] = True
    theta0 = 0.3 if sol.spec.rotation != Rotation.ELLIPTIC else 0.7
    theta = np.full(t_all.size, theta0)
    fits, checks = [], []
    for s in offsets:
        f1, f2 = focal_factors(sol, theta, t_all, s, h)
        near = (np.abs(f1) < focal_margin) | (np.abs(f2) < focal_margin)
        crossing = bool(np.any(np.diff(np.sign(f1)) != 0) or np.any(np.diff(np.sign(f2)) != 0))
        c = numerical_curvatures(
            surf.parallel(s), theta, t_all, surf.space, h=h, normal=surf.parallel_normal(s), strict=False
        )
        fit_idx = np.flatnonzero(is_fit & ~near)
        test = ~is_fit & ~near
        if fit_idx.size < n_fit:
            # move fit samples off the focal set
            fit_idx = np.flatnonzero(~near)[np.linspace(0, (~near).sum() - 1, n_fit).round().astype(int)]
            test = ~near
            test[fit_idx] = False
        abc = fit_weingarten(c.H[fit_idx], c.K[fit_idx])
        a, b, cc = abc
        res = a * c.K[test] + 2 * b * c.H[test] + cc
        worst, skipped = _worst(res)
        fits.append(WeingartenFit(float(s), tuple(map(float, abc)), worst, float(b * b - a * cc), bonnet_case(a, b, cc)))
        detail = {"focal_crossing": crossing, "near_focal": int(near.sum())}
        checks.append(Check(f"parallel[{s:+g}]", worst, tol["parallel"], int(test.sum()), skipped + int(near.sum()), detail))
    return checks, fits


def verify_table(sol, table, tol=None):
    """Compare tabulated (t, r, psi, d) rows against the closed form."""
    tol = {**TOLERANCES, **(tol or {})}
    table = np.asarray(table, float)
    t, r, psi, d = table.T
    res = np.concatenate([r - sol.r(t), psi - sol.psi(t), d - sol.d(t)])
    worst, skipped = _worst(res)
    g = sol.regime
    # residuals relative to the size of the terms, which grow like r^2 near poles
    if sol.spec.parabolic:
        alg = (2.0 * r * d - g.kp * g.delta) / (1.0 + np.abs(2.0 * r * d))
    else:
        sign = np.sign(sol.d_squared(t))
        alg = (g.k2 * sign * d * d + g.kp * g.delta + g.k1 * r * r) / (1.0 + r * r + d * d)
    worst_alg, skipped_alg = _worst(alg)
    return [
        Check("table.closed_form", worst, tol["table"], t.size, skipped),
        Check("table.algebraic", worst_alg, tol["table"], t.size, skipped_alg),
    ]


def verify_all(sol, tol=None, ntheta=24, nt=48):
    """ODE, membership and curvature checks for one profile."""
    report = Report()
    for c in verify_ode(sol, tol=tol):
        report.add(c)
    mesh = sample_mesh(sol, ntheta, nt, t_range=_inner_range(sol))
    report.add(verify_membership(mesh, tol=tol))
    for c in verify_curvature(sol, tol=tol):
        report.add(c)
    return report


def _inner_range(sol, shrink=0.95):
    a, b = sol.domain
    mid, half = 0.5 * (a + b), 0.5 * (b - a) * shrink
    return (mid - half, mid + half)
