"""Immersions built from a profile, their normals, and sampled meshes."""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .profile import ProfileSolution, SurfaceClass
from .spaceform import (
    Rotation,
    inner,
    metric_cross,
    numerical_curvatures,
    parallel_surface,
    project,
    time_component,
)


def _polar_parts(sol, theta, t):
    """Point and its theta-, r- and psi-derivatives for the rotational display."""
    spec = sol.spec
    theta, t = np.broadcast_arrays(np.asarray(theta, float), np.asarray(t, float))
    r = sol.r(t)
    psi = sol.psi(t)
    g = sol.regime
    zero = np.zeros_like(r)
    one = np.ones_like(r)
    chc = spec.surface_class == SurfaceClass.CHC

    if spec.parabolic:
        sgn = g.kp * g.delta  # +1 cmc, -1 chc
        q = psi * psi + theta * theta
        x = np.stack([(sgn + r * r * q) / (2 * r), r * theta, r, r * psi], -1)
        x_th = np.stack([r * theta, r, zero, zero], -1)
        x_r = np.stack([-sgn / (2 * r * r) + 0.5 * q, theta, one, psi], -1)
        x_psi = np.stack([r * psi, zero, zero, r], -1)
        return x, x_th, x_r, x_psi

    d2 = sol.d_squared(t)
    if np.any(d2 < -1e-12) and not (chc and spec.rotation == Rotation.ELLIPTIC):
        raise DomainError("negative radicand in the polar radius")
    w = np.sqrt(np.abs(d2))
    with np.errstate(divide="ignore", invalid="ignore"):
        dw = -g.k1 * r / (g.k2 * w)  # d w / d r, sign-corrected below for d2 < 0
    dw = np.where(d2 < 0, -dw, dw)
    c, s = np.cos, np.sin

    if spec.kappa == 1:
        x = np.stack([r * c(theta), r * s(theta), w * c(psi), w * s(psi)], -1)
        x_th = np.stack([-r * s(theta), r * c(theta), zero, zero], -1)
        x_r = np.stack([c(theta), s(theta), dw * c(psi), dw * s(psi)], -1)
        x_psi = np.stack([zero, zero, -w * s(psi), w * c(psi)], -1)
        return x, x_th, x_r, x_psi

    if spec.rotation == Rotation.ELLIPTIC:
        ch, sh = np.cosh(psi), np.sinh(psi)
        # timelike polar coordinates when d2 > 0, spacelike ones when d2 < 0
        A = np.where(d2 >= 0, ch, sh)
        B = np.where(d2 >= 0, sh, ch)
        x = np.stack([w * A, w * B, r * c(theta), r * s(theta)], -1)
        x_th = np.stack([zero, zero, -r * s(theta), r * c(theta)], -1)
        x_r = np.stack([dw * A, dw * B, c(theta), s(theta)], -1)
        x_psi = np.stack([w * B, w * A, zero, zero], -1)
        return x, x_th, x_r, x_psi

    ch, sh = np.cosh(theta), np.sinh(theta)
    x = np.stack([r * ch, r * sh, w * c(psi), w * s(psi)], -1)
    x_th = np.stack([r * sh, r * ch, zero, zero], -1)
    x_r = np.stack([ch, sh, dw * c(psi), dw * s(psi)], -1)
    x_psi = np.stack([zero, zero, -w * s(psi), w * c(psi)], -1)
    return x, x_th, x_r, x_psi


def display(sol, theta, t):
    """Point, d/dtheta and d/dt of the rotational display at (theta, t)."""
    x, x_th, x_r, x_psi = _polar_parts(sol, theta, t)
    t = np.broadcast_to(np.asarray(t, float), x.shape[:-1])
    x_t = x_r * sol.dr(t)[..., None] + x_psi * sol.dpsi(t)[..., None]
    return x, x_th, x_t


def immerse(sol, theta, t):
    """Point of the cmc surface (or the Gauss map of a chc surface)."""
    return _polar_parts(sol, theta, t)[0]


def _unit(v, frame):
    nn = inner(v, v, frame)
    return v / np.sqrt(np.abs(nn))[..., None]


def chc_immerse(sol, theta, t):
    """(n, f) for a chc profile: n is the displayed Gauss map in de Sitter
    space, f the surface point on the upper sheet of H^3."""
    frame = sol.spec.space_form.frame
    n, n_th, n_t = display(sol, theta, t)
    f = _unit(metric_cross(n, n_t, n_th, frame), frame)
    flip = np.where(time_component(f, frame) < 0, -1.0, 1.0)
    return n, f * flip[..., None]


@dataclass(frozen=True)
class Surface:
    """Evaluator for the surface point and a unit normal.

    For cmc the normal comes from the analytic tangents; ``orientation``
    multiplies it (fixed once, +1 by default).  For chc the normal is the
    displayed Gauss map.
    """

    profile: ProfileSolution
    orientation: float = 1.0

    @property
    def space(self):
        return self.profile.spec.space_form

    @property
    def is_chc(self):
        return self.profile.spec.surface_class == SurfaceClass.CHC

    def __call__(self, theta, t):
        if self.is_chc:
            return chc_immerse(self.profile, theta, t)[1]
        return immerse(self.profile, theta, t)

    def normal(self, theta, t):
        if self.is_chc:
            return self.orientation * chc_immerse(self.profile, theta, t)[0]
        x, x_th, x_t = display(self.profile, theta, t)
        frame = self.space.frame
        return self.orientation * _unit(metric_cross(x, x_th, x_t, frame), frame)

    def parallel(self, offset):
        """Evaluator of the parallel surface at geodesic distance ``offset``."""

        def evaluate(theta, t):
            return parallel_surface(self(theta, t), self.normal(theta, t), offset, self.space)

        return evaluate

    def parallel_normal(self, offset):
        """Unit normal of the parallel surface carried along the normal geodesic."""

        def evaluate(theta, t):
            f, n = self(theta, t), self.normal(theta, t)
            if self.space.kappa == 1:
                return -np.sin(offset) * f + np.cos(offset) * n
            return np.sinh(offset) * f + np.cosh(offset) * n

        return evaluate

    def curvatures(self, theta, t, h=1e-4, orientation=1.0, strict=True):
        """Finite-difference curvatures; chc surfaces are measured against their
        Gauss map, cmc ones against the cross-product normal."""
        normal = self.normal if self.is_chc else None
        return numerical_curvatures(
            self, theta, t, self.space, h=h, orientation=orientation, normal=normal, strict=strict
        )


def default_theta_range(rotation):
    if Rotation(rotation) == Rotation.HYPERBOLIC:
        return (-1.0, 1.0)
    return (0.0, 2.0 * np.pi)


@dataclass
class SurfaceMesh:
    """Structured (nt x ntheta) grid of surface points plus quad faces.

    Vertices are stored row-major in (t, theta); faces are 0-based quads
    (i, i+1, i+ntheta+1, i+ntheta), all with the same winding.
    """

    points: np.ndarray  # (nt, ntheta, 4)
    theta: np.ndarray
    t: np.ndarray
    space: object
    clipped: bool = False

    @property
    def faces(self):
        nt, nth = self.points.shape[:2]
        i, j = np.meshgrid(np.arange(nt - 1), np.arange(nth - 1), indexing="ij")
        a = (i * nth + j).ravel()
        return np.stack([a, a + 1, a + nth + 1, a + nth], -1)

    @property
    def vertices(self):
        return self.points.reshape(-1, 4)

    def projected(self, method=None):
        return project(self.vertices, self.space, method)


def sample_mesh(sol, ntheta, nt, theta_range=None, t_range=None):
    """Sample the surface of ``sol`` on an evenly spaced (t, theta) grid."""
    if ntheta < 2 or nt < 2:
        raise ValueError("need at least a 2x2 grid")
    spec = sol.spec
    theta_range = theta_range or default_theta_range(spec.rotation)
    t_range = t_range or sol.domain
    a, b = t_range
    lo, hi = sol.valid_range
    if a < lo - 1e-12 or b > hi + 1e-12 or a >= b:
        raise DomainError(f"t-range {t_range} outside the profile domain {sol.valid_range}")
    theta = np.linspace(*theta_range, ntheta)
    t = np.linspace(a, b, nt)
    clipped = False
    if spec.rotation == Rotation.HYPERBOLIC and spec.surface_class == SurfaceClass.CMC:
        ok = sol.r(t) > 1.0 + 1e-9
        if not np.all(ok):
            # keep the longest run of admissible samples
            runs, best, start = [], None, None
            for idx, flag in enumerate(list(ok) + [False]):
                if flag and start is None:
                    start = idx
                elif not flag and start is not None:
                    runs.append((start, idx))
                    start = None
            if not runs:
                raise DomainError("no sample lies off the rotation axis")
            best = max(runs, key=lambda ab: ab[1] - ab[0])
            t = t[best[0] : best[1]]
            clipped = True
            if t.size < 2:
                raise DomainError("clipped t-range is too short")
    surf = Surface(sol)
    tt, th = np.meshgrid(t, theta, indexing="ij")
    pts = surf(th, tt)
    return SurfaceMesh(pts, theta, t, spec.space_form, clipped)
