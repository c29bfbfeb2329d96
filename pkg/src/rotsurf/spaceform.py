"""Ambient geometry: quadric models of S^3 and H^3, isometries, projections and
finite-difference curvature estimation.

Points are plain arrays with a trailing axis of length 4.  Which bilinear form
applies is carried by a :class:`Frame` passed alongside:

* ``EUCLIDEAN``  R^4 with the standard dot product (S^3 = unit sphere),
* ``MINKOWSKI``  orthonormal basis (e0, e1, e2, e3) of R^{3,1}, e0 timelike,
* ``NULL``       pseudo-orthonormal basis (v, e1, o, e2) with v, o null and
                 (v, o) = -1, used for parabolic rotations.
"""

from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

import numpy as np

from .errors import DegenerateMetricError, DomainError

SQRT_HALF = np.sqrt(0.5)


class Frame(str, Enum):
    EUCLIDEAN = "euclidean"
    MINKOWSKI = "minkowski"
    NULL = "null"


GRAM = {
    Frame.EUCLIDEAN: np.eye(4),
    Frame.MINKOWSKI: np.diag([-1.0, 1.0, 1.0, 1.0]),
    Frame.NULL: np.array(
        [[0.0, 0.0, -1.0, 0.0], [0.0, 1.0, 0.0, 0.0], [-1.0, 0.0, 0.0, 0.0], [0.0, 0.0, 0.0, 1.0]]
    ),
}


class Rotation(str, Enum):
    ELLIPTIC = "elliptic"
    HYPERBOLIC = "hyperbolic"
    PARABOLIC = "parabolic"


@dataclass(frozen=True)
class SpaceForm:
    """S^3 (kappa = 1) or H^3 (kappa = -1) as a quadric (x, x) = kappa."""

    kappa: int
    frame: Frame

    def __post_init__(self):
        if self.kappa not in (1, -1):
            raise ValueError("kappa must be +1 or -1")
        if (self.kappa == 1) != (self.frame == Frame.EUCLIDEAN):
            raise ValueError(f"frame {self.frame.value} does not fit kappa = {self.kappa}")

    @classmethod
    def sphere(cls):
        return cls(1, Frame.EUCLIDEAN)

    @classmethod
    def hyperbolic(cls, null_frame=False):
        return cls(-1, Frame.NULL if null_frame else Frame.MINKOWSKI)

    @property
    def gram(self):
        return GRAM[self.frame]

    @property
    def name(self):
        return "s3" if self.kappa == 1 else "h3"


def inner(x, y, frame):
    """Bilinear form of ``frame`` applied along the last axis."""
    g = GRAM[Frame(frame)]
    return np.einsum("...i,ij,...j->...", np.asarray(x, float), g, np.asarray(y, float))


def null_to_minkowski(x):
    """(v, e1, o, e2) coordinates -> orthonormal (e0, e1, e2, e3) coordinates."""
    x = np.asarray(x, float)
    a, b, c, d = np.moveaxis(x, -1, 0)
    return np.stack([SQRT_HALF * (a + c), b, d, SQRT_HALF * (a - c)], axis=-1)


def minkowski_to_null(y):
    y = np.asarray(y, float)
    e0, e1, e2, e3 = np.moveaxis(y, -1, 0)
    return np.stack([SQRT_HALF * (e0 + e3), e1, SQRT_HALF * (e0 - e3), e2], axis=-1)


def time_component(x, frame):
    """Coefficient of e0 (the coordinate whose sign picks the H^3 sheet)."""
    x = np.asarray(x, float)
    if Frame(frame) == Frame.NULL:
        return SQRT_HALF * (x[..., 0] + x[..., 2])
    return x[..., 0]


def rotate(kind, theta, x, space):
    """Apply the one-parameter rotation group of type ``kind`` at angle theta.

    elliptic  : S^3 rotates the (x0, x1) plane, H^3 the (e2, e3) plane
    hyperbolic: boost in the (e0, e1) plane
    parabolic : v -> v, e1 -> e1 + theta v, o -> o + theta e1 + theta^2/2 v
    """
    kind = Rotation(kind)
    x = np.asarray(x, float)
    theta = np.asarray(theta, float)[..., None]
    x = np.broadcast_to(x, np.broadcast_shapes(x.shape, theta.shape))
    out = x.copy()
    if kind == Rotation.PARABOLIC:
        if space.frame != Frame.NULL:
            raise ValueError("parabolic rotations act in the null frame")
        th = theta[..., 0]
        a, b, c = x[..., 0], x[..., 1], x[..., 2]
        out[..., 0] = a + th * b + 0.5 * th * th * c
        out[..., 1] = b + th * c
        return out
    if kind == Rotation.HYPERBOLIC:
        if space.kappa != -1 or space.frame != Frame.MINKOWSKI:
            raise ValueError("hyperbolic rotations need H^3 in an orthonormal frame")
        i, j = 0, 1
        ch, sh = np.cosh(theta), np.sinh(theta)
        xi, xj = x[..., i : i + 1], x[..., j : j + 1]
        out[..., i : i + 1] = ch * xi + sh * xj
        out[..., j : j + 1] = sh * xi + ch * xj
        return out
    if space.frame == Frame.NULL:
        raise ValueError("elliptic rotations act in an orthonormal frame")
    i, j = (0, 1) if space.kappa == 1 else (2, 3)
    c_, s_ = np.cos(theta), np.sin(theta)
    xi, xj = x[..., i : i + 1], x[..., j : j + 1]
    out[..., i : i + 1] = c_ * xi - s_ * xj
    out[..., j : j + 1] = s_ * xi + c_ * xj
    return out


def project(x, space, method=None):
    """Map points of the quadric to R^3.

    S^3: stereographic projection from (0, 0, 0, -1).
    H^3: Poincare ball (the null frame is converted first).
    ``method="none"`` keeps the first three orthonormal coordinates.
    """
    x = np.asarray(x, float)
    if space.frame == Frame.NULL:
        x = null_to_minkowski(x)
    method = method or ("stereo" if space.kappa == 1 else "poincare")
    if method == "none":
        return x[..., :3].copy()
    if method == "stereo":
        if space.kappa != 1:
            raise ValueError("stereographic projection is for S^3")
        den = 1.0 + x[..., 3]
        if np.any(np.abs(den) < 1e-12):
            raise DomainError("point at the projection pole")
        return x[..., :3] / den[..., None]
    if method == "poincare":
        if space.kappa != -1:
            raise ValueError("Poincare ball projection is for H^3")
        return x[..., 1:] / (1.0 + x[..., 0])[..., None]
    raise ValueError(f"unknown projection {method!r}")


def metric_cross(a, b, c, frame):
    """Vector w with (w, x) = det[x; a; b; c] for the form of ``frame``.

    It is orthogonal to a, b, c.  For the Minkowski frame this is the usual
    Lorentzian cross product (first row (-e0, e1, e2, e3)).
    """
    a, b, c = np.broadcast_arrays(*(np.asarray(v, float) for v in (a, b, c)))
    rows = np.stack([a, b, c], axis=-2)  # (..., 3, 4)
    cof = np.empty(a.shape)
    for i in range(4):
        minor = np.delete(rows, i, axis=-1)
        cof[..., i] = (-1) ** i * np.linalg.det(minor)
    return cof @ np.linalg.inv(GRAM[Frame(frame)]).T


def minkowski_cross(a, b, c):
    return metric_cross(a, b, c, Frame.MINKOWSKI)


def parallel_surface(f, n, t, space, tol=1e-8):
    """Geodesic offset of the point f along its unit normal n by distance t."""
    f = np.asarray(f, float)
    n = np.asarray(n, float)
    g = space.frame
    if np.any(np.abs(inner(f, f, g) - space.kappa) > tol) or np.any(np.abs(inner(n, n, g) - 1) > tol):
        raise ValueError("parallel_surface needs a point on the quadric and a unit normal")
    if np.any(np.abs(inner(f, n, g)) > tol):
        raise ValueError("normal is not orthogonal to the point")
    if space.kappa == 1:
        return np.cos(t) * f + np.sin(t) * n
    return np.cosh(t) * f + np.sinh(t) * n


class Curvatures(NamedTuple):
    k1: np.ndarray
    k2: np.ndarray
    H: np.ndarray
    K: np.ndarray


# fourth-order central stencils on offsets -2..2
_D1 = np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / 12.0
_D2 = np.array([-1.0, 16.0, -30.0, 16.0, -1.0]) / 12.0


def numerical_curvatures(f, u, v, space, h=1e-4, orientation=1.0, normal=None, strict=True, scaled=True):
    """Principal, mean and extrinsic Gauss curvature of a parametrized surface.

    ``f(u, v)`` must accept broadcast arrays and return points with a trailing
    axis of 4.  Derivatives come from fourth-order central differences on a
    5x5 stencil, so the truncation error is O(h^4) and the default step sits
    where it balances roundoff.

    With ``scaled=True`` a parameter whose coordinate speed is below 1 gets
    its step stretched to h / speed (capped at 10 h), so the stencil still
    moves the point by about h.  Without it, slow directions (small rotation
    radius) lose digits: the roundoff in f_uu grows like 1/h^2 and is then
    divided by |f_u|^2.

    The second fundamental form is taken against ``normal(u, v)`` if given
    (needed for fronts, whose cross-product normal flips across singular
    curves); otherwise against the normalized ``metric_cross(f, f_u, f_v)``.
    Either way it is multiplied by ``orientation``.  With ``strict=False``
    samples with a singular first fundamental form come back as NaN instead
    of raising.
    """
    u = np.asarray(u, float)
    v = np.asarray(v, float)
    u, v = np.broadcast_arrays(u, v)
    hu = np.full(u.shape, float(h))
    hv = np.full(u.shape, float(h))
    if scaled:
        pilot = np.asarray(f(u[..., None] + h * np.array([-1.0, 1.0, 0, 0]), v[..., None] + h * np.array([0, 0, -1.0, 1.0])))
        su = np.linalg.norm(pilot[..., 1, :] - pilot[..., 0, :], axis=-1) / (2 * h)
        sv = np.linalg.norm(pilot[..., 3, :] - pilot[..., 2, :], axis=-1) / (2 * h)
        # stretch slow directions only, by at most 10x; fast ones keep h
        with np.errstate(divide="ignore", invalid="ignore"):
            hu = h * np.clip(np.nan_to_num(1.0 / su, nan=1.0, posinf=1.0), 1.0, 10.0)
            hv = h * np.clip(np.nan_to_num(1.0 / sv, nan=1.0, posinf=1.0), 1.0, 10.0)
    offs = np.arange(-2, 3)
    uu = u[..., None, None] + (hu[..., None] * offs)[..., :, None]
    vv = v[..., None, None] + (hv[..., None] * offs)[..., None, :]
    pts = np.asarray(f(uu, vv), float)  # (..., 5, 5, 4)
    x = pts[..., 2, 2, :]
    hu_, hv_ = hu[..., None], hv[..., None]
    fu = np.einsum("i,...ik->...k", _D1, pts[..., :, 2, :]) / hu_
    fv = np.einsum("j,...jk->...k", _D1, pts[..., 2, :, :]) / hv_
    fuu = np.einsum("i,...ik->...k", _D2, pts[..., :, 2, :]) / hu_**2
    fvv = np.einsum("j,...jk->...k", _D2, pts[..., 2, :, :]) / hv_**2
    fuv = np.einsum("i,j,...ijk->...k", _D1, _D1, pts) / (hu_ * hv_)

    frame = space.frame
    E = inner(fu, fu, frame)
    F = inner(fu, fv, frame)
    G = inner(fv, fv, frame)
    det = E * G - F * F
    bad = np.abs(det) < 1e-10
    if np.any(bad):
        if strict:
            raise DegenerateMetricError("first fundamental form is singular")
        det = np.where(bad, np.nan, det)
    if normal is None:
        n = metric_cross(x, fu, fv, frame)
        with np.errstate(divide="ignore", invalid="ignore"):
            n = n / np.sqrt(np.abs(inner(n, n, frame)))[..., None]
    else:
        n = np.asarray(normal(u, v), float)
    n = orientation * n
    L = inner(fuu, n, frame)
    M = inner(fuv, n, frame)
    N = inner(fvv, n, frame)
    H = (E * N - 2 * F * M + G * L) / (2 * det)
    K = (L * N - M * M) / det
    root = np.sqrt(np.clip(H * H - K, 0.0, None))
    return Curvatures(H - root, H + root, H, K)
