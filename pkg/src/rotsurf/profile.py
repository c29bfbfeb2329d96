"""Closed-form profile curves of rotational cmc and chc surfaces.

A rotational surface is described by a profile (r(t), psi(t)) where r is the
distance-like coordinate to the rotation axis and psi the angle along the
orthogonal plane.  ``r**2`` satisfies a first-order ODE whose right-hand side
is a quadratic polynomial in ``x = r**2`` (the *profile polynomial*); the
integration constant ``C`` selects the member of the family.

Solutions are Jacobi functions of ``Xi * t`` (dn, 1/cn or cn depending on the
regime) with psi given by a third-kind integral, or by elementary functions
when the leading coefficient of the polynomial vanishes.
"""

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Optional

import numpy as np

from . import elliptic as ell
from .errors import InfeasibleSpecError, RangeError
from .spaceform import Rotation, SpaceForm

_GUARD = 1e-3  # margin (in units of Xi * t) kept away from poles and axis crossings
_ZERO = 1e-12


class SurfaceClass(str, Enum):
    CMC = "cmc"
    CHC = "chc"


class RegimeTag(str, Enum):
    DELAUNAY = "delaunay"
    HOROSPHERICAL = "horospherical"
    SUB_HOROSPHERICAL = "sub-horospherical"
    CHC_GENERIC = "chc"
    CHC_HOROSPHERICAL = "chc-horospherical"


ROTATION_CONSTANTS = {
    (1, Rotation.ELLIPTIC): (1, 1),
    (-1, Rotation.ELLIPTIC): (1, -1),
    (-1, Rotation.HYPERBOLIC): (-1, 1),
}


@dataclass(frozen=True)
class SurfaceSpec:
    """Which surface: ambient curvature, rotation type, class, H (or Hbar) and C.

    For cmc ``value`` is the mean curvature H >= 0; for chc it is Hbar with
    |Hbar| >= 1 (the ratio K/H).  chc surfaces live in H^3 only.
    """

    kappa: int
    rotation: Rotation
    surface_class: SurfaceClass
    value: float
    C: float

    def __post_init__(self):
        object.__setattr__(self, "rotation", Rotation(self.rotation))
        object.__setattr__(self, "surface_class", SurfaceClass(self.surface_class))
        if self.kappa not in (1, -1):
            raise ValueError("kappa must be +1 (S^3) or -1 (H^3)")
        if not (np.isfinite(self.value) and np.isfinite(self.C)):
            raise ValueError("H and C must be finite")
        if self.kappa == 1 and self.rotation != Rotation.ELLIPTIC:
            raise ValueError("S^3 only has elliptic rotations")
        if self.surface_class == SurfaceClass.CMC and self.value < 0:
            raise ValueError("orient so that H >= 0")
        if self.surface_class == SurfaceClass.CHC:
            if self.kappa != -1:
                raise ValueError("chc surfaces are handled in H^3 only")
            if abs(self.value) < 1.0:
                raise ValueError("chc needs |Hbar| >= 1; smaller values are parallel to cmc/flat surfaces")

    @classmethod
    def cmc(cls, H, C, space="s3", rotation="elliptic"):
        return cls(1 if space == "s3" else -1, Rotation(rotation), SurfaceClass.CMC, float(H), float(C))

    @classmethod
    def chc(cls, Hbar, C, rotation="elliptic"):
        return cls(-1, Rotation(rotation), SurfaceClass.CHC, float(Hbar), float(C))

    @property
    def parabolic(self):
        return self.rotation == Rotation.PARABOLIC

    @property
    def space_form(self):
        if self.kappa == 1:
            return SpaceForm.sphere()
        return SpaceForm.hyperbolic(null_frame=self.parabolic)

    def with_C(self, C):
        return replace(self, C=float(C))


@dataclass(frozen=True)
class Regime:
    tag: RegimeTag
    kp: float  # constant term sign of the profile polynomial (-1 cmc, +1 chc)
    km: float  # leading coefficient; zero in the horospherical cases
    eps: float
    delta: float
    k1: Optional[int]  # rotation constants (None for parabolic)
    k2: Optional[int]


def classify(spec):
    if spec.surface_class == SurfaceClass.CMC:
        H, kappa = spec.value, spec.kappa
        lead = H * H + kappa
        kp, km, eps, delta = -1.0, -lead, H, float(kappa)
        if abs(lead) <= _ZERO:
            tag, km = RegimeTag.HOROSPHERICAL, 0.0
        elif lead > 0:
            tag = RegimeTag.DELAUNAY
        else:
            tag = RegimeTag.SUB_HOROSPHERICAL
    else:
        hb = spec.value
        kp, km, eps, delta = 1.0, 1.0 / hb**2 - 1.0, -1.0 / hb, -1.0
        if abs(km) <= _ZERO:
            tag, km = RegimeTag.CHC_HOROSPHERICAL, 0.0
        else:
            tag = RegimeTag.CHC_GENERIC
    k1, k2 = ROTATION_CONSTANTS.get((spec.kappa, spec.rotation), (None, None))
    return Regime(tag, kp, km, eps, delta, k1, k2)


def polynomial(spec):
    """Coefficients (a2, a1, a0) of the profile polynomial P with (r')^2 = P(r^2)/scale.

    scale is k1 * delta^2 for elliptic/hyperbolic rotations and delta^2 for
    parabolic ones.  The leading coefficient vanishes in the horospherical
    regimes.
    """
    g = classify(spec)
    C = spec.C
    if spec.parabolic:
        return (g.km, 2.0 * C * g.eps, g.kp * C * C)
    k1 = g.k1
    return (k1 * g.km, g.delta**2 + 2.0 * k1 * g.eps * C, k1 * g.kp * C * C)


def ode_scale(spec):
    g = classify(spec)
    return g.delta**2 if spec.parabolic else g.k1 * g.delta**2


def quadratic_roots(a2, a1, a0):
    """Real roots of a2 x^2 + a1 x + a0, larger first; None if complex."""
    if a2 == 0:
        raise ValueError("degenerate quadratic")
    disc = a1 * a1 - 4.0 * a2 * a0
    scale = max(a1 * a1, abs(4.0 * a2 * a0), 1e-300)
    if disc < 0:
        if disc > -1e-13 * scale:
            disc = 0.0
        else:
            return None
    q = -0.5 * (a1 + np.copysign(np.sqrt(disc), a1))
    if q == 0.0:
        x1 = x2 = 0.0
    else:
        x1, x2 = q / a2, a0 / q
    return (max(x1, x2), min(x1, x2))


def profile_roots(spec):
    """Roots (first, second) of the profile polynomial; the first one is the
    root that appears under the radical in r(t)."""
    a2, a1, a0 = polynomial(spec)
    if a2 == 0.0:
        raise ValueError("horospherical regime: the profile polynomial is linear")
    roots = quadratic_roots(a2, a1, a0)
    if roots is None:
        raise InfeasibleSpecError(f"no real roots for C = {spec.C!r}", feasible_interval(spec))
    return roots


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float
    lo_closed: bool = True
    hi_closed: bool = True
    excluded: tuple = ()

    def __contains__(self, C):
        if C in self.excluded or not (self.lo <= C <= self.hi):
            return False
        if C == self.lo and not self.lo_closed:
            return False
        if C == self.hi and not self.hi_closed:
            return False
        return True

    def __str__(self):
        left = "[" if self.lo_closed else "("
        right = "]" if self.hi_closed else ")"
        text = f"{left}{float(self.lo)!r}, {float(self.hi)!r}{right}"
        if self.excluded:
            text += " minus {" + ", ".join(repr(float(e)) for e in self.excluded) + "}"
        return text


def _double_root_constants(H, kappa, k1):
    # zeros of the discriminant (kappa^2 + 2 k1 H C)^2 - 4 C^2 (H^2 + kappa)
    s = np.sqrt(H * H + kappa)
    return sorted((kappa / (2 * k1) * (H - s), kappa / (2 * k1) * (H + s)))


def feasible_interval(spec):
    """Set of C for which the profile exists, as an :class:`Interval`."""
    g = classify(spec)
    inf = np.inf
    H = spec.value
    if g.tag == RegimeTag.DELAUNAY:
        if spec.parabolic:
            return Interval(0.0, inf, False, False)
        lo, hi = (float(x) for x in _double_root_constants(H, spec.kappa, g.k1))
        if spec.kappa == 1:
            return Interval(lo, hi)
        return Interval(hi, inf, True, False)
    if g.tag == RegimeTag.HOROSPHERICAL:
        if spec.parabolic:
            return Interval(0.0, inf, False, False)
        if g.k1 == 1:
            return Interval(-0.5, inf, False, False)
        return Interval(0.5, inf, False, False, excluded=(1.0,))
    if g.tag == RegimeTag.SUB_HOROSPHERICAL:
        excluded = (0.0,) if spec.parabolic else ()
        return Interval(-inf, inf, False, False, excluded)
    hb = spec.value
    if g.tag == RegimeTag.CHC_GENERIC:
        excluded = (0.0, 1.0 / hb) if g.k1 == 1 else (0.0,)
        return Interval(-inf, inf, False, False, excluded)
    # chc horospherical: A = 1/k1 - 2C/hb (non-parabolic) or -2C/hb must not vanish
    excluded = (0.0,) if spec.parabolic else tuple(sorted({0.0, hb / (2.0 * g.k1)}))
    return Interval(-inf, inf, False, False, excluded)


@dataclass(frozen=True)
class ProfileSolution:
    """Closed-form profile.  Evaluate with r, dr, psi, dpsi, d, d_squared.

    ``shape`` names the radial function: "dn" (r = sqrt(c1) dn), "nc"
    (r = sqrt(c1)/cn), "cn" (r = sqrt(c1) cn), or "cosh"/"sinh"/"sin" for the
    horospherical regimes where r = amp * X(omega t).
    ``angle`` names the psi form: "pi" (lin t + coef Pi(k; Xi t)/Xi),
    "second-kind" (sign (t - 2 E(am(Xi t))/Xi)), "elementary".
    """

    spec: SurfaceSpec
    regime: Regime
    shape: str
    angle: str
    roots: tuple
    modulus: float
    scale: float  # Xi, or omega in the elementary regimes
    amp: float  # sqrt of the first root, or the amplitude of X
    lin: float
    coef: float
    k: Optional[float]
    domain: tuple
    extra: dict = field(default_factory=dict)
    r_offset: float = 0.0

    # radial part -----------------------------------------------------------
    def _x(self, t):
        return self.scale * np.asarray(t, float)

    def r(self, t):
        u = self._x(t)
        s = self.shape
        if s in ("dn", "nc", "cn"):
            sn, cn, dn, _ = ell.jacobi(u, self.modulus)
            base = {"dn": dn, "nc": 1.0 / cn, "cn": cn}[s]
        else:
            base = {"cosh": np.cosh, "sinh": np.sinh, "sin": np.sin}[s](u)
        return self.amp * base + self.r_offset

    def dr(self, t):
        u = self._x(t)
        s = self.shape
        a = self.amp * self.scale
        if s in ("dn", "nc", "cn"):
            sn, cn, dn, _ = ell.jacobi(u, self.modulus)
            if s == "dn":
                return -a * self.modulus**2 * sn * cn
            if s == "nc":
                return a * sn * dn / cn**2
            return -a * sn * dn
        return a * {"cosh": np.sinh, "sinh": np.cosh, "sin": np.cos}[s](u)

    def d_squared(self, t):
        """Signed square of the polar radius in the orthogonal plane."""
        r = self.r(t)
        g = self.regime
        if self.spec.parabolic:
            return (g.kp * g.delta / (2.0 * r)) ** 2
        return -(g.kp * g.delta + g.k1 * r * r) / g.k2

    def d(self, t):
        r = self.r(t)
        g = self.regime
        if self.spec.parabolic:
            return g.kp * g.delta / (2.0 * r)
        return np.sqrt(np.abs(self.d_squared(t)))

    # angular part ----------------------------------------------------------
    def psi(self, t):
        t = np.asarray(t, float)
        if self.angle == "pi":
            if self.coef == 0.0:
                return self.lin * t
            return self.lin * t + self.coef * ell.ell_pi(self.k, self.modulus, self._x(t)) / self.scale
        if self.angle == "second-kind":
            E = ell.ell_e_arg(self._x(t), self.modulus)
            return self.lin * (t - 2.0 * E / self.scale)
        return self.lin * t + self.coef * _elementary_integral(self, self._x(t)) / self.scale

    def dpsi(self, t):
        t = np.asarray(t, float)
        if self.angle == "pi":
            sn = ell.jacobi(self._x(t), self.modulus).sn
            return self.lin + self.coef / (1.0 - self.k * sn * sn)
        if self.angle == "second-kind":
            dn = ell.jacobi(self._x(t), self.modulus).dn
            return self.lin * (1.0 - 2.0 * dn * dn)
        r = self.r(t) - self.r_offset
        if self.spec.parabolic:
            return self.lin + self.coef / (r / self.amp) ** 2
        return self.lin + self.coef / (self.extra["gamma"] + self.extra["delta"] * (r / self.amp) ** 2)

    @property
    def valid_range(self):
        """Parameters where the closed form is usable; wider than ``domain``
        for the periodic and cosh profiles, which extend to all of R."""
        periodic = self.shape == "dn" and self.modulus < 1.0
        if (periodic or self.shape == "cosh") and not self.extra.get("guarded"):
            return (-np.inf, np.inf)
        return self.domain

    def sample(self, n, shrink=1.0):
        """n evenly spaced parameters over the central ``shrink`` part of the domain."""
        a, b = self.domain
        mid, half = 0.5 * (a + b), 0.5 * (b - a) * shrink
        return np.linspace(mid - half, mid + half, n)

    def perturbed(self, eps):
        """Copy with r shifted by eps (for negative controls)."""
        return replace(self, r_offset=self.r_offset + eps)


def _elementary_integral(sol, x):
    """int_0^x dy / (gamma + delta X(y)^2), or an antiderivative of 1/X^2 in
    the parabolic case."""
    shape = sol.shape
    if sol.spec.parabolic:
        # tanh, -coth, -cot
        x = np.asarray(x, float)
        with np.errstate(divide="ignore"):
            if shape == "cosh":
                val = np.tanh(x)
            elif shape == "sinh":
                val = -1.0 / np.tanh(x)
            else:
                val = -1.0 / np.tan(x)
        if not np.all(np.isfinite(val)):
            raise RangeError("psi is singular where r vanishes")
        return val
    gamma, delta = sol.extra["gamma"], sol.extra["delta"]
    x = np.asarray(x, float)
    if shape == "cosh":
        return _arc_integral(np.tanh(x), gamma + delta, -gamma)
    if shape == "sinh":
        return _arc_integral(np.tanh(x), gamma, delta - gamma)
    # sin: unwrap the tangent substitution over half periods
    m = np.round(x / np.pi)
    xr = x - m * np.pi
    if np.any(np.abs(np.abs(xr) - np.pi / 2) < 1e-15):
        xr = np.where(np.abs(np.abs(xr) - np.pi / 2) < 1e-15, np.sign(xr) * (np.pi / 2 - 1e-15), xr)
    part = _arc_integral(np.tan(xr), gamma, gamma + delta)
    if np.any(m != 0):
        prod = gamma * (gamma + delta)
        if prod <= 0:
            raise RangeError("psi integrand has a pole within the sampled range")
        part = part + m * np.pi * np.sign(gamma) / np.sqrt(prod)
    return part


def _arc_integral(tau, P, Q):
    """int_0^tau ds / (P + Q s^2)."""
    tau = np.asarray(tau, float)
    if P == 0.0:
        raise RangeError("psi integrand is singular at the base point")
    if Q == 0.0:
        return tau / P
    if P * Q > 0:
        return np.sign(P) / np.sqrt(P * Q) * np.arctan(tau * np.sqrt(Q / P))
    z = tau * np.sqrt(-Q / P)
    if np.any(np.abs(z) >= 1.0):
        raise RangeError("psi integrand has a pole within the sampled range")
    return np.sign(P) / np.sqrt(-P * Q) * np.arctanh(z)


def _infeasible(spec, why):
    iv = feasible_interval(spec)
    return InfeasibleSpecError(f"C = {spec.C!r} is infeasible ({why}); feasible set: {iv}", iv)


def solve_profile(spec):
    """Closed-form profile for ``spec`` or InfeasibleSpecError."""
    g = classify(spec)
    iv = feasible_interval(spec)
    if spec.C not in iv:
        raise _infeasible(spec, "outside the feasible set")
    if g.tag in (RegimeTag.HOROSPHERICAL, RegimeTag.CHC_HOROSPHERICAL):
        return _solve_elementary(spec, g)
    if g.tag == RegimeTag.DELAUNAY:
        return _solve_delaunay(spec, g)
    if g.tag == RegimeTag.SUB_HOROSPHERICAL:
        return _solve_sub(spec, g)
    return _solve_chc(spec, g)


def _sigma(g):
    return np.sqrt(g.k1 * g.k2 / g.delta)


def _solve_delaunay(spec, g):
    H, C, kappa = spec.value, spec.C, spec.kappa
    if spec.parabolic:
        c1, c2 = C / (H - 1.0), C / (H + 1.0)
        p = np.sqrt(2.0 / (H + 1.0))
        xi = np.sqrt(C * (H + 1.0))
        lin, coef, k = H, -(H - 1.0), p * p
    else:
        c1, c2 = profile_roots(spec)
        if c2 < -1e-14:
            raise _infeasible(spec, "negative root")
        c2 = max(c2, 0.0)
        k1 = g.k1
        p = np.sqrt(max(c1 - c2, 0.0) / c1)
        xi = np.sqrt((H * H + kappa) * c1 / kappa**2)
        sig = _sigma(g)
        den = k1 * c1 - kappa
        num = k1 * C - kappa * H
        lin = sig / k1 * H
        if abs(den) < 1e-13 or abs(num) < 1e-15:
            coef, k = 0.0, 0.0
        else:
            coef = -sig / k1 * num / den
            k = k1 * (c1 - c2) / den
    p = float(ell.check_modulus(p))
    if p < 1.0:
        half = float(ell.complete_f(p))
    else:
        half = 4.0
    guard = 0.0
    # axis crossing of the polar radius (hyperbolic rotation with r reaching 1)
    if not spec.parabolic and g.k1 == -1 and c2 <= 1.0 + 1e-12:
        guard = _GUARD
    domain = (-(half - guard) / xi, (half - guard) / xi)
    return ProfileSolution(
        spec, g, "dn", "pi", (c1, c2), p, xi, np.sqrt(c1), lin, coef, k, domain, {"guarded": guard > 0}
    )


def _solve_sub(spec, g):
    H, C, kappa = spec.value, spec.C, spec.kappa
    if spec.parabolic:
        c1 = max(C / (H + 1.0), C / (H - 1.0))
        c2 = min(C / (H + 1.0), C / (H - 1.0))
        p = np.sqrt((1.0 + H) / 2.0) if C > 0 else np.sqrt((1.0 - H) / 2.0)
        xi = np.sqrt(abs(2.0 * C))
        lin = float(np.sign(C))
        sol = dict(angle="second-kind", lin=lin, coef=0.0, k=None)
    else:
        c1, c2 = profile_roots(spec)
        k1 = g.k1
        p = np.sqrt(-c2 / (c1 - c2))
        xi = np.sqrt(-(H * H + kappa) * (c1 - c2))
        sig = _sigma(g)
        den = k1 * c1 - kappa
        sol = dict(
            angle="pi",
            lin=sig / kappa * C,
            coef=sig / kappa * c1 * (H * kappa - C * k1) / den,
            k=kappa / (kappa - k1 * c1),
        )
    p = float(ell.check_modulus(p))
    half = float(ell.complete_f(p)) - _GUARD
    if not spec.parabolic and g.k1 == -1 and c1 <= 1.0 + 1e-12:
        raise _infeasible(spec, "profile touches the rotation axis")
    domain = (-half / xi, half / xi)
    return ProfileSolution(spec, g, "nc", roots=(c1, c2), modulus=p, scale=xi, amp=np.sqrt(c1), domain=domain, **sol)


def _solve_chc(spec, g):
    hb, C = spec.value, spec.C
    if spec.parabolic:
        s = np.sign(C)
        c1, c2 = C / (1.0 / hb + s), C / (1.0 / hb - s)
        c1, c2 = max(c1, c2), min(c1, c2)
        lin, k = -1.0 / hb, 1.0
    else:
        c1, c2 = profile_roots(spec)
        k1 = g.k1
    p = np.sqrt(c1 / (c1 - c2))
    xi = np.sqrt(1.0 - 1.0 / hb**2) * np.sqrt(c1 - c2)
    if spec.parabolic:
        coef = C / c1
    else:
        lin = -k1 / hb
        coef = (hb * C - k1) / (hb * (k1 * c1 - 1.0))
        k = k1 * c1 / (k1 * c1 - 1.0)
    p = float(ell.check_modulus(p))
    half = float(ell.complete_f(p))
    if not spec.parabolic and g.k1 == 1:
        # keep the piece with r > 1 around t = 0
        if c1 <= 1.0:
            raise _infeasible(spec, "no profile piece outside the rotation axis")
        half = float(ell.ell_f(np.arccos(1.0 / np.sqrt(c1)), p))
    half -= _GUARD
    domain = (-half / xi, half / xi)
    return ProfileSolution(spec, g, "cn", "pi", (c1, c2), p, xi, np.sqrt(c1), lin, coef, k, domain)


def horospherical_constant(spec):
    """A in (r')^2 = A r^2 + const for the horospherical regimes."""
    g = classify(spec)
    C = spec.C
    if spec.parabolic:
        return 2.0 * g.eps * C / g.delta**2
    return 1.0 / g.k1 + 2.0 * g.eps * C / g.delta**2


def _solve_elementary(spec, g):
    C = spec.C
    A = horospherical_constant(spec)
    if g.kp < 0:
        if A <= 0:
            raise _infeasible(spec, "A <= 0 leaves no real solution")
        shape = "cosh"
    else:
        if A == 0:
            raise _infeasible(spec, "A = 0")
        shape = "sinh" if A > 0 else "sin"
    omega = np.sqrt(abs(A))
    amp = np.sqrt(C * C / abs(A))
    extra = {}
    if spec.parabolic:
        lin = g.eps
        coef = g.kp * C / (amp * amp)  # psi' = lin + coef / X^2
    else:
        sig = _sigma(g)
        k1 = g.k1
        lin = sig * g.eps * k1
        coef = sig * (g.kp * C - g.eps * g.kp * g.delta * k1)
        extra["gamma"] = g.kp * g.delta
        extra["delta"] = k1 * amp * amp
    guard = _GUARD / omega
    if shape == "cosh":
        if not spec.parabolic and g.k1 == -1 and amp <= 1.0:
            raise _infeasible(spec, "profile meets the rotation axis")
        domain = (-2.0 / omega, 2.0 / omega)
    else:
        top = 2.0 / omega if shape == "sinh" else np.pi / omega - guard
        if not spec.parabolic and g.k1 == 1:
            # spacelike piece r < 1 next to the vertex at t = 0
            if shape == "sinh" or amp > 1.0:
                inv = np.arcsinh(1.0 / amp) if shape == "sinh" else np.arcsin(1.0 / amp)
                top = min(top, inv / omega - guard)
        domain = (guard, top)
    sol = ProfileSolution(spec, g, shape, "elementary", (A,), 0.0, omega, amp, lin, coef, None, domain, extra)
    return sol
