"""Jacobi elliptic functions and Legendre-form elliptic integrals.

Everything here takes the *modulus* ``p`` in [0, 1] (not the parameter
``m = p**2`` used by ``scipy.special``).  The third-kind integral is taken in
its Jacobi-argument form

    Pi_p(k; s) = int_0^s du / (1 - k sn_p(u)**2)

which is the form the profile curves need.  Incomplete integrals are reduced
to |phi| <= pi/2 by quasi-periodicity and then evaluated through Carlson
symmetric integrals.
"""

from typing import NamedTuple

import numpy as np
from scipy import special

from .errors import DomainError, RangeError

_SNAP = 1e-14
_AGM_MAX = 60


class JacobiTriple(NamedTuple):
    sn: np.ndarray
    cn: np.ndarray
    dn: np.ndarray
    am: np.ndarray


def _finite(x, name):
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise DomainError(f"{name} must be finite")
    return x


def check_modulus(p):
    """Validate a modulus, snapping values within 1e-14 of [0, 1] onto it."""
    p = _finite(p, "modulus")
    if np.any(p < -_SNAP) or np.any(p > 1.0 + _SNAP):
        raise DomainError(f"modulus outside [0, 1]: {p}")
    return np.clip(p, 0.0, 1.0)


def _comodulus_sq(p):
    # 1 - p^2 without cancellation near p = 1
    return (1.0 - p) * (1.0 + p)


def jacobi(u, p):
    """sn, cn, dn and amplitude of ``u`` for modulus ``p``.

    Descending Landen / AGM scheme.  The number of AGM steps depends only on
    ``p``, so for fixed modulus the result is a smooth function of ``u``
    (finite differences of it behave).  ``p == 1`` uses the hyperbolic limit.
    """
    u = _finite(u, "argument")
    p = check_modulus(p)
    u, p = np.broadcast_arrays(u, p)
    u = u.astype(float)
    unit = p == 1.0
    q = np.where(unit, 0.5, p)

    a = np.ones_like(q)
    b = np.sqrt(_comodulus_sq(q))
    c = q.copy()
    ratios = []
    for _ in range(_AGM_MAX):
        if np.all(np.abs(c) <= 1e-17 * a):
            break
        a, b, c = 0.5 * (a + b), np.sqrt(a * b), 0.5 * (a - b)
        ratios.append(c / a)
    phi = (2.0 ** len(ratios)) * a * u
    for ratio in reversed(ratios):
        phi = 0.5 * (phi + np.arcsin(ratio * np.sin(phi)))

    if np.any(unit):
        gd = 2.0 * np.arctan(np.tanh(0.5 * u))
        phi = np.where(unit, gd, phi)
    sn = np.sin(phi)
    cn = np.cos(phi)
    dn = np.sqrt(_comodulus_sq(p) + p * p * cn * cn)
    return JacobiTriple(sn, cn, dn, phi)


def jacobi_deriv(u, p):
    """Derivatives (sn', cn', dn') in ``u``."""
    sn, cn, dn, _ = jacobi(u, p)
    p = check_modulus(p)
    return cn * dn, -sn * dn, -p * p * sn * cn


def _reduce(phi):
    """phi = j*pi + r with |r| <= pi/2."""
    j = np.round(phi / np.pi)
    return j, phi - j * np.pi


def _carlson_xy(r, p):
    s = np.sin(r)
    c = np.cos(r)
    x = c * c
    y = x + _comodulus_sq(p) * s * s  # = 1 - p^2 sin^2
    return s, x, y


def complete_f(p):
    """Complete integral of the first kind F_p = F(pi/2, p)."""
    p = check_modulus(p)
    if np.any(p == 1.0):
        raise RangeError("complete first-kind integral diverges at p = 1")
    return special.elliprf(0.0, _comodulus_sq(p), 1.0)


def complete_e(p):
    p = check_modulus(p)
    y = _comodulus_sq(p)
    with np.errstate(divide="ignore", invalid="ignore"):
        val = special.elliprf(0.0, y, 1.0) - p * p / 3.0 * special.elliprd(0.0, y, 1.0)
    return np.where(p == 1.0, 1.0, val)


def ell_f(phi, p):
    """Incomplete first-kind integral F(phi, p) for any real amplitude."""
    phi = _finite(phi, "amplitude")
    p = check_modulus(p)
    phi, p = np.broadcast_arrays(phi, p)
    j, r = _reduce(phi)
    if np.any((p == 1.0) & ((np.abs(r) >= np.pi / 2) | (j != 0))):
        raise RangeError("F(phi, 1) diverges for |phi| >= pi/2")
    s, x, y = _carlson_xy(r, p)
    partial = s * special.elliprf(x, y, 1.0)
    if np.any(j != 0):
        return 2.0 * j * complete_f(np.where(j != 0, p, 0.0)) + partial
    return partial


def ell_e(phi, p):
    """Incomplete second-kind integral E(phi, p) for any real amplitude."""
    phi = _finite(phi, "amplitude")
    p = check_modulus(p)
    phi, p = np.broadcast_arrays(phi, p)
    j, r = _reduce(phi)
    s, x, y = _carlson_xy(r, p)
    with np.errstate(divide="ignore", invalid="ignore"):
        partial = s * special.elliprf(x, y, 1.0) - p * p / 3.0 * s**3 * special.elliprd(x, y, 1.0)
    partial = np.where(p == 1.0, s, partial)
    return 2.0 * j * complete_e(p) + partial


def ell_e_arg(s, p):
    """E(am(s, p), p), the second-kind integral in Jacobi-argument form."""
    return ell_e(jacobi(s, p).am, p)


def _pi_core(k, r, p):
    s, x, y = _carlson_xy(r, p)
    rho = 1.0 - k * s * s
    return s * special.elliprf(x, y, 1.0) + k / 3.0 * s**3 * special.elliprj(x, y, 1.0, rho)


def first_singular_argument(k, p):
    """Smallest |u| where 1 - k sn_p(u)^2 vanishes, or inf if never."""
    k = float(k)
    if k < 1.0:
        return np.inf
    return float(ell_f(np.arcsin(1.0 / np.sqrt(k)), p))


def ell_pi(k, p, s):
    """Third-kind integral Pi_p(k; s) = int_0^s du / (1 - k sn_p(u)^2).

    Raises RangeError if the path from 0 to s meets a zero of the integrand
    denominator (only possible for k >= 1); ``singular_at`` carries the
    first such |u|.
    """
    k = float(_finite(k, "k"))
    p = float(check_modulus(p))
    s = _finite(s, "argument")
    phi = jacobi(s, p).am
    if k >= 1.0:
        limit = np.arcsin(1.0 / np.sqrt(k))
        if np.any(np.abs(phi) >= limit):
            u_star = first_singular_argument(k, p)
            raise RangeError(
                f"third-kind path crosses a pole at |u| = {u_star!r} (k = {k!r})",
                singular_at=u_star,
            )
    j, r = _reduce(phi)
    out = _pi_core(k, r, p)
    if np.any(j != 0):
        out = out + 2.0 * j * complete_pi(k, p)
    return out


def complete_pi(k, p):
    """Complete third-kind integral Pi_p(k; F_p); requires k < 1 and p < 1."""
    k = float(k)
    p = float(check_modulus(p))
    if k >= 1.0:
        raise RangeError("complete third-kind integral diverges for k >= 1")
    if p == 1.0:
        raise RangeError("complete integrals diverge at p = 1")
    y = _comodulus_sq(p)
    return special.elliprf(0.0, y, 1.0) + k / 3.0 * special.elliprj(0.0, y, 1.0, 1.0 - k)
