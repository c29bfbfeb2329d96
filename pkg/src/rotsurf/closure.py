"""Closing up Delaunay profiles in S^3 into tori.

Over one period alpha of r the angle psi advances by a fixed amount; the
surface closes after n periods when n times that advance is a multiple of
2 pi.  The advance is only defined modulo 2 pi (the lifted value jumps by
2 pi when the profile passes over the polar axis), so the defect uses the
representative in [-pi, pi).
"""

from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from . import elliptic as ell
from .errors import ClosureNotFound, InfeasibleSpecError
from .profile import SurfaceSpec, feasible_interval, solve_profile


def period(sol):
    """Period 2 F_p / Xi of r for a dn-type profile."""
    if sol.shape != "dn":
        raise ValueError("closure is defined for Delaunay profiles only")
    return 2.0 * float(ell.complete_f(sol.modulus)) / sol.scale


def angle_advance(sol):
    """psi(t + alpha) - psi(t) over one period (lifted value).

    At p = 1 the period is infinite but the advance has a finite limit: the
    linear growth of Pi cancels against lin * t, leaving
    2 coef / Xi * (-k / (1 - k)) * arctan(sqrt(-k)) / sqrt(-k).
    """
    if sol.shape == "dn" and sol.modulus == 1.0:
        k = sol.k
        q = np.sqrt(-k) if k < 0 else 0.0
        tail = np.arctan(q) / q if q > 0 else 1.0
        return 2.0 * sol.coef / sol.scale * (-k / (1.0 - k)) * tail
    alpha = period(sol)
    if sol.coef == 0.0:
        return sol.lin * alpha
    return sol.lin * alpha + 2.0 * sol.coef * float(ell.complete_pi(sol.k, sol.modulus)) / sol.scale


def wrap_angle(x):
    return (np.asarray(x) + np.pi) % (2.0 * np.pi) - np.pi


def _profile(H, C):
    spec = SurfaceSpec.cmc(H, C, "s3")
    return solve_profile(spec)


def closure_defect(H, C, n):
    """n |advance| - 2 pi with the advance reduced to [-pi, pi).

    Zero exactly when the profile closes after n periods having turned once
    around the polar axis.
    """
    if int(n) != n or n < 1:
        raise ValueError("n must be a positive integer")
    sol = _profile(H, C)
    return n * abs(float(wrap_angle(angle_advance(sol)))) - 2.0 * np.pi


@dataclass(frozen=True)
class TorusSolution:
    H: float
    n: int
    C: float
    profile: object
    period: float
    advance: float
    embedded: bool
    defect: float


def solve_torus(H, n, bracket=None, subdivisions=64, xtol=1e-15):
    """All C with closure_defect(H, C, n) = 0 inside the feasible S^3 interval.

    The bracket (default: the feasible interval shrunk by 1e-6 at both ends)
    is scanned on ``subdivisions`` cells; each sign change is refined with
    Brent's method.  Raises ClosureNotFound (carrying the scanned table) if
    no cell changes sign.  A root with C < 0 is flagged as embedded.
    """
    spec = SurfaceSpec.cmc(H, 0.0, "s3")
    iv = feasible_interval(spec)
    lo, hi = bracket if bracket is not None else (iv.lo + 1e-6, iv.hi - 1e-6)
    if not (lo in iv and hi in iv) or lo >= hi:
        raise InfeasibleSpecError(f"bracket ({lo}, {hi}) leaves the feasible interval {iv}", iv)
    grid = np.linspace(lo, hi, subdivisions + 1)
    values = np.array([closure_defect(H, c, n) for c in grid])
    table = list(zip(grid.tolist(), values.tolist()))
    roots = []
    for (a, fa), (b, fb) in zip(table[:-1], table[1:]):
        if fa == 0.0:
            roots.append(a)
        elif fa * fb < 0:
            roots.append(brentq(lambda c: closure_defect(H, c, n), a, b, xtol=xtol, rtol=4 * np.finfo(float).eps))
    if values[-1] == 0.0:
        roots.append(hi)
    if not roots:
        raise ClosureNotFound(f"no closing constant for H = {H}, n = {n} in [{lo}, {hi}]", table)
    out = []
    for c in roots:
        sol = _profile(H, c)
        out.append(
            TorusSolution(
                H=float(H),
                n=int(n),
                C=float(c),
                profile=sol,
                period=period(sol),
                advance=angle_advance(sol),
                embedded=bool(c < 0),
                defect=closure_defect(H, c, n),
            )
        )
    return out


def torus_t_range(sol, n):
    return (0.0, n * period(sol))

