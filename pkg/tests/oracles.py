"""Reference computations used by the tests.

Nothing here calls into the package's elliptic code: integrals come from
adaptive quadrature over scipy's Jacobi functions, and profiles from direct
integration of the ODE system written out from the regime constants.
"""

import numpy as np
from scipy import integrate, special
from scipy.optimize import brentq


def quad(f, a, b):
    val, _ = integrate.quad(f, a, b, epsabs=1e-14, epsrel=1e-13, limit=500)
    return val


def F_quad(phi, p):
    return quad(lambda x: 1.0 / np.sqrt(1.0 - p * p * np.sin(x) ** 2), 0.0, phi)


def am_by_inversion(u, p):
    """Amplitude phi with F(phi, p) = u, by root-finding on the quadrature of F."""
    return brentq(lambda phi: F_quad(phi, p) - u, -10.0, 10.0, xtol=1e-15, rtol=1e-15)


def Pi_quad(k, p, s):
    m = p * p
    return quad(lambda u: 1.0 / (1.0 - k * special.ellipj(u, m)[0] ** 2), 0.0, s)


# (kappa_plus, kappa_minus, eps, Delta) for each class, and rotation constants
def constants(cls, value, kappa):
    if cls == "cmc":
        return -1.0, -(value * value + kappa), value, float(kappa)
    return 1.0, 1.0 / value**2 - 1.0, -1.0 / value, -1.0


ROT = {("s3", "elliptic"): (1, 1), ("h3", "elliptic"): (1, -1), ("h3", "hyperbolic"): (-1, 1)}


def ode_system(cls, value, C, space, rotation):
    """Right-hand side for y = (r, r', psi) of the second-order profile ODE."""
    kappa = 1 if space == "s3" else -1
    kp, km, eps, delta = constants(cls, value, kappa)
    if rotation == "parabolic":

        def P(x):
            return (km * x * x + 2 * C * eps * x + kp * C * C) / delta**2

        def dP(x):
            return (2 * km * x + 2 * C * eps) / delta**2

        def dpsi(x):
            return np.sqrt(-1.0 / delta) * (eps * x + kp * C) / x

    else:
        k1, k2 = ROT[(space, rotation)]

        def P(x):
            return (k1 * km * x * x + (delta**2 + 2 * k1 * eps * C) * x + k1 * kp * C * C) / (k1 * delta**2)

        def dP(x):
            return (2 * k1 * km * x + (delta**2 + 2 * k1 * eps * C)) / (k1 * delta**2)

        def dpsi(x):
            return np.sqrt(k1 * k2 / delta) * (eps * x + kp * C) / (kp * delta + k1 * x)

    def rhs(y):
        r, v, _ = y
        x = r * r
        return np.array([v, dP(x) * r, dpsi(x)])

    return rhs, P


def rk4(rhs, y0, t0, t1, steps):
    """Classical fixed-step Runge-Kutta; returns the state at t1."""
    y = np.array(y0, float)
    h = (t1 - t0) / steps
    for _ in range(steps):
        k1 = rhs(y)
        k2 = rhs(y + 0.5 * h * k1)
        k3 = rhs(y + 0.5 * h * k2)
        k4 = rhs(y + h * k3)
        y = y + h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)
    return y


def torus_advance(H, C):
    """(period, psi advance) of the S^3 Delaunay profile by ODE integration with
    event detection of the next maximum of r."""
    a2, a1, a0 = -(H * H + 1), 1 + 2 * H * C, -C * C
    x1 = max(np.roots([a2, a1, a0]).real)

    def rhs(t, y):
        r, v, _ = y
        x = r * r
        return [v, (2 * a2 * x + a1) * r, (H * x - C) / (x - 1)]

    def top(t, y):
        return y[1]

    top.direction = -1
    sol = integrate.solve_ivp(
        rhs, [0, 200], [np.sqrt(x1), 0.0, 0.0], method="DOP853", rtol=1e-13, atol=1e-14, events=top, dense_output=True
    )
    te = [t for t in sol.t_events[0] if t > 1e-6][0]
    return te, sol.sol(te)[2]


def parallel_weingarten(abc, s, kappa):
    """Relation a K + 2 b H + c = 0 carried to the parallel surface at distance s.

    Principal curvatures transform by a Moebius map; substituting its inverse
    k = (q C1 + S1) / (C2 + q S2) and clearing denominators gives the new
    coefficients.  Returned with unit norm, sign fixed by the largest entry.
    """
    a, b, c = abc
    if kappa == 1:
        C1, S1, C2, S2 = np.cos(s), -np.sin(s), np.cos(s), np.sin(s)
    else:
        C1, S1, C2, S2 = np.cosh(s), np.sinh(s), np.cosh(s), np.sinh(s)
    out = np.array(
        [
            a * C1 * C1 + 2 * b * C1 * S2 + c * S2 * S2,
            a * C1 * S1 + b * (C1 * C2 + S1 * S2) + c * C2 * S2,
            a * S1 * S1 + 2 * b * S1 * C2 + c * C2 * C2,
        ]
    )
    out /= np.linalg.norm(out)
    return out * np.sign(out[np.argmax(np.abs(out))])
