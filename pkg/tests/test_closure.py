import numpy as np
import pytest

from oracles import torus_advance
from rotsurf.closure import (
    angle_advance,
    closure_defect,
    period,
    solve_torus,
    torus_t_range,
    wrap_angle,
)
from rotsurf.errors import ClosureNotFound, InfeasibleSpecError
from rotsurf.profile import SurfaceSpec, feasible_interval, solve_profile
from rotsurf.surface import Surface

# closing constants for H = 2 found by integrating the profile ODE (DOP853,
# event detection on r' = 0) and solving advance = -2 pi / n
FROZEN = {5: -0.06106018664919046, 6: -0.015442329159695158}


def test_clifford_advance_and_defect():
    sol = solve_profile(SurfaceSpec.cmc(0, 0.5))
    assert period(sol) == pytest.approx(np.pi * np.sqrt(2))
    assert angle_advance(sol) == pytest.approx(np.pi * np.sqrt(2))
    for n in (1, 2, 3, 4):
        expect = n * abs(np.pi * np.sqrt(2) - 2 * np.pi) - 2 * np.pi
        assert closure_defect(0, 0.5, n) == pytest.approx(expect, abs=1e-12)


def test_wrap_angle_range():
    x = np.array([-7.0, -np.pi, 0.0, np.pi, 7.0])
    w = wrap_angle(x)
    assert np.all((w >= -np.pi) & (w < np.pi))
    np.testing.assert_allclose(np.cos(w), np.cos(x), atol=1e-15)


@pytest.mark.parametrize("C", [-0.1, -0.01, 0.3, 1.5, 2.1])
def test_period_and_advance_match_integration(C):
    sol = solve_profile(SurfaceSpec.cmc(2, C))
    T, adv = torus_advance(2.0, C)
    assert period(sol) == pytest.approx(T, rel=1e-10)
    assert np.cos(angle_advance(sol)) == pytest.approx(np.cos(adv), abs=1e-10)
    assert np.sin(angle_advance(sol)) == pytest.approx(np.sin(adv), abs=1e-10)


@pytest.mark.parametrize("n", [5, 6])
def test_h2_tori_match_frozen_constants(n):
    (tor,) = solve_torus(2.0, n)
    assert tor.C == pytest.approx(FROZEN[n], abs=1e-10)
    assert tor.embedded
    assert abs(tor.defect) < 1e-12
    _, adv = torus_advance(2.0, tor.C)
    assert wrap_angle(n * adv) == pytest.approx(0.0, abs=1e-9) or abs(wrap_angle(n * adv)) > np.pi - 1e-9


def test_no_single_lobe_torus():
    with pytest.raises(ClosureNotFound) as info:
        solve_torus(2.0, 1)
    assert len(info.value.table) == 65


def test_defect_is_continuous_across_the_family():
    iv = feasible_interval(SurfaceSpec.cmc(2, 0))
    C = np.linspace(iv.lo + 1e-6, iv.hi - 1e-6, 2001)
    d = np.array([closure_defect(2, c, 5) for c in C])
    # a wrapping slip would show up as a jump of about 2 pi n
    assert np.abs(np.diff(d)).max() < 0.1


def test_advance_limit_through_the_pole():
    # C = 0 gives the profile asymptotic to the axis; the advance stays finite
    sol = solve_profile(SurfaceSpec.cmc(2, 0.0))
    assert sol.modulus == 1.0
    assert angle_advance(sol) == pytest.approx(-np.arctan(4 / 3), abs=1e-12)
    for eps in (1e-6, -1e-6):
        assert closure_defect(2, eps, 5) == pytest.approx(closure_defect(2, 0.0, 5), abs=1e-3)


@pytest.mark.parametrize("n", [5, 6])
def test_torus_seam_closes(n):
    (tor,) = solve_torus(2.0, n)
    surf = Surface(tor.profile)
    a, b = torus_t_range(tor.profile, n)
    theta = np.linspace(0, 2 * np.pi, 7)
    gap = np.abs(surf(theta, a) - surf(theta, b)).max()
    assert gap < 1e-8


def test_bad_bracket_and_lobes():
    with pytest.raises(InfeasibleSpecError):
        solve_torus(2.0, 5, bracket=(-5.0, 0.0))
    with pytest.raises(ValueError):
        closure_defect(2.0, 0.0, 0)


def test_period_needs_dn_profile():
    with pytest.raises(ValueError):
        period(solve_profile(SurfaceSpec.cmc(0.5, 0.2, "h3")))
