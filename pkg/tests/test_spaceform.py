import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from rotsurf.errors import DegenerateMetricError
from rotsurf.spaceform import (
    Frame,
    SpaceForm,
    inner,
    metric_cross,
    minkowski_cross,
    minkowski_to_null,
    null_to_minkowski,
    numerical_curvatures,
    parallel_surface,
    project,
    rotate,
)

S3 = SpaceForm.sphere()
H3 = SpaceForm.hyperbolic()
H3N = SpaceForm.hyperbolic(null_frame=True)
V, E1, O, E2 = np.eye(4)
angles = st.floats(-3.0, 3.0)


def hyperboloid_point(a, b, c):
    x = np.array([0.0, a, b, c])
    x[0] = np.sqrt(1 + a * a + b * b + c * c)
    return x


def test_null_frame_table():
    assert inner(V, O, Frame.NULL) == -1
    assert inner(V, V, Frame.NULL) == 0
    assert inner(O, O, Frame.NULL) == 0
    assert inner(E1, E1, Frame.NULL) == 1


def test_frame_conversion_preserves_the_form():
    rng = np.random.default_rng(3)
    x, y = rng.normal(size=(2, 4))
    assert inner(x, y, Frame.NULL) == pytest.approx(inner(null_to_minkowski(x), null_to_minkowski(y), "minkowski"))
    np.testing.assert_allclose(minkowski_to_null(null_to_minkowski(x)), x, atol=1e-15)


def test_space_form_rejects_wrong_frame():
    with pytest.raises(ValueError):
        SpaceForm(1, Frame.MINKOWSKI)
    with pytest.raises(ValueError):
        SpaceForm(0, Frame.EUCLIDEAN)


def test_hyperbolic_rotation_of_e0():
    out = rotate("hyperbolic", 0.8, np.array([1.0, 0, 0, 0]), H3)
    np.testing.assert_allclose(out, [np.cosh(0.8), np.sinh(0.8), 0, 0])


def test_parabolic_rotation_of_o():
    out = rotate("parabolic", 1.0, O, H3N)
    np.testing.assert_allclose(out, O + E1 + 0.5 * V)
    assert inner(out, out, Frame.NULL) == pytest.approx(0.0)


@given(angles, angles, angles, angles)
def test_rotations_are_isometries(theta, a, b, c):
    x = hyperboloid_point(a, b, c)
    y = hyperboloid_point(c, a, -b)
    for kind in ("elliptic", "hyperbolic"):
        rx, ry = rotate(kind, theta, x, H3), rotate(kind, theta, y, H3)
        assert inner(rx, ry, "minkowski") == pytest.approx(inner(x, y, "minkowski"), rel=1e-9, abs=1e-9)
    xn, yn = minkowski_to_null(x), minkowski_to_null(y)
    rx, ry = rotate("parabolic", theta, xn, H3N), rotate("parabolic", theta, yn, H3N)
    assert inner(rx, ry, "null") == pytest.approx(inner(xn, yn, "null"), rel=1e-9, abs=1e-9)


@given(angles, angles)
def test_rotations_form_one_parameter_groups(s, t):
    x = hyperboloid_point(0.3, -0.2, 0.5)
    for kind, space, pt in (("elliptic", H3, x), ("hyperbolic", H3, x), ("parabolic", H3N, minkowski_to_null(x))):
        np.testing.assert_allclose(
            rotate(kind, s, rotate(kind, t, pt, space), space), rotate(kind, s + t, pt, space), rtol=1e-9, atol=1e-9
        )


def test_elliptic_rotation_on_sphere_fixes_the_pole():
    pole = np.array([0.0, 0, 0, -1])
    np.testing.assert_allclose(rotate("elliptic", 1.1, pole, S3), pole)


@given(angles, angles, angles)
def test_poincare_ball_image_is_inside_unit_ball(a, b, c):
    assert np.linalg.norm(project(hyperboloid_point(a, b, c), H3)) < 1


def test_stereographic_projection_is_equivariant():
    rng = np.random.default_rng(5)
    x = rng.normal(size=(10, 4))
    x /= np.linalg.norm(x, axis=1, keepdims=True)
    th = 0.9
    R = np.array([[np.cos(th), -np.sin(th), 0], [np.sin(th), np.cos(th), 0], [0, 0, 1]])
    np.testing.assert_allclose(project(rotate("elliptic", th, x, S3), S3), project(x, S3) @ R.T, atol=1e-12)


def test_projection_of_null_frame_points():
    x = minkowski_to_null(hyperboloid_point(0.2, 0.1, -0.3))
    np.testing.assert_allclose(project(x, H3N), project(hyperboloid_point(0.2, 0.1, -0.3), H3))


def test_projection_mismatch():
    with pytest.raises(ValueError):
        project(np.array([1.0, 0, 0, 0]), S3, "poincare")


@given(st.lists(st.floats(-5, 5), min_size=12, max_size=12))
def test_minkowski_cross_is_orthogonal(vals):
    a, b, c = np.reshape(vals, (3, 4))
    w = minkowski_cross(a, b, c)
    scale = 1 + np.abs(w).max() * max(np.abs(vals))
    for q in (a, b, c):
        assert abs(inner(w, q, "minkowski")) < 1e-12 * scale


def test_metric_cross_determinant_property():
    rng = np.random.default_rng(9)
    a, b, c, x = rng.normal(size=(4, 4))
    for frame in Frame:
        w = metric_cross(a, b, c, frame)
        assert inner(w, x, frame) == pytest.approx(np.linalg.det(np.stack([x, a, b, c])), rel=1e-12)


@pytest.mark.parametrize("t", [-1.3, 0.2, 2.5])
def test_parallel_surface_stays_on_quadric(t):
    f = np.array([1.0, 0, 0, 0])
    n = np.array([0.0, 0, 1, 0])
    g = parallel_surface(f, n, t, H3)
    assert inner(g, g, "minkowski") == pytest.approx(-1.0)
    g = parallel_surface(np.array([0.0, 0, 0, 1]), np.array([1.0, 0, 0, 0]), t, S3)
    assert inner(g, g, "euclidean") == pytest.approx(1.0)


def test_parallel_surface_contract():
    with pytest.raises(ValueError):
        parallel_surface(np.array([2.0, 0, 0, 0]), np.array([0.0, 1, 0, 0]), 0.1, H3)


def geodesic_sphere(rho):
    def f(u, v):
        u, v = np.broadcast_arrays(u, v)
        s = np.sin(rho)
        return np.stack([s * np.sin(u) * np.cos(v), s * np.sin(u) * np.sin(v), s * np.cos(u), np.cos(rho) + 0 * u], -1)

    return f


def clifford(u, v):
    u, v = np.broadcast_arrays(u, v)
    return np.stack([np.cos(u), np.sin(u), np.cos(v), np.sin(v)], -1) / np.sqrt(2)


def horosphere(u, v):
    u, v = np.broadcast_arrays(u, v)
    return np.stack([(1 + u * u + v * v) / 2, u, np.ones_like(u), v], -1)


@pytest.mark.parametrize("h", [1e-4, 1e-3])
@pytest.mark.parametrize("rho", [0.4, np.pi / 4, 1.2])
def test_curvature_of_geodesic_spheres(rho, h):
    c = numerical_curvatures(geodesic_sphere(rho), np.array([0.5, 1.4]), np.array([0.2, 2.0]), S3, h=h)
    expect = 1 / np.tan(rho)
    np.testing.assert_allclose(np.abs(c.k1), expect, atol=1e-5)
    np.testing.assert_allclose(np.abs(c.k2), expect, atol=1e-5)


@pytest.mark.parametrize("h", [1e-4, 1e-3])
def test_curvature_of_clifford_torus(h):
    c = numerical_curvatures(clifford, 0.3, 0.4, S3, h=h)
    assert c.H == pytest.approx(0.0, abs=1e-6)
    assert c.K == pytest.approx(-1.0, abs=1e-6)


def test_curvature_of_horosphere():
    c = numerical_curvatures(horosphere, np.array([0.3, -1.0]), np.array([-0.4, 0.7]), H3N, h=1e-4)
    np.testing.assert_allclose(np.abs(c.k1), 1.0, atol=1e-5)
    np.testing.assert_allclose(np.abs(c.k2), 1.0, atol=1e-5)
    np.testing.assert_allclose(c.K, 1.0, atol=1e-5)


def test_orientation_flips_mean_curvature_only():
    a = numerical_curvatures(geodesic_sphere(0.7), 0.5, 0.3, S3)
    b = numerical_curvatures(geodesic_sphere(0.7), 0.5, 0.3, S3, orientation=-1)
    assert a.H == pytest.approx(-b.H)
    assert a.K == pytest.approx(b.K)


def test_degenerate_metric():
    def flat(u, v):
        u, v = np.broadcast_arrays(u, v)
        return np.stack([np.cos(u), np.sin(u), 0 * v, 0 * v], -1)

    with pytest.raises(DegenerateMetricError):
        numerical_curvatures(flat, 0.1, 0.2, S3)
    c = numerical_curvatures(flat, np.array([0.1]), np.array([0.2]), S3, strict=False)
    assert np.isnan(c.H[0])
