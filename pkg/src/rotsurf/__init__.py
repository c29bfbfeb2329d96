"""Rotational constant mean curvature and constant harmonic-mean-curvature
surfaces in S^3 and H^3, parametrized by Jacobi elliptic functions."""

from .closure import TorusSolution, closure_defect, solve_torus
from .errors import ClosureNotFound, DegenerateMetricError, DomainError, InfeasibleSpecError, RangeError
from .profile import ProfileSolution, SurfaceSpec, classify, feasible_interval, polynomial, solve_profile
from .spaceform import Frame, Rotation, SpaceForm
from .surface import Surface, chc_immerse, immerse, sample_mesh
from .verify import verify_all, verify_curvature, verify_ode, verify_parallel

__all__ = [
    "ClosureNotFound",
    "DegenerateMetricError",
    "DomainError",
    "Frame",
    "InfeasibleSpecError",
    "ProfileSolution",
    "RangeError",
    "Rotation",
    "SpaceForm",
    "Surface",
    "SurfaceSpec",
    "TorusSolution",
    "chc_immerse",
    "classify",
    "closure_defect",
    "feasible_interval",
    "immerse",
    "polynomial",
    "sample_mesh",
    "solve_profile",
    "solve_torus",
    "verify_all",
    "verify_curvature",
    "verify_ode",
    "verify_parallel",
]
