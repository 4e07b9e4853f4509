"""Axisymmetric stationary rotating drops: surfaces of revolution with mean
curvature ``2H = a r^2 + b``.

Profiles are integrated in arc length, classified, closed by reflection, and
checked against the known height, area and volume estimates.
"""
__version__ = "0.1.0"

from .core import (  # noqa: E402
    DomainError,
    DropParams,
    SurfaceType,
    classify,
    comparison_circle,
    critical_radii,
    find_c0,
    first_integral,
    profile_curvature,
)
from .ode import ClosedProfile, ProfileCurve, StepControl, StopReason, close_profile, solve_profile  # noqa: E402
from .quantities import QuantityReport, quantity_report  # noqa: E402
from .bounds import BoundCheck, BoundReport, verify  # noqa: E402
from .mesh import RevolveMesh, discrete_mean_curvature, export_obj, laplace_residual, revolve  # noqa: E402

__all__ = [
    "DomainError",
    "DropParams",
    "SurfaceType",
    "classify",
    "comparison_circle",
    "critical_radii",
    "find_c0",
    "first_integral",
    "profile_curvature",
    "ClosedProfile",
    "ProfileCurve",
    "StepControl",
    "StopReason",
    "close_profile",
    "solve_profile",
    "QuantityReport",
    "quantity_report",
    "BoundCheck",
    "BoundReport",
    "verify",
    "RevolveMesh",
    "discrete_mean_curvature",
    "export_obj",
    "laplace_residual",
    "revolve",
]
