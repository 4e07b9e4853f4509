"""Generating curves of rotating drops.

The profile is integrated in arc length ``s`` from the axis with a fixed-step
classical RK4 scheme, the stopping event (vertical tangent or a requested
radius) is located inside the last step by a scalar root find, and the curve
is then re-integrated on a uniform grid in ``s`` whose last node is the event.
"""
from __future__ import annotations

import enum
import io
import logging
import math
from dataclasses import dataclass, field
from typing import TextIO

import numpy as np
from scipy.optimize import brentq

from . import kernels
from .core import DomainError, DropParams, SurfaceType, classify, find_c0

__all__ = [
    "StopReason",
    "StepControl",
    "ProfileCurve",
    "ClosedProfile",
    "solve_profile",
    "close_profile",
    "profile_residual",
    "write_csv",
    "curve_to_csv",
]

log = logging.getLogger(__name__)

_EVENT_SNAP = 1e-8


class StopReason(str, enum.Enum):
    VERTICAL_TANGENT = "VerticalTangent"
    RADIUS_REACHED = "RadiusReached"
    STEP_LIMIT = "StepLimit"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class StepControl:
    """Integration settings.

    ``step`` is the largest arc-length step; the stored curve uses
    ``samples`` nodes and an actual step no larger than ``step``.
    ``event_tol`` bounds the error of the located stopping point in ``s``.
    """

    step: float = 1e-4
    samples: int = 2048
    max_steps: int = 50_000_000
    event_tol: float = 1e-12

    def __post_init__(self):
        if not self.step > 0:
            raise ValueError("step must be positive")
        if self.samples < 3:
            raise ValueError("need at least 3 samples")
        if self.max_steps < 1:
            raise ValueError("max_steps must be positive")


@dataclass(frozen=True, eq=False)
class ProfileCurve:
    s: np.ndarray
    r: np.ndarray
    u: np.ndarray
    psi: np.ndarray
    params: DropParams
    c_end: float
    stop_reason: StopReason
    surface_type: SurfaceType | None
    control: StepControl = field(default_factory=StepControl)
    h_used: float = 0.0

    def __post_init__(self):
        for name in ("s", "r", "u", "psi"):
            getattr(self, name).flags.writeable = False

    @property
    def samples(self) -> np.ndarray:
        """``(n, 4)`` array of ``(s, r, u, psi)`` rows."""
        return np.column_stack([self.s, self.r, self.u, self.psi])

    @property
    def length(self) -> float:
        return float(self.s[-1])

    @property
    def u_end(self) -> float:
        return float(self.u[-1])

    @property
    def psi_end(self) -> float:
        return float(self.psi[-1])

    def __len__(self) -> int:
        return len(self.s)


@dataclass(frozen=True, eq=False)
class ClosedProfile:
    """Closed drop: the curve plus its mirror image in ``x3 = u(c0)``."""

    lower: ProfileCurve
    mirror_height: float
    embedded: bool
    embedded_criterion: bool
    n_crossings: int

    @property
    def total_height(self) -> float:
        # equals 2 (u(c0) - u0) whenever u is monotone on [0, c0]
        return 2.0 * float(np.max(np.abs(self.lower.u - self.mirror_height)))

    def meridian(self) -> tuple[np.ndarray, np.ndarray]:
        """``(r, z)`` of the full generating curve, axis to axis."""
        low = self.lower
        r = np.concatenate([low.r, low.r[-2::-1]])
        z = np.concatenate([low.u, 2.0 * self.mirror_height - low.u[-2::-1]])
        return r, z


def _rk4_step(a: float, b: float, r: float, u: float, psi: float, h: float):
    out = np.empty((2, 3))
    kernels.rk4_run_py(a, b, r, u, psi, h, 1, 1, out)
    return out[1]


def _locate_event(p: DropParams, state, h: float, flag: int, r_stop: float, tol: float) -> float:
    r, u, psi = state
    if flag == kernels.FLAG_VERTICAL:
        g = lambda t: abs(_rk4_step(p.a, p.b, r, u, psi, t)[2]) - kernels.HALF_PI  # noqa: E731
    else:
        g = lambda t: _rk4_step(p.a, p.b, r, u, psi, t)[0] - r_stop  # noqa: E731
    if g(h) <= 0:
        return h
    return brentq(g, 0.0, h, xtol=tol, rtol=4 * np.finfo(float).eps)


def solve_profile(p: DropParams, r_max: float | None = None,
                  control: StepControl | None = None) -> ProfileCurve:
    """Integrate the generating curve from the axis.

    With ``r_max=None`` the curve runs to the vertical tangent at ``c0``;
    otherwise it stops at ``r = r_max`` (or earlier at the vertical tangent).
    A curve that exhausts ``control.max_steps`` is returned as-is with
    ``stop_reason = StepLimit``.
    """
    control = control or StepControl()
    p = p.canonical()
    if p.d != 0:
        raise DomainError("only d = 0 profiles can be integrated")
    if r_max is None:
        p.require_closed_family()
        r_stop = math.inf
    else:
        if r_max < 0:
            raise DomainError("r_max must be non-negative")
        r_stop = float(r_max)
    kind = None if (p.a == 0 and p.b == 0) else classify(p.a, p.b)

    if r_stop == 0.0:
        z = np.zeros(1)
        return ProfileCurve(z.copy(), z.copy(), np.full(1, p.u0), z.copy(), p, 0.0,
                            StopReason.RADIUS_REACHED, kind, control, 0.0)

    h = control.step
    n, r, u, psi, flag = kernels.rk4_until(p.a, p.b, p.u0, h, control.max_steps, r_stop)
    if flag == kernels.FLAG_STEP_LIMIT:
        s_end = n * h
        reason = StopReason.STEP_LIMIT
        log.warning("step limit %d reached before the stop condition (a=%g, b=%g)",
                    control.max_steps, p.a, p.b)
    else:
        s_end = n * h + _locate_event(p, (r, u, psi), h, flag, r_stop, control.event_tol)
        reason = StopReason.VERTICAL_TANGENT if flag == kernels.FLAG_VERTICAL else StopReason.RADIUS_REACHED

    intervals = control.samples - 1
    sub = max(1, math.ceil(s_end / (intervals * h)))
    h_used = s_end / (intervals * sub)
    out = np.empty((intervals + 1, 3))
    kernels.rk4_run(p.a, p.b, 0.0, p.u0, 0.0, h_used, intervals * sub, sub, out)
    s = np.arange(intervals + 1) * (sub * h_used)
    s[-1] = s_end
    r_arr, u_arr, psi_arr = out[:, 0].copy(), out[:, 1].copy(), out[:, 2].copy()
    if reason is StopReason.VERTICAL_TANGENT:
        _project_event(p, r_arr, psi_arr)
    return ProfileCurve(s, r_arr, u_arr, psi_arr, p, float(r_arr[-1]), reason, kind, control, h_used)


def _project_event(p: DropParams, r: np.ndarray, psi: np.ndarray) -> None:
    """Put the vertical-tangent sample exactly on ``psi = +-pi/2, r = c0``.

    ``r`` is stationary there, so the integrated value only carries
    accumulated rounding (a few 1e-13), which graph-form comparisons such as
    ``sqrt(R^2 - r^2)`` would amplify to ~1e-6.
    """
    c0 = find_c0(p.a, p.b)
    if abs(r[-1] - c0) > _EVENT_SNAP * max(1.0, c0):
        log.warning("vertical tangent at r=%r is far from c0=%r; not projected", r[-1], c0)
        return
    r[-1] = c0
    psi[-1] = math.copysign(kernels.HALF_PI, psi[-1])


def profile_residual(curve: ProfileCurve) -> float:
    """Largest violation of ``sin(psi) = f(r)`` over the samples."""
    if len(curve) < 2:
        return 0.0
    a, b = curve.params.a, curve.params.b
    f = 0.25 * curve.r * (a * curve.r ** 2 + 2.0 * b)
    return float(np.max(np.abs(np.sin(curve.psi) - f)))


def close_profile(curve: ProfileCurve) -> ClosedProfile:
    """Reflect a vertical-tangent curve about ``x3 = u(c0)``.

    Embeddedness is decided geometrically by sweeping the curve against its
    mirror image for segment crossings.  The classical criterion (Type II(b)
    self-intersects iff ``u0 <= u(c0)``) is stored alongside; a disagreement
    is logged.
    """
    if curve.stop_reason is not StopReason.VERTICAL_TANGENT:
        raise DomainError("only curves that reach the vertical tangent can be closed")
    uc = curve.u_end
    mirror = 2.0 * uc - curve.u
    hits = int(kernels.count_crossings(curve.r, curve.u, curve.r, mirror, True))
    embedded = hits == 0
    if curve.surface_type is SurfaceType.TYPE_IIB:
        criterion = not (curve.params.u0 <= uc)
    else:
        criterion = True
    if criterion != embedded:
        log.warning("embeddedness disagreement for a=%g b=%g: crossing sweep %s, u0/u(c0) test %s",
                    curve.params.a, curve.params.b, embedded, criterion)
    return ClosedProfile(curve, uc, embedded, criterion, hits)


def write_csv(curve: ProfileCurve, fh: TextIO) -> None:
    fh.write("s,r,u,psi\n")
    for row in curve.samples:
        fh.write(",".join(format(float(v), ".17g") for v in row))
        fh.write("\n")


def curve_to_csv(curve: ProfileCurve) -> str:
    buf = io.StringIO()
    write_csv(curve, buf)
    return buf.getvalue()

