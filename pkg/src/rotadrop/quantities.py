"""Integral quantities of a generating curve.

All integrals are composite Simpson sums over the arc-length samples, with
``dr = cos(psi) ds`` and ``du = sin(psi) ds`` substituted so nothing divides
by ``u'``.  A truncation radius ``c`` below the curve's end re-integrates the
profile up to ``r = c`` instead of interpolating.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import NamedTuple

import numpy as np
from scipy.integrate import simpson

from .core import DomainError, find_c0
from .ode import ClosedProfile, ProfileCurve, StopReason, close_profile, solve_profile

__all__ = [
    "QuantityReport",
    "FluxCheck",
    "truncate",
    "area",
    "closed_area",
    "volume",
    "height",
    "energy",
    "closed_energy",
    "stability_q_n1",
    "boundary_flux_check",
    "heinz_margin",
    "quantity_report",
]

EPS_GUARD = 1e-300
_END_SLACK = 1e-12


class FluxCheck(NamedTuple):
    lhs: float
    rhs: float
    residual: float


@dataclass(frozen=True)
class QuantityReport:
    area: float
    volume: float
    height: float
    energy: float
    q_n1: float | None
    c0: float | None
    flux_residual: float
    heinz_margin: float

    def to_dict(self) -> dict:
        return asdict(self)


def truncate(curve: ProfileCurve, c: float | None) -> ProfileCurve:
    """The part of ``curve`` over ``[0, c]``; ``None`` means the whole curve."""
    if c is None:
        return curve
    if c < 0:
        raise DomainError("truncation radius must be non-negative")
    end = curve.c_end
    if c >= end - _END_SLACK * max(1.0, end):
        if c > end + _END_SLACK * max(1.0, end):
            raise DomainError(f"c = {c} lies beyond the end of the curve (r = {end})")
        return curve
    return solve_profile(curve.params, r_max=c, control=curve.control)


def _integrate(y: np.ndarray, s: np.ndarray) -> float:
    if len(s) < 2:
        return 0.0
    return float(simpson(y, x=s))


def area(curve: ProfileCurve, c: float | None = None) -> float:
    """Area of the revolved graph over ``[0, c]``."""
    cv = truncate(curve, c)
    return 2.0 * math.pi * _integrate(cv.r, cv.s)


def closed_area(closed: ClosedProfile) -> float:
    return 2.0 * area(closed.lower)


def volume(curve: ProfileCurve, c: float | None = None) -> float:
    """``2 pi int_0^c r^2 u'(r) dr``.

    At ``c = c0`` this is the volume enclosed by the closed drop; for smaller
    ``c`` it is the volume of the lens formed by the cap and its mirror image
    in the plane ``x3 = u(c)``.
    """
    cv = truncate(curve, c)
    return 2.0 * math.pi * _integrate(cv.r ** 2 * np.sin(cv.psi), cv.s)


def height(curve: ProfileCurve, c: float | None = None) -> float:
    cv = truncate(curve, c)
    return cv.u_end - cv.params.u0


def energy(curve: ProfileCurve, c: float | None = None) -> float:
    """Energy of the revolved graph over ``[0, c]`` with the upward normal.

    ``E = A + a int r^2 x3 N3 dM + b int x3 N3 dM`` where on the graph
    ``N3 dM = 2 pi r dr``.
    """
    cv = truncate(curve, c)
    p = cv.params
    w = cv.u * np.cos(cv.psi) * cv.r
    centrifugal = 2.0 * math.pi * _integrate(cv.r ** 2 * w, cv.s)
    algebraic_volume = 2.0 * math.pi * _integrate(w, cv.s)
    return 2.0 * math.pi * _integrate(cv.r, cv.s) + p.a * centrifugal + p.b * algebraic_volume


def closed_energy(closed: ClosedProfile) -> float:
    """Energy of the closed drop, orientation continued across the mirror plane.

    Only differences ``u - u(c0)`` enter, so the value does not depend on
    vertical placement.
    """
    low = closed.lower
    p = low.params
    w = 2.0 * (low.u - closed.mirror_height) * np.cos(low.psi) * low.r
    return (closed_area(closed)
            + 2.0 * math.pi * p.a * _integrate(low.r ** 2 * w, low.s)
            + 2.0 * math.pi * p.b * _integrate(w, low.s))


def stability_q_n1(closed: ClosedProfile) -> float:
    """Second variation on the horizontal Gauss-map component ``N1``.

    ``Q(N1) = -4 pi a int_0^c0 r^2 u'(r) dr``; a negative value certifies
    that the closed drop is unstable.  A non-negative value proves nothing.
    """
    low = closed.lower
    return -4.0 * math.pi * low.params.a * _integrate(low.r ** 2 * np.sin(low.psi), low.s)


def boundary_flux_check(curve: ProfileCurve, c: float | None = None) -> FluxCheck:
    """Both sides of the boundary flux identity on the circle ``r = c``.

    ``lhs = 2 pi c^2 (a c^2 + 2b)`` from the position term and
    ``rhs = 8 pi c sin(psi(c))`` from the conormal term.
    """
    cv = truncate(curve, c)
    p = cv.params
    cc = cv.c_end
    lhs = 2.0 * math.pi * cc * cc * (p.a * cc * cc + 2.0 * p.b)
    rhs = 8.0 * math.pi * cc * math.sin(cv.psi_end)
    resid = abs(lhs - rhs) / max(abs(lhs), abs(rhs), EPS_GUARD)
    if lhs == 0.0 and rhs == 0.0:
        resid = 0.0
    return FluxCheck(lhs, rhs, resid)


def heinz_margin(c: float, a: float, b: float) -> float:
    """``4/c - |a c^2 + 2b|``; a surface spanning the circle needs this >= 0."""
    if c <= 0:
        raise DomainError("boundary radius must be positive")
    return 4.0 / c - abs(a * c * c + 2.0 * b)


def quantity_report(curve: ProfileCurve | ClosedProfile, c: float | None = None) -> QuantityReport:
    """Collect the quantities of one profile.

    Without ``c`` the curve must reach its vertical tangent and the closed
    drop is described (total area, enclosed volume, full height, closed
    energy).  With ``c`` the graph piece over ``[0, c]`` is described; the
    stability value still refers to the closed drop when available.
    """
    if c is not None and c <= 0:
        raise DomainError("truncation radius must be positive")
    if isinstance(curve, ClosedProfile):
        closed = curve
        curve = closed.lower
    elif curve.stop_reason is StopReason.VERTICAL_TANGENT:
        closed = close_profile(curve)
    else:
        closed = None
    p = curve.params
    c0 = find_c0(p.a, p.b) if not (p.a == 0 and p.b == 0) else None
    q = stability_q_n1(closed) if closed is not None else None

    if c is None:
        if closed is None:
            raise DomainError("closed-drop quantities need a curve that reaches the vertical tangent")
        flux = boundary_flux_check(curve)
        return QuantityReport(
            area=closed_area(closed),
            volume=volume(curve),
            height=closed.total_height,
            energy=closed_energy(closed),
            q_n1=q,
            c0=c0,
            flux_residual=flux.residual,
            heinz_margin=heinz_margin(curve.c_end, p.a, p.b),
        )

    piece = truncate(curve, c)
    flux = boundary_flux_check(piece)
    return QuantityReport(
        area=area(piece),
        volume=volume(piece),
        height=height(piece),
        energy=energy(piece),
        q_n1=q,
        c0=c0,
        flux_residual=flux.residual,
        heinz_margin=heinz_margin(piece.c_end, p.a, p.b),
    )
