"""Inequality checks on solved profiles.

Every check states its hypotheses explicitly.  When they are not met the
check is ``skipped`` (never failed).  A check passes when
``margin >= -tol * max(|lhs|, |rhs|, 1)``.  For the constant-mean-curvature
limit ``a = 0``, where several estimates become equalities, a margin within
tolerance is tagged ``equality``.
"""
from __future__ import annotations

import enum
import math
import os
from dataclasses import asdict, dataclass, field

import numpy as np

from .core import DropParams, SurfaceType, comparison_circle, find_c0
from .ode import ClosedProfile, ProfileCurve, StopReason, close_profile
from .quantities import area, boundary_flux_check, truncate, volume

__all__ = [
    "DEFAULT_TOL",
    "BoundCheck",
    "BoundReport",
    "ContactAngle",
    "default_tol",
    "check_sandwich",
    "check_axi_bounds",
    "check_height_area_estimate",
    "check_volume_bound",
    "check_serrin_type",
    "check_heinz",
    "check_flux_identity",
    "check_contact_angle",
    "contact_angle_classification",
    "verify",
]

DEFAULT_TOL = 1e-7


def default_tol() -> float:
    """Verification tolerance, overridable with ``ROTADROP_TOL``."""
    raw = os.environ.get("ROTADROP_TOL")
    return float(raw) if raw else DEFAULT_TOL


@dataclass(frozen=True)
class BoundCheck:
    name: str
    lhs: float | None
    rhs: float | None
    margin: float | None
    passed: bool
    hypothesis_met: bool
    status: str
    note: str = ""

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class BoundReport:
    checks: list[BoundCheck] = field(default_factory=list)

    def extend(self, checks) -> None:
        self.checks.extend(checks)

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks if c.hypothesis_met)

    @property
    def failures(self) -> list[BoundCheck]:
        return [c for c in self.checks if c.hypothesis_met and not c.passed]

    def by_name(self, name: str) -> BoundCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_list(self) -> list[dict]:
        return [c.to_dict() for c in self.checks]

    def __iter__(self):
        return iter(self.checks)


def _skip(name: str, why: str) -> BoundCheck:
    return BoundCheck(name, None, None, None, False, False, "skipped", why)


def _judge(name: str, lhs: float, rhs: float, margin: float, tol: float,
           equality: bool = False, note: str = "") -> BoundCheck:
    scale = max(abs(lhs), abs(rhs), 1.0)
    ok = bool(margin >= -tol * scale)
    if ok and equality and abs(margin) <= tol * scale:
        status = "equality"
    else:
        status = "pass" if ok else "fail"
    return BoundCheck(name, float(lhs), float(rhs), float(margin), ok, True, status, note)


def _pointwise(name: str, lhs: np.ndarray, rhs: np.ndarray, tol: float,
               equality: bool = False) -> BoundCheck:
    """``lhs <= rhs`` at every sample; reports the worst sample."""
    if lhs.size == 0:
        return _skip(name, "no samples in range")
    gap = rhs - lhs
    k = int(np.argmin(gap))
    return _judge(name, lhs[k], rhs[k], gap[k], tol, equality)


def _type_i_gate(p: DropParams) -> str | None:
    if p.a < 0 or p.b < 0:
        return "requires a >= 0, b >= 0 (Type I or sphere)"
    return None


def check_sandwich(curve: ProfileCurve, c: float | None = None, tol: float | None = None) -> list[BoundCheck]:
    """``w(r) <= u(r) <= y(r)`` for the comparison circles through ``r = c``.

    The margins are signed distances of each sample to the circles (same
    sign as the vertical gaps, but not amplified near the vertical tangent).
    The radius is taken from the curve itself, ``R = c / sin(psi(c))``.
    """
    tol = default_tol() if tol is None else tol
    p = curve.params
    names = ("sandwich_upper", "sandwich_lower")
    gate = _type_i_gate(p)
    if gate:
        return [_skip(n, gate) for n in names]
    cv = truncate(curve, c)
    cc = cv.c_end
    if cc <= 0:
        return [_skip(n, "empty curve") for n in names]
    comparison_circle(cc, p)  # hypothesis and range validation
    sin_c, cos_c = math.sin(cv.psi_end), abs(math.cos(cv.psi_end))
    R = cc / sin_c
    y_center = p.u0 + R
    w_center = cv.u_end + R * cos_c  # w(c) = u(c), centre sits R cos(psi) higher
    d_y = np.hypot(cv.r, cv.u - y_center)
    d_w = np.hypot(cv.r, cv.u - w_center)
    eq = p.a == 0
    return [
        _pointwise(names[0], np.full(len(cv) - 1, R), d_y[1:], tol, eq),
        _pointwise(names[1], d_w[:-1], np.full(len(cv) - 1, R), tol, eq),
    ]


def _upper_height(r: np.ndarray, psi: np.ndarray, p: DropParams) -> np.ndarray:
    # (4 - sqrt(16 - r^2 q^2)) / q rationalised, with 16 - r^2 q^2 = 16 cos^2(psi)
    q = p.a * r ** 2 + 2.0 * p.b
    return r * r * q / (4.0 + 4.0 * np.abs(np.cos(psi)))


def _lower_height_disc(r: np.ndarray, psi: np.ndarray, p: DropParams) -> np.ndarray:
    # 4 - b^2 r^2 rewritten through sin(psi) = f(r): 4 cos^2 psi + a r^3 (f + b r / 2)
    return 4.0 * np.cos(psi) ** 2 + p.a * r ** 3 * (np.sin(psi) + 0.5 * p.b * r)


def check_axi_bounds(curve: ProfileCurve, c: float | None = None, tol: float | None = None) -> list[BoundCheck]:
    """Height bounds at every sample and area bounds at ``c``.

    Square-root arguments are evaluated through the first integral
    ``sin(psi) = f(r)`` so that they stay accurate at the vertical tangent.
    """
    tol = default_tol() if tol is None else tol
    p = curve.params
    names = ("axi1_lower", "axi1_upper", "axi2_lower", "axi2_upper")
    gate = _type_i_gate(p)
    if gate:
        return [_skip(n, gate) for n in names]
    cv = truncate(curve, c)
    cc = cv.c_end
    if cc <= 0:
        return [_skip(n, "empty curve") for n in names]
    r, psi = cv.r[1:], cv.psi[1:]
    rise = cv.u[1:] - p.u0
    eq = p.a == 0
    A = area(cv)
    out = []

    disc = _lower_height_disc(r, psi, p)
    if p.b <= 0:
        out.append(_skip(names[0], "lower height bound needs b > 0"))
    elif np.any(disc < 0):
        out.append(_skip(names[0], "r > 2/b: lower height bound undefined"))
    else:
        out.append(_pointwise(names[0], p.b * r ** 2 / (2.0 + np.sqrt(disc)), rise, tol, eq))

    out.append(_pointwise(names[1], rise, _upper_height(r, psi, p), tol, eq))

    if p.b <= 0:
        out.append(_skip(names[2], "lower area bound needs b > 0"))
    elif disc[-1] < 0:
        out.append(_skip(names[2], "c > 2/b: lower area bound undefined"))
    else:
        lo = 4.0 * math.pi * cc ** 2 / (2.0 + math.sqrt(disc[-1]))
        out.append(_judge(names[2], lo, A, A - lo, tol, eq))

    hi = 8.0 * math.pi * cc ** 2 / (4.0 + 4.0 * abs(math.cos(cv.psi_end)))
    out.append(_judge(names[3], A, hi, hi - A, tol, eq))
    return out


def check_height_area_estimate(curve: ProfileCurve, c: float | None = None,
                               tol: float | None = None) -> list[BoundCheck]:
    """``u(c) - u0 <= |a c^2 + 2b| A(c) / (8 pi)`` and its chain to the upper height bound."""
    tol = default_tol() if tol is None else tol
    p = curve.params
    names = ("height_estimate", "height_area_chain")
    if p.a < 0 or p.b < 0:
        return [_skip(n, "requires a != 0 with a b >= 0, or a = 0") for n in names]
    cv = truncate(curve, c)
    cc = cv.c_end
    if cc <= 0:
        return [_skip(n, "empty curve") for n in names]
    eq = p.a == 0
    h = cv.u_end - p.u0
    q = p.a * cc ** 2 + 2.0 * p.b
    mid = abs(q) * area(cv) / (8.0 * math.pi)
    out = [_judge(names[0], h, mid, mid - h, tol, eq,
                  note="CMC limit: equality expected" if eq else "")]
    upper = float(_upper_height(np.array([cc]), np.array([cv.psi_end]), p)[0])
    out.append(_judge(names[1], mid, upper, upper - mid, tol, eq))
    return out


def check_volume_bound(closed: ClosedProfile, tol: float | None = None) -> list[BoundCheck]:
    """Enclosed volume below ``4/3 pi c0^3``."""
    tol = default_tol() if tol is None else tol
    p = closed.lower.params
    gate = _type_i_gate(p)
    if gate:
        return [_skip("volume_bound", gate)]
    c0 = find_c0(p.a, p.b)
    V = volume(closed.lower)
    bound = 4.0 / 3.0 * math.pi * c0 ** 3
    return [_judge("volume_bound", V, bound, bound - V, tol, p.a == 0)]


def check_serrin_type(curve: ProfileCurve, c: float | None = None, tol: float | None = None) -> list[BoundCheck]:
    """``u(r) <= b u0 / (a r^2 + b) + 2/b`` at every sample (``a, b > 0``)."""
    tol = default_tol() if tol is None else tol
    p = curve.params
    if not (p.a > 0 and p.b > 0):
        return [_skip("serrin_type", "requires a > 0 and b > 0")]
    cv = truncate(curve, c)
    r = cv.r[1:]
    bound = p.b * p.u0 / (p.a * r ** 2 + p.b) + 2.0 / p.b
    return [_pointwise("serrin_type", cv.u[1:], bound, tol)]


def check_heinz(curve: ProfileCurve, c: float | None = None, tol: float | None = None) -> list[BoundCheck]:
    """``|a r^2 + 2b| <= 4/r`` on every realised circle ``r <= c``."""
    tol = default_tol() if tol is None else tol
    p = curve.params
    cv = truncate(curve, c)
    r = cv.r[1:]
    if r.size == 0:
        return [_skip("heinz", "empty curve")]
    at_tangent = cv.stop_reason is StopReason.VERTICAL_TANGENT
    lhs = np.abs(p.a * r ** 2 + 2.0 * p.b)
    rhs = 4.0 / r
    gap = rhs - lhs
    k = int(np.argmin(gap))
    return [_judge("heinz", lhs[k], rhs[k], gap[k], tol, equality=at_tangent and k == r.size - 1,
                   note="orthogonal boundary: equality expected" if at_tangent else "")]


def check_flux_identity(curve: ProfileCurve, c: float | None = None, tol: float | None = None,
                        fractions=(0.25, 0.5, 0.75, 1.0)) -> list[BoundCheck]:
    """Boundary flux identity on circles at the given fractions of ``c``."""
    tol = default_tol() if tol is None else tol
    cv = truncate(curve, c)
    out = []
    for frac in fractions:
        name = f"flux_identity@{frac:g}c"
        if cv.c_end <= 0:
            out.append(_skip(name, "empty curve"))
            continue
        fc = boundary_flux_check(cv, frac * cv.c_end if frac != 1.0 else None)
        out.append(_judge(name, fc.lhs, fc.rhs, -abs(fc.lhs - fc.rhs), tol,
                          note=f"relative residual {fc.residual:.3e}"))
    return out


class ContactAngle(str, enum.Enum):
    ORTHOGONAL_CCW = "Orthogonal(+)"
    ORTHOGONAL_CW = "Orthogonal(-)"
    TANGENT = "Tangent"
    GENERIC = "Generic"

    def __str__(self) -> str:
        return self.value


def contact_angle_classification(a: float, b: float, R: float, tol: float = 1e-9) -> ContactAngle:
    """How a surface bounded by the horizontal circle of radius ``R`` meets its plane."""
    if R <= 0:
        raise ValueError("boundary radius must be positive")
    q = R * (a * R * R + 2.0 * b)
    if abs(q - 4.0) <= tol * 4.0:
        return ContactAngle.ORTHOGONAL_CCW
    if abs(q + 4.0) <= tol * 4.0:
        return ContactAngle.ORTHOGONAL_CW
    if a * b < 0 and abs(a * R * R + 2.0 * b) <= tol * max(abs(2.0 * b), 1.0):
        return ContactAngle.TANGENT
    return ContactAngle.GENERIC


def check_contact_angle(closed: ClosedProfile, tol: float = 1e-9) -> list[BoundCheck]:
    """At ``c0`` the drop meets the mirror plane orthogonally."""
    low = closed.lower
    p = low.params
    c0 = find_c0(p.a, p.b)
    expect = ContactAngle.ORTHOGONAL_CW if low.surface_type is SurfaceType.TYPE_IIB else ContactAngle.ORTHOGONAL_CCW
    got = contact_angle_classification(p.a, p.b, c0, tol)
    lhs = c0 * (p.a * c0 * c0 + 2.0 * p.b)
    rhs = -4.0 if expect is ContactAngle.ORTHOGONAL_CW else 4.0
    ok = got is expect
    return [BoundCheck("contact_angle", lhs, rhs, -abs(lhs - rhs), ok, True,
                       "pass" if ok else "fail", f"{got} (expected {expect})")]


def verify(curve: ProfileCurve | ClosedProfile, c: float | None = None, tol: float | None = None) -> BoundReport:
    """Run every check on one profile.

    ``c=None`` evaluates the truncation-radius checks at the end of the curve.
    Checks on the closed drop run whenever the curve reaches its vertical
    tangent.
    """
    tol = default_tol() if tol is None else tol
    if isinstance(curve, ClosedProfile):
        closed = curve
        curve = closed.lower
    elif curve.stop_reason is StopReason.VERTICAL_TANGENT:
        closed = close_profile(curve)
    else:
        closed = None
    piece = truncate(curve, c)
    report = BoundReport()
    report.extend(check_sandwich(piece, tol=tol))
    report.extend(check_axi_bounds(piece, tol=tol))
    report.extend(check_height_area_estimate(piece, tol=tol))
    report.extend(check_serrin_type(piece, tol=tol))
    report.extend(check_heinz(piece, tol=tol))
    report.extend(check_flux_identity(piece, tol=tol))
    if closed is not None:
        report.extend(check_volume_bound(closed, tol=tol))
        report.extend(check_contact_angle(closed))
    else:
        report.extend([_skip("volume_bound", "curve does not close"),
                       _skip("contact_angle", "curve does not close")])
    return report
