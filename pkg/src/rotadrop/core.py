"""Closed-form scalar functions for axisymmetric rotating drops.

A drop family is fixed by the mean-curvature law ``2H = a r^2 + b``.  Along
the generating curve ``sin(psi) = f(r) = r (a r^2 + 2b) / 4`` and the planar
curvature is ``kappa(r) = (3 a r^2 + 2b) / 4``; everything here follows from
those two expressions.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

__all__ = [
    "DomainError",
    "DropParams",
    "SurfaceType",
    "first_integral",
    "profile_curvature",
    "classify",
    "find_c0",
    "critical_radii",
    "comparison_circle",
    "ROOT_TOL",
]

ROOT_TOL = 1e-12

# slack on the Type II(a)/II(b) threshold v(r1) >= 1 so the exact boundary
# pair a = -2 b^3 / 27 lands on II(a) despite rounding in r1
_THRESHOLD_SLACK = 8 * 2.220446049250313e-16


class DomainError(ValueError):
    """Raised when parameters fall outside the domain of an operation."""


class SurfaceType(str, enum.Enum):
    TYPE_I = "TypeI"
    TYPE_IIA = "TypeIIa"
    TYPE_IIB = "TypeIIb"
    CMC = "CMC"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class DropParams:
    """Coefficients of one drop family.

    ``flipped`` records that the parameters were obtained from user input by
    the symmetry ``-u(r; u0, a, b) = u(r; -u0, -a, -b)``; heights of the
    resulting profile are then the negatives of the original ones.
    """

    a: float
    b: float
    u0: float = 0.0
    d: float = 0.0
    flipped: bool = False

    @property
    def is_canonical(self) -> bool:
        return self.b > 0 or (self.b == 0 and self.a >= 0)

    def canonical(self) -> "DropParams":
        if self.is_canonical:
            return self
        return replace(self, a=-self.a, b=-self.b, u0=-self.u0, d=-self.d,
                       flipped=not self.flipped)

    def require_closed_family(self) -> None:
        if self.d != 0:
            raise DomainError("d != 0 describes toroidal profiles; only d = 0 is supported here")
        if self.a == 0 and self.b == 0:
            raise DomainError("a = b = 0 is a minimal graph and never closes")


def first_integral(r: float, p: DropParams) -> float:
    """``sin(psi)`` along the profile: ``r (a r^2 + 2b) / 4 + d / r``."""
    if p.d != 0:
        if r <= 0:
            raise DomainError("first integral with d != 0 needs r > 0")
        return 0.25 * r * (p.a * r * r + 2.0 * p.b) + p.d / r
    if r < 0:
        raise DomainError("radius must be non-negative")
    return 0.25 * r * (p.a * r * r + 2.0 * p.b)


def profile_curvature(r: float, p: DropParams) -> float:
    if p.d != 0:
        raise DomainError("profile curvature is only defined for d = 0")
    return 0.25 * (3.0 * p.a * r * r + 2.0 * p.b)


def _canonical_ab(a: float, b: float) -> tuple[float, float]:
    if a == 0 and b == 0:
        raise DomainError("a = b = 0 has no closed profile")
    p = DropParams(a, b).canonical()
    return p.a, p.b


def critical_radii(a: float, b: float) -> tuple[float, float]:
    """Inflection radius ``r1`` and height-maximum radius ``r2`` (``a < 0 < b``)."""
    if not (a < 0 < b):
        raise DomainError("critical radii need a < 0 < b")
    r1 = math.sqrt(-2.0 * b / (3.0 * a))
    r2 = math.sqrt(-2.0 * b / a)
    return r1, r2


def classify(a: float, b: float) -> SurfaceType:
    """Label the closed drop generated by ``(a, b)``.

    Inputs with ``b < 0`` (or ``b = 0``, ``a < 0``) are canonicalised first.
    For ``a < 0`` the split is made on the maximum of the first integral,
    ``v(r1) = r1 b / 3``, reaching 1; this amounts to ``a >= -2 b^3 / 27``
    for Type II(a).  The boundary pair itself is Type II(a).
    """
    a, b = _canonical_ab(a, b)
    if a == 0:
        return SurfaceType.CMC
    if a > 0:
        return SurfaceType.TYPE_I
    r1, _ = critical_radii(a, b)
    if r1 * b / 3.0 >= 1.0 - _THRESHOLD_SLACK:
        return SurfaceType.TYPE_IIA
    return SurfaceType.TYPE_IIB


def _solve_level(fun, dfun, lo: float, hi: float, tol: float) -> float:
    """Root of ``fun`` in ``[lo, hi]`` where ``fun(lo) < 0 <= fun(hi)``.

    Newton steps are taken while they stay inside the shrinking bracket,
    bisection otherwise.
    """
    flo, fhi = fun(lo), fun(hi)
    if flo >= 0:
        return lo
    if fhi < 0:
        raise DomainError("root is not bracketed")
    if fhi == 0:
        return hi
    x = 0.5 * (lo + hi)
    for _ in range(200):
        fx = fun(x)
        if abs(fx) <= tol:
            return x
        if fx < 0:
            lo = x
        else:
            hi = x
        dfx = dfun(x)
        step_ok = False
        if dfx != 0:
            xn = x - fx / dfx
            step_ok = lo < xn < hi
        x = xn if step_ok else 0.5 * (lo + hi)
        if hi - lo <= 4 * math.ulp(hi):
            return x
    return x


def find_c0(a: float, b: float, tol: float = ROOT_TOL) -> float:
    """Maximal radius of the profile graph, where the tangent turns vertical.

    ``f(c0) = +1`` for Type I, II(a) and CMC; for Type II(b) ``c0`` is the
    root of ``f = -1`` beyond the height maximum ``r2``.
    """
    a, b = _canonical_ab(a, b)
    kind = classify(a, b)
    p = DropParams(a, b)
    kappa = lambda r: profile_curvature(r, p)  # noqa: E731

    if kind is SurfaceType.CMC:
        return 2.0 / b
    if kind is SurfaceType.TYPE_IIB:
        _, r2 = critical_radii(a, b)
        g = lambda r: -1.0 - first_integral(r, p)  # noqa: E731  increasing past r1
        hi = 2.0 * r2
        for _ in range(200):
            if g(hi) >= 0:
                break
            hi *= 2.0
        else:
            raise DomainError("no sign change found for f = -1")
        return _solve_level(g, lambda r: -kappa(r), r2, hi, tol)

    g = lambda r: first_integral(r, p) - 1.0  # noqa: E731
    if kind is SurfaceType.TYPE_IIA:
        r1, _ = critical_radii(a, b)
        if g(r1) < 0:  # threshold pair, f(r1) = 1 up to rounding
            return r1
        return _solve_level(g, kappa, 0.0, r1, tol)
    hi = 1.0
    while g(hi) < 0:
        hi *= 2.0
    return _solve_level(g, kappa, 0.0, hi, tol)


def comparison_circle(c: float, p: DropParams) -> tuple[float, float, float]:
    """Radius and vertical offsets of the sandwiching circles at ``r = c``.

    Returns ``(R, y_center, w_offset)`` with ``R = 4 / (a c^2 + 2b)``.  The
    upper circle is ``y(r) = y_center - sqrt(R^2 - r^2)``, ``y_center = R + u0``;
    the lower one is ``w(r) = y(r) + w_offset + u(c)`` with ``w_offset = -y(c)``.
    """
    if p.d != 0:
        raise DomainError("comparison circles need d = 0")
    if not (p.a >= 0 and p.b >= 0) or (p.a == 0 and p.b == 0):
        raise DomainError("comparison circles need a >= 0, b >= 0")
    if c <= 0:
        raise DomainError("truncation radius must be positive")
    q = p.a * c * c + 2.0 * p.b
    R = 4.0 / q
    if c > R * (1.0 + 1e-12):
        raise DomainError("truncation radius lies beyond c0")
    y_center = R + p.u0
    y_c = y_center - math.sqrt(max(R * R - c * c, 0.0))
    return R, y_center, -y_c
