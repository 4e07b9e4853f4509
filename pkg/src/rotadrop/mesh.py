"""Triangle meshes of revolved profiles and their discrete mean curvature.

Meridian nodes are placed uniformly in arc length and interpolated with a
cubic Hermite spline through the stored samples (values ``r, u``, slopes
``cos psi, sin psi``), so near-vertical parts of the profile are resolved
as well as flat ones.  Each axis point is a single pole vertex with a fan.

Triangles are wound so that closed embedded drops have outward normals.
The discrete mean curvature is signed against the profile's own normal
``N = (-sin psi cos t, -sin psi sin t, cos psi)`` continued across the
mirror plane, which points into a closed drop; the sphere of radius 2/b
then has ``H = b/2 > 0``.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import CubicHermiteSpline

from . import kernels
from .core import DomainError, DropParams
from .ode import ClosedProfile, ProfileCurve

__all__ = [
    "RevolveMesh",
    "LaplaceResidual",
    "revolve",
    "discrete_mean_curvature",
    "laplace_residual",
    "mesh_area",
    "mesh_volume",
    "euler_characteristic",
    "export_obj",
    "obj_text",
]

MIN_COUNT = 8


@dataclass(frozen=True, eq=False)
class RevolveMesh:
    vertices: np.ndarray
    triangles: np.ndarray
    boundary_loops: tuple[np.ndarray, ...]
    target_h: np.ndarray
    normals: np.ndarray  # profile normal at each vertex, used only for signs
    poles: np.ndarray
    params: DropParams
    closed: bool
    self_intersecting: bool = False
    n_theta: int = 0
    n_s: int = 0
    _interior: np.ndarray = field(default=None, repr=False)

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def interior(self) -> np.ndarray:
        """Mask of vertices that are neither poles nor on a boundary loop."""
        return self._interior


@dataclass(frozen=True)
class LaplaceResidual:
    field: np.ndarray
    max: float
    mean: float
    n_interior: int

    def to_dict(self) -> dict:
        return {"max": self.max, "mean": self.mean, "n_interior": self.n_interior}


def _meridian(profile: ProfileCurve | ClosedProfile, n_s: int):
    """``(r, z, nr, nz)`` at ``n_s + 1`` arc-length-uniform nodes, pole first."""
    if isinstance(profile, ClosedProfile):
        low, uc = profile.lower, profile.mirror_height
    else:
        low, uc = profile, None
    if len(low) < 2 or low.length <= 0:
        raise DomainError("cannot revolve an empty profile")
    cos, sin = np.cos(low.psi), np.sin(low.psi)
    r_spl = CubicHermiteSpline(low.s, low.r, cos)
    u_spl = CubicHermiteSpline(low.s, low.u, sin)
    L = low.length

    if uc is None:
        t = np.linspace(0.0, L, n_s + 1)
        psi = np.interp(t, low.s, low.psi)
        r, z = r_spl(t), u_spl(t)
        nr, nz = -np.sin(psi), np.cos(psi)
    else:
        t = np.linspace(0.0, 2.0 * L, n_s + 1)
        upper = t > L
        tl = np.where(upper, 2.0 * L - t, t)
        psi = np.interp(tl, low.s, low.psi)
        r, z = r_spl(tl), u_spl(tl)
        z = np.where(upper, 2.0 * uc - z, z)
        nr = -np.sin(psi)
        nz = np.where(upper, -np.cos(psi), np.cos(psi))
        r[-1] = 0.0
    r[0] = 0.0
    return np.clip(r, 0.0, None), z, nr, nz


def revolve(profile: ProfileCurve | ClosedProfile, n_theta: int = 64, n_s: int = 64) -> RevolveMesh:
    """Revolve a profile about the axis.

    ``n_s`` is the number of meridian intervals.  An open profile gives a
    pole plus ``n_s`` rings, the last being the boundary loop; a closed
    profile gives two poles and ``n_s - 1`` rings.
    """
    if n_theta < MIN_COUNT or n_s < MIN_COUNT:
        raise DomainError(f"n_theta and n_s must be at least {MIN_COUNT}")
    closed = isinstance(profile, ClosedProfile)
    params = profile.lower.params if closed else profile.params
    r, z, nr, nz = _meridian(profile, n_s)

    theta = 2.0 * np.pi * np.arange(n_theta) / n_theta
    ct, st = np.cos(theta), np.sin(theta)
    last_ring = n_s - 1 if closed else n_s
    ks = np.arange(1, last_ring + 1)

    ring_xyz = np.stack([np.outer(r[ks], ct), np.outer(r[ks], st),
                         np.repeat(z[ks][:, None], n_theta, axis=1)], axis=-1).reshape(-1, 3)
    ring_nrm = np.stack([np.outer(nr[ks], ct), np.outer(nr[ks], st),
                         np.repeat(nz[ks][:, None], n_theta, axis=1)], axis=-1).reshape(-1, 3)
    verts = [np.array([[0.0, 0.0, z[0]]]), ring_xyz]
    nrms = [np.array([[0.0, 0.0, nz[0]]]), ring_nrm]
    if closed:
        verts.append(np.array([[0.0, 0.0, z[-1]]]))
        nrms.append(np.array([[0.0, 0.0, nz[-1]]]))
    vertices = np.concatenate(verts)
    normals = np.concatenate(nrms)

    def vid(k, j):
        return 1 + (k - 1) * n_theta + (j % n_theta)

    j = np.arange(n_theta)
    # outward winding: the reverse of the profile normal's orientation
    fans = [np.stack([np.zeros(n_theta, dtype=np.int64), vid(1, j + 1), vid(1, j)], axis=1)]
    for k in range(1, last_ring):
        a0, a1 = vid(k, j), vid(k, j + 1)
        b0, b1 = vid(k + 1, j), vid(k + 1, j + 1)
        fans.append(np.stack([a0, a1, b0], axis=1))
        fans.append(np.stack([a1, b1, b0], axis=1))
    if closed:
        top = len(vertices) - 1
        fans.append(np.stack([vid(last_ring, j), vid(last_ring, j + 1),
                              np.full(n_theta, top, dtype=np.int64)], axis=1))
    triangles = np.concatenate(fans).astype(np.int64)

    poles = np.array([0, len(vertices) - 1]) if closed else np.array([0])
    loops: tuple[np.ndarray, ...] = () if closed else (vid(n_s, j).astype(np.int64),)
    interior = np.ones(len(vertices), dtype=bool)
    interior[poles] = False
    for loop in loops:
        interior[loop] = False

    rr = np.hypot(vertices[:, 0], vertices[:, 1])
    target = 0.5 * (params.a * rr ** 2 + params.b)
    for arr in (vertices, triangles, target, normals, interior):
        arr.flags.writeable = False
    return RevolveMesh(
        vertices=vertices,
        triangles=triangles,
        boundary_loops=loops,
        target_h=target,
        normals=normals,
        poles=poles,
        params=params,
        closed=closed,
        self_intersecting=closed and not profile.embedded,
        n_theta=n_theta,
        n_s=n_s,
        _interior=interior,
    )


def discrete_mean_curvature(mesh: RevolveMesh) -> np.ndarray:
    """Per-vertex ``H = |L x| / (2 A)`` signed by the profile normal.

    ``L`` is the cotangent Laplacian and ``A`` the mixed Voronoi area.
    Poles and boundary vertices are set to NaN.  Zero-area triangles raise.
    """
    L, area, n_bad = kernels.cotan_laplacian(np.ascontiguousarray(mesh.vertices, dtype=float),
                                             np.ascontiguousarray(mesh.triangles))
    if n_bad:
        raise DomainError(f"{n_bad} degenerate triangles in mesh")
    H = np.full(mesh.n_vertices, np.nan)
    m = mesh.interior
    vec = L[m] / area[m][:, None]
    sign = np.sign(np.einsum("ij,ij->i", vec, mesh.normals[m]))
    H[m] = 0.5 * np.linalg.norm(vec, axis=1) * sign
    return H


def laplace_residual(mesh: RevolveMesh) -> LaplaceResidual:
    """``|2 H - (a r^2 + b)|`` over the interior vertices."""
    H = discrete_mean_curvature(mesh)
    res = np.abs(2.0 * H - 2.0 * mesh.target_h)
    inner = res[mesh.interior]
    if inner.size == 0:
        return LaplaceResidual(res, 0.0, 0.0, 0)
    return LaplaceResidual(res, float(inner.max()), float(inner.mean()), int(inner.size))


def mesh_area(mesh: RevolveMesh) -> float:
    v = mesh.vertices[mesh.triangles]
    return float(0.5 * np.linalg.norm(np.cross(v[:, 1] - v[:, 0], v[:, 2] - v[:, 0]), axis=1).sum())


def mesh_volume(mesh: RevolveMesh) -> float:
    """Signed enclosed volume by the divergence theorem (closed meshes only)."""
    if not mesh.closed:
        raise DomainError("enclosed volume needs a closed mesh")
    v = mesh.vertices[mesh.triangles]
    return float(np.einsum("ij,ij->i", v[:, 0], np.cross(v[:, 1], v[:, 2])).sum() / 6.0)


def edges(mesh: RevolveMesh) -> np.ndarray:
    """Unique undirected edges as sorted index pairs."""
    t = mesh.triangles
    e = np.concatenate([t[:, [0, 1]], t[:, [1, 2]], t[:, [2, 0]]])
    return np.unique(np.sort(e, axis=1), axis=0)


def euler_characteristic(mesh: RevolveMesh) -> int:
    return int(mesh.n_vertices - len(edges(mesh)) + len(mesh.triangles))


def obj_text(mesh: RevolveMesh) -> str:
    lines = [f"v {x:.9g} {y:.9g} {z:.9g}" for x, y, z in mesh.vertices.tolist()]
    lines += [f"f {i + 1} {j + 1} {k + 1}" for i, j, k in mesh.triangles.tolist()]
    return "\n".join(lines) + "\n"


def export_obj(mesh: RevolveMesh, destination: str | os.PathLike) -> int:
    """Write Wavefront OBJ and return the number of bytes written."""
    data = obj_text(mesh).encode("ascii")
    with open(destination, "wb") as fh:
        fh.write(data)
    return len(data)
