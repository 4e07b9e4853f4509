"""Hot loops: profile integration, cotangent Laplacian, polyline crossings.

Each kernel exists twice.  The ``*_py`` versions are plain Python/numpy and
are always importable; the ``*_nb`` versions are numba-compiled.  The public
names (``rk4_until``, ``rk4_run``, ``cotan_laplacian``, ``count_crossings``)
point to the compiled set unless ``ROTADROP_DISABLE_JIT`` is set.

The profile system in arc length is

    r' = cos(psi),  u' = sin(psi),  psi' = (3 a r^2 + 2 b) / 4,

smooth at the axis and through the vertical tangent.
"""
import math

import numpy as np

from ._jit import JIT_ENABLED, njit

HALF_PI = 0.5 * math.pi

FLAG_STEP_LIMIT = 0
FLAG_VERTICAL = 1
FLAG_RADIUS = 2


# --------------------------------------------------------------------------
# profile integration
#
# The RK4 stage evaluations are written out inline so the same source
# compiles under numba without helper calls.
# --------------------------------------------------------------------------

def rk4_until_py(a, b, u0, h, max_steps, r_stop):
    """Step from the axis until ``|psi| >= pi/2`` or ``r >= r_stop``.

    Returns ``(n, r, u, psi, flag)`` where the state is the last one *before*
    the event, reached after ``n`` full steps.
    """
    ka = 0.75 * a
    kb = 0.5 * b
    r = 0.0
    u = u0
    psi = 0.0
    hh = 0.5 * h
    for n in range(max_steps):
        k1r = math.cos(psi)
        k1u = math.sin(psi)
        k1p = ka * r * r + kb
        r2 = r + hh * k1r
        p2 = psi + hh * k1p
        k2r = math.cos(p2)
        k2u = math.sin(p2)
        k2p = ka * r2 * r2 + kb
        r3 = r + hh * k2r
        p3 = psi + hh * k2p
        k3r = math.cos(p3)
        k3u = math.sin(p3)
        k3p = ka * r3 * r3 + kb
        r4 = r + h * k3r
        p4 = psi + h * k3p
        k4r = math.cos(p4)
        k4u = math.sin(p4)
        k4p = ka * r4 * r4 + kb
        nr = r + h / 6.0 * (k1r + 2.0 * k2r + 2.0 * k3r + k4r)
        nu = u + h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u)
        npsi = psi + h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p)
        if abs(npsi) >= HALF_PI:
            return n, r, u, psi, FLAG_VERTICAL
        if nr >= r_stop:
            return n, r, u, psi, FLAG_RADIUS
        r = nr
        u = nu
        psi = npsi
    return max_steps, r, u, psi, FLAG_STEP_LIMIT


def rk4_run_py(a, b, r, u, psi, h, n_steps, stride, out):
    """Take ``n_steps`` steps from ``(r, u, psi)``, storing every ``stride``-th.

    ``out`` must hold ``n_steps // stride + 1`` rows of ``(r, u, psi)``; row 0
    is the start state.
    """
    ka = 0.75 * a
    kb = 0.5 * b
    hh = 0.5 * h
    out[0, 0] = r
    out[0, 1] = u
    out[0, 2] = psi
    row = 1
    for n in range(1, n_steps + 1):
        k1r = math.cos(psi)
        k1u = math.sin(psi)
        k1p = ka * r * r + kb
        r2 = r + hh * k1r
        p2 = psi + hh * k1p
        k2r = math.cos(p2)
        k2u = math.sin(p2)
        k2p = ka * r2 * r2 + kb
        r3 = r + hh * k2r
        p3 = psi + hh * k2p
        k3r = math.cos(p3)
        k3u = math.sin(p3)
        k3p = ka * r3 * r3 + kb
        r4 = r + h * k3r
        p4 = psi + h * k3p
        k4r = math.cos(p4)
        k4u = math.sin(p4)
        k4p = ka * r4 * r4 + kb
        r = r + h / 6.0 * (k1r + 2.0 * k2r + 2.0 * k3r + k4r)
        u = u + h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u)
        psi = psi + h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p)
        if n % stride == 0:
            out[row, 0] = r
            out[row, 1] = u
            out[row, 2] = psi
            row += 1
    return row


# --------------------------------------------------------------------------
# cotangent Laplacian of the embedding
# --------------------------------------------------------------------------

def cotan_laplacian_py(verts, tris):
    """Cotangent-weighted Laplacian of position and mixed Voronoi areas.

    Returns ``(L, area, n_degenerate)`` with
    ``L[i] = sum_j (cot alpha_ij + cot beta_ij) / 2 * (x_j - x_i)`` so that
    ``L[i] / area[i]`` approximates ``2 H N``.  Zero-area triangles are
    skipped and counted.
    """
    x0 = verts[tris[:, 0]]
    x1 = verts[tris[:, 1]]
    x2 = verts[tris[:, 2]]
    e0 = x2 - x1  # opposite vertex 0
    e1 = x0 - x2  # opposite vertex 1
    e2 = x1 - x0  # opposite vertex 2
    cr = np.linalg.norm(np.cross(e2, -e1), axis=1)
    ok = cr > 0.0
    n_bad = int(np.count_nonzero(~ok))
    e0, e1, e2, cr, t = e0[ok], e1[ok], e2[ok], cr[ok], tris[ok]
    cot0 = -np.einsum("ij,ij->i", e2, e1) / cr
    cot1 = -np.einsum("ij,ij->i", e0, e2) / cr
    cot2 = -np.einsum("ij,ij->i", e1, e0) / cr

    L = np.zeros_like(verts)
    # edge (1,2) carries cot0, edge (2,0) cot1, edge (0,1) cot2
    for (i, j, w, e) in ((1, 2, cot0, e0), (2, 0, cot1, e1), (0, 1, cot2, e2)):
        contrib = 0.5 * w[:, None] * e
        np.add.at(L, t[:, i], contrib)
        np.add.at(L, t[:, j], -contrib)

    tri_area = 0.5 * cr
    l0, l1, l2 = (np.einsum("ij,ij->i", e, e) for e in (e0, e1, e2))
    vor0 = (l1 * cot1 + l2 * cot2) / 8.0
    vor1 = (l2 * cot2 + l0 * cot0) / 8.0
    vor2 = (l0 * cot0 + l1 * cot1) / 8.0
    obtuse = np.stack([cot0 < 0, cot1 < 0, cot2 < 0], axis=1)
    any_obtuse = obtuse.any(axis=1)
    vor = np.stack([vor0, vor1, vor2], axis=1)
    mixed = np.where(any_obtuse[:, None],
                     np.where(obtuse, tri_area[:, None] / 2.0, tri_area[:, None] / 4.0),
                     vor)
    area = np.zeros(len(verts))
    for i in range(3):
        np.add.at(area, t[:, i], mixed[:, i])
    return L, area, n_bad


def cotan_laplacian_nb_impl(verts, tris):
    n = verts.shape[0]
    L = np.zeros((n, 3))
    area = np.zeros(n)
    n_bad = 0
    for f in range(tris.shape[0]):
        ids = tris[f]
        p = np.empty((3, 3))
        for k in range(3):
            for c in range(3):
                p[k, c] = verts[ids[k], c]
        # edges opposite each corner
        e = np.empty((3, 3))
        for c in range(3):
            e[0, c] = p[2, c] - p[1, c]
            e[1, c] = p[0, c] - p[2, c]
            e[2, c] = p[1, c] - p[0, c]
        cx = e[2, 1] * (-e[1, 2]) - e[2, 2] * (-e[1, 1])
        cy = e[2, 2] * (-e[1, 0]) - e[2, 0] * (-e[1, 2])
        cz = e[2, 0] * (-e[1, 1]) - e[2, 1] * (-e[1, 0])
        cr = math.sqrt(cx * cx + cy * cy + cz * cz)
        if cr == 0.0:
            n_bad += 1
            continue
        cot = np.empty(3)
        lsq = np.empty(3)
        for k in range(3):
            ka = (k + 1) % 3
            kb = (k + 2) % 3
            cot[k] = -(e[ka, 0] * e[kb, 0] + e[ka, 1] * e[kb, 1] + e[ka, 2] * e[kb, 2]) / cr
            lsq[k] = e[k, 0] * e[k, 0] + e[k, 1] * e[k, 1] + e[k, 2] * e[k, 2]
        for k in range(3):
            i = ids[(k + 1) % 3]
            j = ids[(k + 2) % 3]
            w = 0.5 * cot[k]
            for c in range(3):
                L[i, c] += w * e[k, c]
                L[j, c] -= w * e[k, c]
        tri_area = 0.5 * cr
        obtuse = cot[0] < 0.0 or cot[1] < 0.0 or cot[2] < 0.0
        for k in range(3):
            ka = (k + 1) % 3
            kb = (k + 2) % 3
            if obtuse:
                if cot[k] < 0.0:
                    area[ids[k]] += tri_area / 2.0
                else:
                    area[ids[k]] += tri_area / 4.0
            else:
                area[ids[k]] += (lsq[ka] * cot[ka] + lsq[kb] * cot[kb]) / 8.0
    return L, area, n_bad


# --------------------------------------------------------------------------
# crossings between two polylines that are graphs over r
# --------------------------------------------------------------------------

def _orient(px, py, qx, qy, rx, ry):
    return (qx - px) * (ry - py) - (qy - py) * (rx - px)


def count_crossings_py(ra, za, rb, zb, skip_shared_end=True):
    """Number of intersecting segment pairs between polylines A and B.

    Both polylines must have non-decreasing ``r``.  With ``skip_shared_end``
    the final segments, which meet at a common end point by construction,
    only count when they overlap collinearly.
    """
    na, nb = len(ra) - 1, len(rb) - 1
    if na < 1 or nb < 1:
        return 0
    a_lo, a_hi = ra[:-1], ra[1:]
    b_lo, b_hi = rb[:-1], rb[1:]
    j_start = np.searchsorted(b_hi, a_lo, side="left")
    j_stop = np.searchsorted(b_lo, a_hi, side="right")
    counts = np.maximum(j_stop - j_start, 0)
    ii = np.repeat(np.arange(na), counts)
    offs = np.arange(counts.sum()) - np.repeat(np.cumsum(counts) - counts, counts)
    jj = np.repeat(j_start, counts) + offs
    if ii.size == 0:
        return 0
    p1x, p1y, p2x, p2y = ra[ii], za[ii], ra[ii + 1], za[ii + 1]
    q1x, q1y, q2x, q2y = rb[jj], zb[jj], rb[jj + 1], zb[jj + 1]
    o1 = _orient(p1x, p1y, p2x, p2y, q1x, q1y)
    o2 = _orient(p1x, p1y, p2x, p2y, q2x, q2y)
    o3 = _orient(q1x, q1y, q2x, q2y, p1x, p1y)
    o4 = _orient(q1x, q1y, q2x, q2y, p2x, p2y)
    zover = (np.maximum(np.minimum(p1y, p2y), np.minimum(q1y, q2y))
             <= np.minimum(np.maximum(p1y, p2y), np.maximum(q1y, q2y)))
    collinear = (o1 == 0) & (o2 == 0)
    hit = np.where(collinear, zover, (o1 * o2 <= 0) & (o3 * o4 <= 0))
    if skip_shared_end:
        junction = (ii == na - 1) & (jj == nb - 1)
        hit &= ~junction | collinear
    return int(np.count_nonzero(hit))


def count_crossings_nb_impl(ra, za, rb, zb, skip_shared_end=True):
    na = ra.shape[0] - 1
    nb = rb.shape[0] - 1
    hits = 0
    j0 = 0
    for i in range(na):
        p1x, p1y, p2x, p2y = ra[i], za[i], ra[i + 1], za[i + 1]
        while j0 < nb and rb[j0 + 1] < p1x:
            j0 += 1
        j = j0
        while j < nb and rb[j] <= p2x:
            q1x, q1y, q2x, q2y = rb[j], zb[j], rb[j + 1], zb[j + 1]
            o1 = (p2x - p1x) * (q1y - p1y) - (p2y - p1y) * (q1x - p1x)
            o2 = (p2x - p1x) * (q2y - p1y) - (p2y - p1y) * (q2x - p1x)
            o3 = (q2x - q1x) * (p1y - q1y) - (q2y - q1y) * (p1x - q1x)
            o4 = (q2x - q1x) * (p2y - q1y) - (q2y - q1y) * (p2x - q1x)
            collinear = o1 == 0.0 and o2 == 0.0
            if collinear:
                hit = (max(min(p1y, p2y), min(q1y, q2y))
                       <= min(max(p1y, p2y), max(q1y, q2y)))
            else:
                hit = o1 * o2 <= 0.0 and o3 * o4 <= 0.0
                if skip_shared_end and i == na - 1 and j == nb - 1:
                    hit = False
            if hit:
                hits += 1
            j += 1
    return hits


rk4_until_nb = njit(rk4_until_py)
rk4_run_nb = njit(rk4_run_py)
cotan_laplacian_nb = njit(cotan_laplacian_nb_impl)
count_crossings_nb = njit(count_crossings_nb_impl)

if JIT_ENABLED:
    BACKEND = "numba"
    rk4_until = rk4_until_nb
    rk4_run = rk4_run_nb
    cotan_laplacian = cotan_laplacian_nb
    count_crossings = count_crossings_nb
else:
    BACKEND = "numpy"
    rk4_until = rk4_until_py
    rk4_run = rk4_run_py
    cotan_laplacian = cotan_laplacian_py
    count_crossings = count_crossings_py
