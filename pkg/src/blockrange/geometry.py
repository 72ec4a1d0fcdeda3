"""Planar convex geometry on points represented as complex numbers.

Monotone-chain hulls, point/hull distance, rotating-calipers width and
diameter, and intersection of angle-sorted supporting half-planes. These
back the inner/outer approximations of the numerical range.
"""

from __future__ import annotations

import numpy as np

COLLINEAR_RTOL = 1e-12


def _cross(a: complex, b: complex) -> float:
    return a.real * b.imag - a.imag * b.real


def convex_hull(points: np.ndarray, tol: float | None = None) -> np.ndarray:
    """Counter-clockwise convex hull of complex points (monotone chain).

    Degenerate inputs collapse to a single point or a 2-point segment.
    """
    pts = np.asarray(points, dtype=complex).ravel()
    if pts.size == 0:
        raise ValueError("convex hull of empty point set")
    scale = float(np.max(np.abs(pts))) + 1.0
    if tol is None:
        tol = COLLINEAR_RTOL * scale
    # Sort lexicographically by (x, y) and drop near-duplicates.
    order = np.lexsort((pts.imag, pts.real))
    pts = pts[order]
    keep = [pts[0]]
    for p in pts[1:]:
        if abs(p - keep[-1]) > tol:
            keep.append(p)
    pts = keep
    if len(pts) == 1:
        return np.array(pts, dtype=complex)
    if len(pts) == 2:
        return np.array(pts, dtype=complex)

    def half(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and _cross(out[-1] - out[-2], p - out[-2]) <= tol:
                out.pop()
            out.append(p)
        return out

    lower = half(pts)
    upper = half(pts[::-1])
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:  # all points collinear
        return np.array([pts[0], pts[-1]], dtype=complex)
    return np.array(hull, dtype=complex)


def point_in_hull_strict(z: complex, hull: np.ndarray, tol: float = 0.0) -> bool:
    """True iff z is strictly inside a CCW hull (needs >= 3 vertices)."""
    h = len(hull)
    if h < 3:
        return False
    for i in range(h):
        a, b = hull[i], hull[(i + 1) % h]
        if _cross(b - a, z - a) <= tol:
            return False
    return True


def _dist_point_segment(z: complex, a: complex, b: complex) -> float:
    ab = b - a
    den = abs(ab) ** 2
    if den == 0.0:
        return abs(z - a)
    t = ((z - a).real * ab.real + (z - a).imag * ab.imag) / den
    t = min(1.0, max(0.0, t))
    return abs(z - (a + t * ab))


def dist_point_hull(z: complex, hull: np.ndarray) -> float:
    """Euclidean distance from z to a convex hull (0 if inside)."""
    h = len(hull)
    if h == 1:
        return abs(z - hull[0])
    if h == 2:
        return _dist_point_segment(z, hull[0], hull[1])
    if point_in_hull_strict(z, hull):
        return 0.0
    return min(
        _dist_point_segment(z, hull[i], hull[(i + 1) % h]) for i in range(h)
    )


def hull_width(hull: np.ndarray) -> float:
    """Minimal breadth of a convex polygon (rotating calipers).

    Segments and points have width 0. Ties resolve toward the smaller
    width, which is the conservative side for an inner approximation.
    """
    h = len(hull)
    if h <= 2:
        return 0.0
    pts = np.asarray(hull, dtype=complex)
    best = np.inf
    for i in range(h):
        a = pts[i]
        e = pts[(i + 1) % h] - a
        length = abs(e)
        if length <= 0.0:
            continue
        d = np.abs((pts - a).real * e.imag - (pts - a).imag * e.real) / length
        best = min(best, float(np.max(d)))
    return best


def hull_diameter(hull: np.ndarray) -> float:
    """Maximal vertex-to-vertex distance of a convex polygon."""
    pts = np.asarray(hull, dtype=complex)
    h = len(pts)
    if h == 1:
        return 0.0
    best = 0.0
    for i in range(h - 1):
        best = max(best, float(np.max(np.abs(pts[i + 1:] - pts[i]))))
    return best


def _line_intersection(theta_a, f_a, theta_b, f_b) -> complex:
    """Intersection of Re(e^{-i theta} z) = f for two boundary lines."""
    det = np.sin(theta_b - theta_a)
    x = (f_a * np.sin(theta_b) - f_b * np.sin(theta_a)) / det
    y = (f_b * np.cos(theta_a) - f_a * np.cos(theta_b)) / det
    return complex(x, y)


def halfplane_intersection(
    angles: np.ndarray, values: np.ndarray
) -> np.ndarray | None:
    """Vertices of the intersection of half-planes Re(e^{-i theta} z) <= f.

    Angles must be strictly increasing over one period (normals sorted by
    direction), which makes the classic deque sweep applicable. Returns the
    vertex list, or None when the region degenerates below a polygon (the
    caller falls back to support-cone bounds).
    """
    angles = np.asarray(angles, dtype=float)
    values = np.asarray(values, dtype=float)
    m = len(angles)
    if m < 3:
        return None
    scale = float(np.max(np.abs(values))) + 1.0
    tol = COLLINEAR_RTOL * scale

    def violates(idx_a, idx_b, idx_c) -> bool:
        # Does the corner of a and b lie outside half-plane c?
        p = _line_intersection(
            angles[idx_a], values[idx_a], angles[idx_b], values[idx_b]
        )
        lhs = p.real * np.cos(angles[idx_c]) + p.imag * np.sin(angles[idx_c])
        return lhs > values[idx_c] + tol

    dq: list[int] = []
    for i in range(m):
        while len(dq) >= 2 and violates(dq[-2], dq[-1], i):
            dq.pop()
        while len(dq) >= 2 and violates(dq[0], dq[1], i):
            dq.pop(0)
        dq.append(i)
    while len(dq) >= 3 and violates(dq[-2], dq[-1], dq[0]):
        dq.pop()
    while len(dq) >= 3 and violates(dq[0], dq[1], dq[-1]):
        dq.pop(0)
    if len(dq) < 3:
        return None
    verts = [
        _line_intersection(
            angles[dq[i]],
            values[dq[i]],
            angles[dq[(i + 1) % len(dq)]],
            values[dq[(i + 1) % len(dq)]],
        )
        for i in range(len(dq))
    ]
    out = np.array(verts, dtype=complex)
    if not np.all(np.isfinite(out)):
        return None
    # Sanity screen: every vertex must respect every half-plane. A blow-up
    # here means a degenerate (near-empty) region; signal the fallback path.
    cs, sn = np.cos(angles), np.sin(angles)
    slack_tol = 1e-6 * scale
    for start in range(0, len(out), 256):
        chunk = out[start:start + 256]
        lhs = np.outer(chunk.real, cs) + np.outer(chunk.imag, sn)
        if np.any(lhs > values + slack_tol):
            return None
    return out
