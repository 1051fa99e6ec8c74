"""Primitives on the unit sphere.

Points are plain numpy arrays of unit length.  Most functions are written with
dot products and norms only, so they work for points on S^2 (3-vectors) and on
S^3 (4-vectors) alike; `rotate_about_axis`, `triangle_on_edge`, the arc pole
and the gnomonic projection are specific to S^2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import GeometryError, HemisphereError

# tolerance hierarchy
CONSTRUCTION_TOL = 1e-12
PREDICATE_TOL = 1e-10
SIDE_DEADBAND = 1e-12


def unit(v) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    n = np.linalg.norm(v)
    if n == 0.0:
        raise GeometryError("cannot normalize the zero vector")
    return v / n


def point_from_angles(phi: float, theta: float) -> np.ndarray:
    """Point of the unit sphere at polar angle `phi` measured from the south pole.

    The south pole (0, 0, -1) corresponds to ``phi = 0``; this matches the
    parametrization x = sin(phi) cos(theta), y = sin(phi) sin(theta),
    z = -cos(phi) used for the tangent-plane estimates.
    """
    s = np.sin(phi)
    return np.array([s * np.cos(theta), s * np.sin(theta), -np.cos(phi)])


def arc_distance(p, q) -> float:
    """Great-circle distance in [0, pi].

    Uses 2*atan2(|p - q|, |p + q|), which is well conditioned near 0 and pi
    and valid in any dimension.
    """
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    return float(2.0 * np.arctan2(np.linalg.norm(p - q), np.linalg.norm(p + q)))


def _angle_between(u, v) -> float:
    u = unit(u)
    v = unit(v)
    return float(2.0 * np.arctan2(np.linalg.norm(u - v), np.linalg.norm(u + v)))


def tangent_toward(at, b) -> np.ndarray:
    """Unit tangent at `at` pointing along the great arc toward `b`."""
    at = np.asarray(at, dtype=float)
    b = np.asarray(b, dtype=float)
    t = b - np.dot(b, at) * at
    n = np.linalg.norm(t)
    if n < CONSTRUCTION_TOL:
        raise GeometryError("direction undefined: points coincide or are antipodal")
    return t / n


def spherical_angle(at, a, b) -> float:
    """Interior angle at vertex `at` of the spherical triangle (at, a, b)."""
    return _angle_between(tangent_toward(at, a), tangent_toward(at, b))


def rotate_about_axis(p, axis, angle: float) -> np.ndarray:
    """Rodrigues rotation of `p` about the unit vector `axis`."""
    p = np.asarray(p, dtype=float)
    k = np.asarray(axis, dtype=float)
    c, s = np.cos(angle), np.sin(angle)
    return p * c + np.cross(k, p) * s + k * np.dot(k, p) * (1.0 - c)


def reflect_across(p, pole) -> np.ndarray:
    """Mirror `p` in the plane of the great circle with unit normal `pole`."""
    p = np.asarray(p, dtype=float)
    return p - 2.0 * np.dot(p, pole) * np.asarray(pole, dtype=float)


def midpoint(p, q) -> np.ndarray:
    return unit(np.asarray(p, dtype=float) + np.asarray(q, dtype=float))


def edge_point(u, v, tau: float) -> np.ndarray:
    """Point at fraction `tau` of the arc length along the great arc u -> v."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    d = arc_distance(u, v)
    s = np.sin(d)
    return (np.sin((1.0 - tau) * d) * u + np.sin(tau * d) * v) / s


def circle_crossing(u, v, pole) -> float:
    """Fraction along the arc u -> v where it meets the great circle with `pole`.

    The value lies in (0, 1) exactly when the arc crosses the circle; outside
    values locate the crossing on the extension of the arc, which is how the
    caller learns by how much a vertex was missed.  Returns nan when the edge
    lies in the circle.
    """
    fu = float(np.dot(pole, u))
    fv = float(np.dot(pole, v))
    d = arc_distance(u, v)
    # zero of sin(d - x) fu + sin(x) fv, taken in (-pi/2, pi/2] + k pi nearest the arc
    num = np.sin(d) * fu
    den = np.cos(d) * fu - fv
    if num == 0.0 and den == 0.0:
        return float("nan")
    x = np.arctan(num / den) if den != 0.0 else np.pi / 2
    # pick the branch closest to the middle of the arc
    cands = [x - np.pi, x, x + np.pi]
    x = min(cands, key=lambda c: abs(c - d / 2))
    return float(x / d)


@dataclass(frozen=True, eq=False)
class GreatArc:
    """Shorter great arc between two non-antipodal points of S^2."""

    start: np.ndarray
    end: np.ndarray

    def __post_init__(self):
        if arc_distance(self.start, self.end) < CONSTRUCTION_TOL:
            raise GeometryError("degenerate arc: endpoints coincide")
        if np.linalg.norm(np.asarray(self.start) + np.asarray(self.end)) < CONSTRUCTION_TOL:
            raise GeometryError("degenerate arc: endpoints antipodal")

    @property
    def pole(self) -> np.ndarray:
        return unit(np.cross(self.start, self.end))

    @property
    def length(self) -> float:
        return arc_distance(self.start, self.end)


def side_of_pole(p, pole, deadband: float = SIDE_DEADBAND) -> int:
    """+1, -1 or 0 ("on") according to the sign of dot(p, pole)."""
    d = float(np.dot(p, pole))
    if abs(d) < deadband:
        return 0
    return 1 if d > 0 else -1


def triangle_on_edge(e_start, e_end, side: float, orientation: str = "left") -> np.ndarray:
    """Apex of the regular spherical triangle with side `side` erected on an edge.

    "left" puts the apex on the positive side of ``e_start x e_end``, i.e. the
    triangle (e_start, e_end, apex) is counter-clockwise seen from outside.
    """
    u = np.asarray(e_start, dtype=float)
    v = np.asarray(e_end, dtype=float)
    if orientation not in ("left", "right"):
        raise ValueError(f"orientation must be 'left' or 'right', got {orientation!r}")
    if abs(arc_distance(u, v) - side) > 1e-9:
        raise GeometryError("edge length does not match the requested side")
    m = unit(u + v)
    n = unit(np.cross(u, v))
    x = np.cos(side) / np.cos(side / 2)
    # 1 - x^2 = sin(3s/2) sin(s/2) / cos^2(s/2), free of cancellation for small sides
    w = np.sin(1.5 * side) * np.sin(side / 2)
    if w < 0.0:
        raise GeometryError(f"no regular triangle with side {side} on the sphere")
    y = np.sqrt(w) / np.cos(side / 2)
    if orientation == "right":
        y = -y
    return x * m + y * n


def gnomonic_frame(center, toward=None) -> tuple[np.ndarray, np.ndarray]:
    """Orthonormal tangent basis (e_u, e_v) at `center`.

    e_u points toward `toward` when given (else toward +x, falling back to +y),
    and e_u x e_v = center, so planar pictures appear as seen from outside.
    """
    c = unit(center)
    if toward is not None:
        e_u = tangent_toward(c, toward)
    else:
        ref = np.array([1.0, 0.0, 0.0])
        if abs(np.dot(ref, c)) > 0.9:
            ref = np.array([0.0, 1.0, 0.0])
        e_u = unit(ref - np.dot(ref, c) * c)
    e_v = np.cross(c, e_u)
    return e_u, e_v


def gnomonic_project(p, tangent_at, frame=None) -> np.ndarray:
    """Central projection of `p` onto the plane tangent at `tangent_at`.

    Returns planar coordinates (u, v) in the basis from `gnomonic_frame`.
    Great arcs map to straight segments.
    """
    p = np.asarray(p, dtype=float)
    c = unit(tangent_at)
    d = float(np.dot(p, c))
    if d <= PREDICATE_TOL:
        raise HemisphereError("point outside open hemisphere of the tangent point")
    e_u, e_v = frame if frame is not None else gnomonic_frame(c)
    return np.array([np.dot(p, e_u) / d, np.dot(p, e_v) / d])
