"""The regular tetrahedron in spherical space.

A regular tetrahedron of S^3 with face angle alpha has its four vertices on
the unit sphere of R^4 with pairwise dot product cos a, where a is the edge
length.  Every face lies on a great 2-sphere, so face geometry reduces to
spherical trigonometry on S^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import sphere_geom as sg
from .errors import DomainError, GeometryError, NotConstructible
from .euclid_dev import LABELS, GeodesicClass, edge_key

ALPHA_MIN = math.pi / 3
ALPHA_MAX = 2 * math.pi / 3


def check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not ALPHA_MIN < alpha < ALPHA_MAX:
        raise DomainError(f"face angle {alpha!r} outside (pi/3, 2pi/3)")
    return alpha


def cos_edge(alpha: float) -> float:
    c = math.cos(check_alpha(alpha))
    return c / (1.0 - c)


def excess(alpha: float) -> float:
    """1 - 2 cos(alpha) = 4 sin^2(alpha/2) - 1, written as a product to stay accurate near pi/3."""
    alpha = check_alpha(alpha)
    return 4.0 * math.sin((alpha - ALPHA_MIN) / 2.0) * math.sin((alpha + ALPHA_MIN) / 2.0)


def edge_length(alpha: float) -> float:
    """Edge length a(alpha) = arccos(cos(alpha) / (1 - cos(alpha)))."""
    # sin a = sqrt(1 - 2 cos alpha) / (1 - cos alpha); the common factor cancels in atan2
    return math.atan2(math.sqrt(excess(alpha)), math.cos(alpha))


@dataclass(frozen=True)
class TetraParams:
    alpha: float
    a: float

    @classmethod
    def from_alpha(cls, alpha: float) -> "TetraParams":
        return cls(check_alpha(alpha), edge_length(alpha))


@dataclass(frozen=True, eq=False)
class EmbeddedTetra:
    params: TetraParams
    vertices: dict  # label -> unit 4-vector

    def __getitem__(self, label: str) -> np.ndarray:
        return self.vertices[label]

    def face_angle(self, at: str, b: str, c: str) -> float:
        return sg.spherical_angle(self[at], self[b], self[c])


def embed(alpha: float) -> EmbeddedTetra:
    """Vertices A_i = s*e_i + t*(1,1,1,1) on the unit sphere of R^4.

    Solving |A_i| = 1 and A_i . A_j = cos a gives s = sqrt(1 - cos a) and
    t = (sqrt(1 + 3 cos a) - s) / 4; the centroid direction is fixed at
    (1,1,1,1)/2 and A1 lies in the plane spanned by e_1 and that direction.
    """
    params = TetraParams.from_alpha(alpha)
    c = cos_edge(alpha)
    s = math.sqrt(excess(alpha) / (1.0 - math.cos(alpha)))  # sqrt(1 - cos a)
    t = (math.sqrt(1.0 + 3.0 * c) - s) / 4.0
    ones = np.ones(4)
    verts = {}
    for i, label in enumerate(LABELS):
        e = np.zeros(4)
        e[i] = 1.0
        verts[label] = s * e + t * ones
    return EmbeddedTetra(params, verts)


def chord_edge_length(alpha: float) -> float:
    """Edge of the planar triangle through three vertices of a face (chordal plane)."""
    return math.sqrt(excess(alpha)) / math.sin(alpha / 2.0)


def length_01(alpha: float) -> float:
    """Closed form of the (0,1) geodesic length, 4 arccos(sin(3 alpha/2) / (2 sin(alpha/2))).

    Evaluated through arccos(x) = 2 arcsin(sqrt((1 - x) / 2)) with
    the argument equal to (1 + 2 cos alpha) / 2, so L = 8 arcsin(sqrt(1 - 2 cos alpha) / 2).
    """
    alpha = check_alpha(alpha)
    x = math.sin(1.5 * alpha) / (2.0 * math.sin(alpha / 2.0))
    if not -1.0 - 1e-12 <= x <= 1.0 + 1e-12:
        raise GeometryError("arccos argument out of range")
    return 8.0 * math.asin(math.sqrt(excess(alpha)) / 2.0)


@dataclass(frozen=True, eq=False)
class ClosedGeodesic:
    """Closed geodesic stored as one great arc per face traversal.

    ``points[k]`` is the k-th crossing with an edge; the arc from points[k] to
    points[k+1] (cyclically) lies in face ``faces[k]``.  Points live in R^4.
    """

    cls: GeodesicClass
    tetra: EmbeddedTetra
    points: tuple
    edges: tuple  # label pair of the edge carrying points[k]
    faces: tuple  # label triple of the face holding arc k
    midpoint_indices: tuple = (0, 1, 2, 3)

    @property
    def segments(self) -> list[tuple[np.ndarray, np.ndarray]]:
        pts = self.points
        return [(pts[k], pts[(k + 1) % len(pts)]) for k in range(len(pts))]

    @property
    def segment_lengths(self) -> list[float]:
        return [sg.arc_distance(a, b) for a, b in self.segments]

    @property
    def length(self) -> float:
        return float(sum(self.segment_lengths))

    @property
    def crossings(self) -> list[tuple[tuple[str, str], float]]:
        out = []
        for pt, (la, lb) in zip(self.points, self.edges):
            u, v = self.tetra[la], self.tetra[lb]
            out.append(((la, lb), sg.arc_distance(u, pt) / sg.arc_distance(u, v)))
        return out

    def angle_defects(self) -> list[float]:
        """Deviation from the equal-angle law at every crossing.

        With e the edge direction toward its second endpoint, a straight
        passage has angle(e, back) + angle(e, forward) = pi.
        """
        out = []
        n = len(self.points)
        for k in range(n):
            pt = self.points[k]
            prev_pt, next_pt = self.points[k - 1], self.points[(k + 1) % n]
            far = self.tetra[self.edges[k][1]]
            out.append(abs(sg.spherical_angle(pt, far, prev_pt)
                           + sg.spherical_angle(pt, far, next_pt) - math.pi))
        return out

    def edge_residuals(self) -> list[float]:
        """Distance of each crossing point from the great circle of its edge, plus
        how far the crossing parameter falls outside (0, 1)."""
        out = []
        for (la, lb), tau in self.crossings:
            out.append(max(0.0, -tau, tau - 1.0))
        return out

    def face_residuals(self) -> list[float]:
        """Largest component of each arc outside the 3-space of its face."""
        out = []
        for (a, b), face in zip(self.segments, self.faces):
            basis = np.stack([self.tetra[l] for l in face], axis=1)
            q, _ = np.linalg.qr(basis)
            for pt in (a, b, sg.unit(a + b)):
                out.append(float(np.linalg.norm(pt - q @ (q.T @ pt))))
        return out

    def midpoint_errors(self) -> list[float]:
        return [abs(self.crossings[i][1] - 0.5) for i in self.midpoint_indices]


def _face_containing(e1: tuple[str, str], e2: tuple[str, str]) -> tuple[str, ...]:
    labels = sorted(set(e1) | set(e2))
    if len(labels) != 3:
        raise GeometryError(f"edges {e1} and {e2} do not share a face")
    return tuple(labels)


def geodesic_01(alpha: float) -> ClosedGeodesic:
    """The (0,1) geodesic through midpoints of A1A4, A4A2, A3A2, A1A3."""
    tet = embed(alpha)
    edges = [edge_key("A1", "A4"), edge_key("A4", "A2"), edge_key("A3", "A2"), edge_key("A1", "A3")]
    pts = tuple(sg.midpoint(tet[a], tet[b]) for a, b in edges)
    faces = tuple(_face_containing(edges[k], edges[(k + 1) % 4]) for k in range(4))
    return ClosedGeodesic(GeodesicClass(0, 1), tet, pts, tuple(edges), faces, (0, 1, 2, 3))


def _foot_on_edge(tet: EmbeddedTetra, x: np.ndarray, edge: tuple[str, str]) -> tuple[np.ndarray, float]:
    # nearest point of the edge's great circle: normalized projection onto span(u, v)
    u, v = tet[edge[0]], tet[edge[1]]
    basis = np.stack([u, v], axis=1)
    coef, *_ = np.linalg.lstsq(basis, x, rcond=None)
    foot = sg.unit(basis @ coef)
    tau = sg.arc_distance(u, foot) / sg.arc_distance(u, v)
    if np.dot(sg.tangent_toward(u, v), foot - u) < 0:
        tau = -tau
    return foot, tau


def geodesic_11(alpha: float) -> ClosedGeodesic:
    """The (1,1) geodesic through the same four midpoints, built face pair by face pair.

    The arc from X1 (mid A1A4) to Y1 (mid A4A2) runs through faces A1A4A3 and
    A4A3A2 and meets A4A3 at a right angle, so its turning point is the foot
    of the perpendicular from X1 onto that edge.  The foot falls strictly
    inside the edge only while alpha < pi/2.
    """
    alpha = check_alpha(alpha)
    if alpha >= math.pi / 2:
        raise NotConstructible("type (1,1) geodesics exist only for alpha < pi/2")
    tet = embed(alpha)
    mids = [edge_key("A1", "A4"), edge_key("A4", "A2"), edge_key("A3", "A2"), edge_key("A1", "A3")]
    crossed = [edge_key("A4", "A3"), edge_key("A1", "A2"), edge_key("A3", "A4"), edge_key("A1", "A2")]
    pts, edges = [], []
    for k in range(4):
        x = sg.midpoint(tet[mids[k][0]], tet[mids[k][1]])
        y = sg.midpoint(tet[mids[(k + 1) % 4][0]], tet[mids[(k + 1) % 4][1]])
        foot, tau = _foot_on_edge(tet, x, crossed[k])
        foot_y, _ = _foot_on_edge(tet, y, crossed[k])
        if not 0.0 < tau < 1.0 or np.linalg.norm(foot - foot_y) > 1e-9:
            raise NotConstructible(f"perpendicular foot leaves edge {crossed[k]} (tau={tau})")
        pts += [x, foot]
        edges += [mids[k], crossed[k]]
    faces = tuple(_face_containing(edges[k], edges[(k + 1) % 8]) for k in range(8))
    return ClosedGeodesic(GeodesicClass(1, 1), tet, tuple(pts), tuple(edges), faces, (0, 2, 4, 6))
