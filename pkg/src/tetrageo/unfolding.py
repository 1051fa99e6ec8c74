"""Spherical development of the face strip met by a type (p, q) geodesic.

The faces crossed by the Euclidean midpoint segment are laid out in the same
order on the unit sphere S^2 as regular spherical triangles of side a(alpha).
The geodesic exists exactly when the great circle through the first two
edge midpoints runs through the whole strip, crossing every glued edge in
its interior, and closes up on the translated copy of the starting edge.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import sphere_geom as sg
from .errors import GeometryError, HemisphereError
from .euclid_dev import CrossingSequence, GeodesicClass, crossing_sequence, lattice_direction, vertex_label
from .tetra_model import ClosedGeodesic, edge_length, embed

DEADBAND = sg.PREDICATE_TOL
CLOSURE_TOL = 1e-9

Lattice = tuple[int, int]


@lru_cache(maxsize=256)
def _sequence(cls: GeodesicClass) -> CrossingSequence:
    return crossing_sequence(cls)


def hemisphere_ok(alpha: float, cls: GeodesicClass) -> bool:
    """Sufficient condition a(alpha) (p + q) < pi/2 for the strip to fit in a hemisphere."""
    return edge_length(alpha) * cls.total < math.pi / 2


@dataclass(frozen=True, eq=False)
class Development:
    alpha: float
    cls: GeodesicClass
    a: float
    points: dict  # lattice vertex -> point of S^2
    triangles: tuple  # per face: lattice vertex triple
    glued_edges: tuple  # (i, i + 1, label pair) for each interior edge
    sequence: CrossingSequence
    closing: tuple  # lattice vertex triple of the translated first face
    in_hemisphere: bool

    def __len__(self):
        return len(self.triangles)

    def triangle_points(self, i: int) -> tuple[np.ndarray, ...]:
        return tuple(self.points[v] for v in self.triangles[i])

    def triangle_labels(self, i: int) -> tuple[str, ...]:
        return tuple(vertex_label(*v) for v in self.triangles[i])

    @property
    def boundary(self) -> list[tuple[sg.GreatArc, tuple[str, str]]]:
        """Unglued triangle edges, in face order; includes the first and last edges."""
        glued = set()
        for c in self.sequence.crossings[1:]:
            glued.add(frozenset(c.ends))
        out = []
        for tri in self.triangles:
            for k in range(3):
                u, v = tri[k], tri[(k + 1) % 3]
                if frozenset((u, v)) in glued:
                    continue
                out.append((sg.GreatArc(self.points[u], self.points[v]), (vertex_label(*u), vertex_label(*v))))
        return out

    def edge_points(self, k: int) -> tuple[np.ndarray, np.ndarray]:
        """Endpoints of the k-th crossed edge, ordered by label; k = len(self) is the closing edge."""
        if k == len(self.triangles):
            u, v = self.sequence[0].ends
            dm, dn = lattice_direction(self.cls)
            return self.points[(u[0] + dm, u[1] + dn)], self.points[(v[0] + dm, v[1] + dn)]
        u, v = self.sequence[k].ends
        return self.points[u], self.points[v]

    def gluing_isometry(self) -> np.ndarray:
        """Rotation of S^2 carrying the translated first face back onto the first face."""
        src = triangle_frame([self.points[v] for v in self.closing])
        dst = triangle_frame([self.points[v] for v in self.triangles[0]])
        return dst @ src.T


def triangle_frame(pts) -> np.ndarray:
    """Orthonormal columns spanning the triangle's vertices, built from (p0, p1 - p0, p2 - p0).

    Edge differences keep their relative accuracy for tiny triangles, where the
    vertex matrix itself is nearly singular.  Two congruent triangles get frames
    related by the isometry matching their vertices.
    """
    p0, p1, p2 = (np.asarray(p, dtype=float) for p in pts)
    q, r = np.linalg.qr(np.stack([p0, p1 - p0, p2 - p0], axis=1))
    return q * np.sign(np.diag(r))


def _reflect_apex(points: dict, prev: tuple, new_face: tuple) -> np.ndarray:
    shared = [v for v in new_face if v in prev]
    old = [v for v in prev if v not in new_face]
    if len(shared) != 2 or len(old) != 1:
        raise GeometryError("consecutive faces do not share exactly one edge")
    pole = sg.unit(np.cross(points[shared[0]], points[shared[1]]))
    return sg.reflect_across(points[old[0]], pole)


def unfold(alpha: float, cls: GeodesicClass, strict: bool = False) -> Development:
    """Lay the strip of 4(p + q) faces on S^2.

    The first face is (0,0), (1,0), (0,1) with its A1A2 edge centred on the
    south pole along the x axis.  Each later face is the mirror image of its
    predecessor in their shared edge, so shared vertices are the same array.
    With ``strict`` the hemisphere condition is enforced.
    """
    a = edge_length(alpha)
    inside = a * cls.total < math.pi / 2
    if strict and not inside:
        raise HemisphereError("development exits hemisphere: a(alpha)(p + q) >= pi/2")
    seq = _sequence(cls)
    h = a / 2.0
    points: dict[Lattice, np.ndarray] = {
        (0, 0): np.array([-math.sin(h), 0.0, -math.cos(h)]),
        (1, 0): np.array([math.sin(h), 0.0, -math.cos(h)]),
    }
    points[(0, 1)] = sg.triangle_on_edge(points[(0, 0)], points[(1, 0)], a, "left")
    faces = list(seq.faces)
    if faces[0] != ((0, 0), (1, 0), (0, 1)):
        raise GeometryError("unexpected first face")

    dm, dn = lattice_direction(cls)
    closing = tuple((m + dm, n + dn) for m, n in faces[0])
    # the closing face is the next one in the strip
    chain = faces + [closing]
    for prev, face in zip(chain[:-1], chain[1:]):
        new = [v for v in face if v not in prev]
        if len(new) != 1:
            raise GeometryError("consecutive faces do not share exactly one edge")
        if new[0] in points:
            raise GeometryError(f"lattice vertex {new[0]} revisited out of order")
        points[new[0]] = _reflect_apex(points, prev, face)

    glued = tuple((k - 1, k, seq[k].edge) for k in range(1, len(seq)))
    return Development(alpha, cls, a, points, tuple(faces), glued, seq, closing, inside)


def part_symmetry_error(dev: Development) -> float:
    """Largest mismatch of the half-turns relating the four quarter strips.

    The half-turn about the midpoint of the edge shared by parts k and k+1
    should carry part k onto part k+1 with the face order reversed.
    """
    n = dev.cls.total
    worst = 0.0
    for k in range(3):
        u, v = dev.edge_points((k + 1) * n)
        m = sg.midpoint(u, v)
        for j in range(n):
            src = dev.triangle_points(k * n + j)
            dst = dev.triangle_points((k + 2) * n - 1 - j)
            for p in src:
                img = 2.0 * np.dot(p, m) * m - p
                worst = max(worst, min(float(np.linalg.norm(img - d)) for d in dst))
    return worst


@dataclass(frozen=True, eq=False)
class Trace:
    """Great circle followed through the strip from a start point."""

    params: list  # crossing parameter on each edge, index 0 is the start
    points: list
    steps: list  # forward arc between consecutive crossings
    failed_at: int | None = None
    marginal: bool = False


def trace(dev: Development, start: np.ndarray, pole: np.ndarray, start_param: float = 0.5) -> Trace:
    """Follow the great circle with ``pole`` from ``start`` across edges 1 .. 4(p+q).

    Stops at the first edge met outside its open interior or reached by a
    non-forward step.
    """
    params, pts, steps = [start_param], [start], []
    prev = start
    for k in range(1, len(dev) + 1):
        u, v = dev.edge_points(k)
        tau = sg.circle_crossing(u, v, pole)
        if not math.isfinite(tau):
            return Trace(params, pts, steps, k)
        c = sg.edge_point(u, v, tau)
        step = math.atan2(float(np.dot(np.cross(prev, c), pole)), float(np.dot(prev, c)))
        params.append(tau)
        pts.append(c)
        steps.append(step)
        if not 0.0 < step < math.pi:
            return Trace(params, pts, steps, k)
        if not DEADBAND < tau < 1.0 - DEADBAND:
            return Trace(params, pts, steps, k, marginal=-DEADBAND <= tau <= 1.0 + DEADBAND)
        prev = c
    return Trace(params, pts, steps)


def _point_arc_distance(p, a, b, pole, step) -> float:
    d = float(np.dot(p, pole))
    foot = p - d * pole
    if np.linalg.norm(foot) > sg.CONSTRUCTION_TOL:
        foot = foot / np.linalg.norm(foot)
        ang = math.atan2(float(np.dot(np.cross(a, foot), pole)), float(np.dot(a, foot)))
        if 0.0 <= ang <= step:
            return math.asin(min(1.0, abs(d)))
    return min(sg.arc_distance(p, a), sg.arc_distance(p, b))


@dataclass(frozen=True, eq=False)
class GeodesicResult:
    status: str  # "yes", "no" or "marginal"
    length: float | None
    crossings: list  # (edge label pair, parameter)
    min_vertex_clearance: float
    witness_violation: tuple | None = None  # (vertex label, signed clearance)
    closure_error: float | None = None
    in_hemisphere: bool = True
    reason: str = ""
    pole: np.ndarray | None = field(default=None, repr=False)
    points: list = field(default_factory=list, repr=False)

    @property
    def exists(self) -> bool:
        return self.status == "yes"


def _chord_pole(dev: Development) -> tuple[np.ndarray, np.ndarray]:
    n = dev.cls.total
    x1 = sg.midpoint(*dev.edge_points(0))
    y1 = sg.midpoint(*dev.edge_points(n))
    return x1, sg.unit(np.cross(x1, y1))


def closure_error(dev: Development, end: np.ndarray, pole: np.ndarray, start: np.ndarray) -> float:
    """Mismatch in position and direction after mapping the end back by the gluing rotation."""
    g = dev.gluing_isometry()
    return max(float(np.linalg.norm(g @ end - start)), float(np.linalg.norm(g @ pole - pole)))


def chord_test(dev: Development, cls: GeodesicClass | None = None) -> GeodesicResult:
    """Decide whether the midpoint chord X1 -> X1' stays inside the development."""
    if cls is not None and cls != dev.cls:
        raise ValueError("class does not match the development")
    seq = dev.sequence
    x1, pole = _chord_pole(dev)
    tr = trace(dev, x1, pole)
    # the closing crossing repeats the first one and is covered by the closure check
    crossings = list(zip((c.edge for c in seq.crossings), tr.params[: len(dev)]))

    if tr.failed_at is not None:
        k = tr.failed_at
        u, v = dev.edge_points(k)
        tau = tr.params[k] if k < len(tr.params) else float("nan")
        # the endpoint on the wrong side of the circle is the witness
        ends = dev.sequence[0].ends if k == len(dev) else seq[k].ends
        near, lat = (u, ends[0]) if tau < 0.5 else (v, ends[1])
        depth = math.asin(min(1.0, abs(float(np.dot(near, pole)))))
        signed = depth if 0.0 < tau < 1.0 else -depth
        status = "marginal" if tr.marginal else "no"
        return GeodesicResult(status, None, crossings, signed, (vertex_label(*lat), signed),
                              None, dev.in_hemisphere, f"chord leaves the strip at crossing {k}", pole, tr.points)

    clearance = math.inf
    for i, tri in enumerate(dev.triangles):
        a, b = tr.points[i], tr.points[i + 1]
        for lat in tri:
            clearance = min(clearance, _point_arc_distance(dev.points[lat], a, b, pole, tr.steps[i]))
    err = closure_error(dev, tr.points[-1], pole, x1)
    length = float(sum(tr.steps))
    if err > CLOSURE_TOL:
        return GeodesicResult("no", None, crossings, clearance, None, err, dev.in_hemisphere,
                              "chord does not close up", pole, tr.points)
    return GeodesicResult("yes", length, crossings, clearance, None, err, dev.in_hemisphere, "", pole, tr.points)


def check_midpoint_symmetry(result: GeodesicResult, cls: GeodesicClass, tol: float = 1e-9) -> bool:
    if not result.exists:
        return False
    n = cls.total
    return all(abs(result.crossings[i][1] - 0.5) <= tol for i in (0, n, 2 * n, 3 * n))


def perturbed_closure(dev: Development, d_start: float, d_end: float) -> float | None:
    """Closure mismatch of the chord joining parameter 1/2 + d_start on the first
    edge to 1/2 + d_end on the closing edge, or None if it leaves the strip."""
    x1, pole0 = _chord_pole(dev)
    s = sg.edge_point(*dev.edge_points(0), 0.5 + d_start)
    e = sg.edge_point(*dev.edge_points(len(dev)), 0.5 + d_end)
    pole = sg.unit(np.cross(s, e))
    if np.dot(pole, pole0) < 0:
        pole = -pole
    tr = trace(dev, s, pole, 0.5 + d_start)
    if tr.failed_at is not None:
        return None
    return closure_error(dev, tr.points[-1], pole, s)


def geodesic_from_unfolding(alpha: float, cls: GeodesicClass) -> ClosedGeodesic:
    """Fold the chord back onto the tetrahedron embedded in S^3."""
    dev = unfold(alpha, cls)
    res = chord_test(dev)
    if not res.exists:
        raise GeometryError(f"no geodesic of class {cls} at alpha={alpha}: {res.reason or res.status}")
    tet = embed(alpha)
    seq = dev.sequence
    pts, faces = [], []
    for k in range(len(dev)):
        labels = dev.triangle_labels(k)
        # linear isometry taking the development triangle onto the embedded face
        fold = triangle_frame([tet[l] for l in labels]) @ triangle_frame(dev.triangle_points(k)).T
        pts.append(sg.unit(fold @ res.points[k]))
        faces.append(tuple(sorted(labels)))
    edges = tuple(c.edge for c in seq.crossings)
    n = cls.total
    return ClosedGeodesic(cls, tet, tuple(pts), edges, tuple(faces), (0, n, 2 * n, 3 * n))
