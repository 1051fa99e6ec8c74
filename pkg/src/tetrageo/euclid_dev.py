"""Closed geodesics on the unit-edge regular tetrahedron in Euclidean space.

The plane is tiled by unit equilateral triangles.  A lattice vertex
``m*e1 + n*e2`` with e1 = (1, 0), e2 = (1/2, sqrt(3)/2) carries the label
``A[1 + (m % 2) + 2 * (n % 2)]``; this labelling is the development obtained by
rolling the tetrahedron over the plane.  Rows n even hold A1/A2 at (l, k*sqrt3),
rows n odd hold A3/A4 at (l + 1/2, k*sqrt3 + sqrt3/2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import DomainError, VertexHit

SQRT3 = math.sqrt(3.0)
LABELS = ("A1", "A2", "A3", "A4")


@dataclass(frozen=True, order=True)
class GeodesicClass:
    """Coprime pair (p, q), 0 <= p <= q, indexing a geodesic type."""

    p: int
    q: int

    def __post_init__(self):
        if not (isinstance(self.p, int) and isinstance(self.q, int)):
            raise DomainError("p and q must be integers")
        if self.p < 0 or self.q < 1:
            raise DomainError(f"need p >= 0 and q >= 1, got ({self.p}, {self.q})")
        if self.p > self.q:
            raise DomainError(f"canonical order requires p <= q, got ({self.p}, {self.q})")
        if math.gcd(self.p, self.q) != 1:
            raise DomainError(f"({self.p}, {self.q}) is not a coprime pair")

    @property
    def total(self) -> int:
        return self.p + self.q

    @property
    def norm2(self) -> int:
        return self.p * self.p + self.p * self.q + self.q * self.q

    def __str__(self):
        return f"({self.p},{self.q})"


def coprime_classes(max_sum: int) -> list[GeodesicClass]:
    """All classes with p + q <= max_sum, sorted by (p + q, p)."""
    out = []
    for s in range(1, max_sum + 1):
        for p in range(0, s // 2 + 1):
            q = s - p
            if p <= q and math.gcd(p, q) == 1:
                out.append(GeodesicClass(p, q))
    return out


def vertex_label(m: int, n: int) -> str:
    return LABELS[(m % 2) + 2 * (n % 2)]


def edge_key(a: str, b: str) -> tuple[str, str]:
    return (a, b) if a < b else (b, a)


def lattice_point(m, n) -> np.ndarray:
    """Cartesian coordinates of the lattice vertex m*e1 + n*e2."""
    return np.array([float(m) + float(n) / 2.0, float(n) * SQRT3 / 2.0])


def lattice_vertex(k: int, l: int, kind: str) -> np.ndarray:
    if kind == "A12":
        return np.array([float(l), k * SQRT3])
    if kind == "A34":
        return np.array([l + 0.5, k * SQRT3 + SQRT3 / 2.0])
    raise ValueError(f"kind must be 'A12' or 'A34', got {kind!r}")


def _hits_vertex(start: np.ndarray, end: np.ndarray, tol: float = 1e-12) -> bool:
    n_lo = math.floor(min(start[1], end[1]) * 2.0 / SQRT3) - 1
    n_hi = math.ceil(max(start[1], end[1]) * 2.0 / SQRT3) + 1
    x_lo = math.floor(min(start[0], end[0])) - 2
    x_hi = math.ceil(max(start[0], end[0])) + 2
    for n in range(n_lo, n_hi + 1):
        for m in range(x_lo - n // 2 - 1, x_hi - n // 2 + 2):
            if _point_segment_distance(lattice_point(m, n), start, end) < tol:
                return True
    return False


def geodesic_segment(cls: GeodesicClass, mu: float) -> tuple[np.ndarray, np.ndarray]:
    """Segment X X' from (mu, 0) to (mu + q + 2p, q sqrt3).

    Raises VertexHit when the segment passes through a lattice vertex.  This
    happens for mu = 1/2 whenever q is even (the quarter point lands on a
    vertex); `midpoint_segment` handles that case by starting on the other
    pair of edges.
    """
    if not 0.0 < mu < 1.0:
        raise DomainError("mu must lie in (0, 1)")
    start = np.array([mu, 0.0])
    end = np.array([mu + cls.q + 2 * cls.p, cls.q * SQRT3])
    if _hits_vertex(start, end):
        raise VertexHit(f"segment of class {cls} with mu={mu} hits a lattice vertex")
    return start, end


def lattice_direction(cls: GeodesicClass) -> tuple[int, int]:
    """Lattice displacement (dm, dn) of the closing translation for the midpoint geodesic.

    The horizontal edge pair is crossed dn/2 times per edge; it must be odd
    for the midpoint segment to avoid vertices, so (p, q) swap roles when q is
    even.  The multiset of per-edge counts {p, q, p + q} is unchanged.
    """
    if cls.q % 2 == 1:
        return 2 * cls.p, 2 * cls.q
    return 2 * cls.q, 2 * cls.p


def midpoint_segment(cls: GeodesicClass) -> tuple[np.ndarray, np.ndarray]:
    dm, dn = lattice_direction(cls)
    start = np.array([0.5, 0.0])
    return start, start + lattice_point(dm, dn)


@dataclass(frozen=True)
class EdgeCrossing:
    edge: tuple[str, str]
    parameter: float
    face_index: int
    t: Fraction = field(compare=False)
    ends: tuple[tuple[int, int], tuple[int, int]] = field(compare=False)

    @property
    def point(self) -> np.ndarray:
        a, b = (lattice_point(*e) for e in self.ends)
        return a + self.parameter * (b - a)


@dataclass(frozen=True)
class CrossingSequence:
    cls: GeodesicClass
    crossings: tuple[EdgeCrossing, ...]
    faces: tuple[tuple[tuple[int, int], ...], ...]

    def __len__(self):
        return len(self.crossings)

    def __iter__(self):
        return iter(self.crossings)

    def __getitem__(self, i):
        return self.crossings[i]

    def edge_counts(self) -> dict[tuple[str, str], int]:
        counts: dict[tuple[str, str], int] = {}
        for c in self.crossings:
            counts[c.edge] = counts.get(c.edge, 0) + 1
        return counts

    def quarter_indices(self) -> tuple[int, int, int, int]:
        """Indices of the crossings through edge midpoints (X1, Y1, X2, Y2)."""
        k = self.cls.total
        return 0, k, 2 * k, 3 * k


def _frac_floor(x: Fraction) -> int:
    return math.floor(x)


def _face_at(m: Fraction, n: Fraction) -> tuple[tuple[int, int], ...]:
    i, j = _frac_floor(m), _frac_floor(n)
    fm, fn = m - i, n - j
    if fm + fn < 1:
        return ((i, j), (i + 1, j), (i, j + 1))
    return ((i + 1, j), (i, j + 1), (i + 1, j + 1))


def crossing_sequence(cls: GeodesicClass) -> CrossingSequence:
    """Edges crossed by the midpoint segment, in order, starting with X itself.

    Positions are computed in exact rational arithmetic, so a vertex hit is a
    tie between two line families and crossing parameters at midpoints are
    exactly 1/2.
    """
    dm, dn = lattice_direction(cls)
    m0 = Fraction(1, 2)
    events: dict[Fraction, list] = {}

    def add(t, ends, frac):
        events.setdefault(t, []).append((ends, frac))

    # start point on the A1-A2 edge
    add(Fraction(0), ((0, 0), (1, 0)), Fraction(1, 2))
    for k in range(1, dn):
        t = Fraction(k, dn)
        m = m0 + t * dm
        i = _frac_floor(m)
        add(t, ((i, k), (i + 1, k)), m - i)
    for j in range(1, dm + 1):
        t = Fraction(2 * j - 1, 2 * dm)
        n = t * dn
        i = _frac_floor(n)
        add(t, ((j, i), (j, i + 1)), n - i)
    for s in range(1, dm + dn + 1):
        t = Fraction(2 * s - 1, 2 * (dm + dn))
        n = t * dn
        i = _frac_floor(n)
        add(t, ((s - i, i), (s - i - 1, i + 1)), n - i)

    ts = sorted(events)
    crossings = []
    for idx, t in enumerate(ts):
        hits = events[t]
        if len(hits) > 1 or hits[0][1] in (0, 1):
            raise VertexHit(f"midpoint segment of class {cls} passes through a lattice vertex")
        (a, b), frac = hits[0]
        la, lb = vertex_label(*a), vertex_label(*b)
        if lb < la:
            a, b, frac = b, a, 1 - frac
            la, lb = lb, la
        crossings.append(EdgeCrossing((la, lb), float(frac), idx, t, (a, b)))

    faces = []
    bounds = ts + [Fraction(1)]
    for t0, t1 in zip(bounds[:-1], bounds[1:]):
        tm = (t0 + t1) / 2
        faces.append(_face_at(m0 + tm * dm, tm * dn))
    return CrossingSequence(cls, tuple(crossings), tuple(faces))


def euclid_length(cls: GeodesicClass) -> float:
    return 2.0 * math.sqrt(cls.norm2)


def vertex_clearance_bound(cls: GeodesicClass) -> float:
    return SQRT3 / (4.0 * math.sqrt(cls.norm2))


def _point_segment_distance(pt, a, b) -> float:
    d = b - a
    t = np.clip(np.dot(pt - a, d) / np.dot(d, d), 0.0, 1.0)
    return float(np.linalg.norm(pt - (a + t * d)))


def strip_vertices(seq: CrossingSequence) -> list[tuple[int, int]]:
    seen = []
    for face in seq.faces:
        for v in face:
            if v not in seen:
                seen.append(v)
    return seen


def measured_clearance(cls: GeodesicClass) -> float:
    """Minimum distance from the vertices of the development strip to the midpoint segment."""
    seq = crossing_sequence(cls)
    a, b = midpoint_segment(cls)
    return min(_point_segment_distance(lattice_point(*v), a, b) for v in strip_vertices(seq))


def symmetry_check_euclid(cls: GeodesicClass, tol: float = 1e-10) -> bool:
    """Check that the strip splits into four parts swapped by half-turns.

    Part k holds faces k*(p+q) .. (k+1)*(p+q) - 1.  The half-turn about the
    midpoint shared by parts k and k+1 must carry the faces of part k onto the
    faces of part k+1 in reverse order, and must induce one consistent
    relabelling of the tetrahedron's vertices.
    """
    seq = crossing_sequence(cls)
    n = cls.total
    faces = seq.faces
    if len(faces) != 4 * n:
        return False
    for k in range(3):
        center = seq[(k + 1) * n].point
        relabel: dict[str, str] = {}
        for j in range(n):
            src = faces[k * n + j]
            dst = faces[(k + 2) * n - 1 - j]
            dst_pts = [lattice_point(*v) for v in dst]
            for v in src:
                img = 2.0 * center - lattice_point(*v)
                match = [w for w, pt in zip(dst, dst_pts) if np.linalg.norm(pt - img) < tol]
                if len(match) != 1:
                    return False
                la, lb = vertex_label(*v), vertex_label(*match[0])
                if relabel.setdefault(la, lb) != lb:
                    return False
    return True
