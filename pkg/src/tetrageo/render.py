"""Deterministic SVG pictures of the Euclidean and spherical developments."""

from __future__ import annotations

import numpy as np

from . import sphere_geom as sg
from .errors import HemisphereError
from .euclid_dev import GeodesicClass, crossing_sequence, lattice_point, midpoint_segment, vertex_label
from .unfolding import chord_test, unfold

EDGE_PX = 100.0
MARGIN = 30.0


def _fmt(x: float) -> str:
    s = f"{x:.3f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def _svg(triangles, labels, chord, markers, title: str) -> str:
    """Assemble the document from planar data already scaled to pixels, y up."""
    pts = np.array([p for tri in triangles for p in tri] + list(chord))
    xmin, ymin = pts.min(axis=0) - MARGIN
    xmax, ymax = pts.max(axis=0) + MARGIN
    w, h = xmax - xmin, ymax - ymin

    def xy(p):
        return _fmt(p[0] - xmin), _fmt(ymax - p[1])

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_fmt(w)}" height="{_fmt(h)}" '
        f'viewBox="0 0 {_fmt(w)} {_fmt(h)}">',
        f"<title>{title}</title>",
        '<g fill="#eef3fb" stroke="#4a5a78" stroke-width="1">',
    ]
    for tri in triangles:
        coords = " ".join(",".join(xy(p)) for p in tri)
        out.append(f'<polygon points="{coords}"/>')
    out.append("</g>")
    out.append('<g font-family="sans-serif" font-size="11" fill="#222">')
    for text, p in labels:
        x, y = xy(p)
        out.append(f'<text x="{x}" y="{y}" dx="3" dy="-3">{text}</text>')
    out.append("</g>")
    (x1, y1), (x2, y2) = xy(chord[0]), xy(chord[1])
    out.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="#c0392b" stroke-width="1.5"/>')
    out.append('<g fill="#c0392b">')
    for p in markers:
        x, y = xy(p)
        out.append(f'<circle cx="{x}" cy="{y}" r="3"/>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_euclid(cls: GeodesicClass) -> str:
    seq = crossing_sequence(cls)
    tris = [[lattice_point(*v) * EDGE_PX for v in face] for face in seq.faces]
    seen, labels = set(), []
    for face in seq.faces:
        for v in face:
            if v not in seen:
                seen.add(v)
                labels.append((vertex_label(*v), lattice_point(*v) * EDGE_PX))
    a, b = midpoint_segment(cls)
    n = cls.total
    markers = [seq[k].point * EDGE_PX for k in (0, n, 2 * n, 3 * n)] + [b * EDGE_PX]
    return _svg(tris, labels, (a * EDGE_PX, b * EDGE_PX), markers, f"class {cls}, unit-edge development")


def render_sphere(cls: GeodesicClass, alpha: float) -> str:
    """Gnomonic picture centred on the chord midpoint X2, so the chord is a straight
    segment.  Raises HemisphereError when a vertex is not in front of the centre."""
    dev = unfold(alpha, cls)
    n = cls.total
    x1 = sg.midpoint(*dev.edge_points(0))
    x1e = sg.midpoint(*dev.edge_points(4 * n))
    center = sg.midpoint(*dev.edge_points(2 * n))
    drawn = {v for face in dev.triangles for v in face}
    for v in sorted(drawn):
        if np.dot(dev.points[v], center) <= sg.PREDICATE_TOL:
            raise HemisphereError(f"vertex {vertex_label(*v)} at {v} lies outside the hemisphere of the chord centre")
    frame = sg.gnomonic_frame(center, toward=x1e)
    scale = EDGE_PX / dev.a

    def proj(p):
        return sg.gnomonic_project(p, center, frame) * scale

    verts = list(dev.triangles)
    tris = [[proj(dev.points[v]) for v in face] for face in verts]
    seen, labels = set(), []
    for face in verts:
        for v in face:
            if v not in seen:
                seen.add(v)
                labels.append((vertex_label(*v), proj(dev.points[v])))
    markers = [proj(sg.midpoint(*dev.edge_points(k))) for k in (0, n, 2 * n, 3 * n, 4 * n)]
    res = chord_test(dev)
    title = f"class {cls}, alpha={alpha:.12g}, gnomonic at chord centre, geodesic {res.status}"
    return _svg(tris, labels, (proj(x1), proj(x1e)), markers, title)
