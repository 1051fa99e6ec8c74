"""Acceptance criteria, one test per criterion.

Each test records a PASS/FAIL line; the lines are printed in the pytest
terminal summary, or directly when this file is run as a script.
"""

import math
from functools import lru_cache

import numpy as np
import pytest

from tetrageo import bounds as B
from tetrageo import sphere_geom as sg
from tetrageo.euclid_dev import (
    GeodesicClass, coprime_classes, crossing_sequence, euclid_length, measured_clearance, midpoint_segment,
    symmetry_check_euclid, vertex_clearance_bound,
)
from tetrageo.errors import DomainError
from tetrageo.search import critical_alpha, exists_at, max_alpha_star_by_sum, survey
from tetrageo.tetra_model import edge_length, geodesic_01, geodesic_11, length_01
from tetrageo.unfolding import geodesic_from_unfolding

LO, HI = math.pi / 3, 2 * math.pi / 3
SAMPLES = 10_000

RESULTS: dict[int, tuple[bool, str]] = {}


def record(n: int, ok: bool, detail: str):
    RESULTS[n] = (ok, detail)
    assert ok, detail


def summary_lines() -> list[str]:
    return [f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}" for n, (ok, detail) in sorted(RESULTS.items())]


@lru_cache(maxsize=None)
def survey10():
    return survey(10)


def test_criterion_1_edge_length_law():
    at_right = abs(edge_length(math.pi / 2) - math.pi / 2)
    lower = abs(edge_length(LO + 1e-8) - 0.0)
    upper = abs(edge_length(HI - 1e-8) - (math.pi - math.acos(1 / 3)))
    ok = at_right <= 1e-12 and lower <= 1e-3 and upper <= 1e-3
    record(1, ok, f"|a(pi/2)-pi/2|={at_right:.1e}, lower limit err {lower:.1e}, upper limit err {upper:.1e}")


def test_criterion_2_euclidean_suite():
    bad = []
    classes = coprime_classes(12)
    for cls in classes:
        seq = crossing_sequence(cls)
        a, b = midpoint_segment(cls)
        if len(seq) != 4 * cls.total:
            bad.append(f"{cls} count")
        if abs(euclid_length(cls) - np.linalg.norm(b - a)) > 1e-12:
            bad.append(f"{cls} length")
        if measured_clearance(cls) < vertex_clearance_bound(cls) - 1e-12:
            bad.append(f"{cls} clearance")
        if not symmetry_check_euclid(cls):
            bad.append(f"{cls} symmetry")
    record(2, not bad, f"{len(classes)} classes with p+q <= 12" + (f"; failures: {bad}" if bad else ""))


def test_criterion_3_closed_form_vs_construction():
    grid = np.linspace(LO + 1e-4, HI - 1e-4, 200)
    worst = max(abs(geodesic_01(a).length - length_01(a)) for a in grid)
    at_right = abs(geodesic_01(math.pi / 2).length - 4 * math.pi / 3)
    ok = worst <= 1e-10 and at_right <= 1e-12
    record(3, ok, f"max deviation {worst:.1e} on 200 angles, deviation at pi/2 {at_right:.1e}")


def test_criterion_4_right_angle_transition():
    r = critical_alpha(GeodesicClass(1, 1))
    err = abs(r.alpha_star - math.pi / 2)
    record(4, err <= 1e-6, f"alpha*(1,1) = {r.alpha_star:.12f}, |alpha* - pi/2| = {err:.1e}")


SANDWICH = [(1, 2), (1, 3), (2, 3), (1, 4), (3, 4), (2, 5)]


def test_criterion_5_nonexistence_sandwich():
    bad, parts = [], []
    for pq in SANDWICH:
        cls = GeodesicClass(*pq)
        a2 = B.alpha2_nonexistence(cls)
        star = critical_alpha(cls).alpha_star
        state = exists_at(a2 + 0.01, cls)
        parts.append(f"{cls}: {star:.6f} <= {a2:.6f}")
        if not star <= a2 + 1e-6 or state != "no":
            bad.append(f"{cls} alpha*={star} alpha2={a2} exists(alpha2+0.01)={state}")
    record(5, not bad, "; ".join(parts) + (f"; failures: {bad}" if bad else ""))


def test_criterion_6_existence_direction():
    rows = {r.cls: r for r in survey10()}
    nondegenerate, degenerate, formal_checked, bad = [], [], 0, []
    for cls, row in rows.items():
        if cls in (GeodesicClass(0, 1), GeodesicClass(1, 1)):
            continue
        a1 = B.alpha1_existence(cls)
        if a1 is None:
            degenerate.append(cls)
            if not row.bounds.degenerate_reason:
                bad.append(f"{cls} none without reason")
        else:
            nondegenerate.append(cls)
            if exists_at(a1 - 1e-4, cls) != "yes" or not a1 < row.alpha_star:
                bad.append(f"{cls} alpha1={a1}")
        # the ratio as written, kept without its sign condition, is still a valid lower bound here
        formal = row.bounds.alpha1_formal
        if formal is not None:
            formal_checked += 1
            if not formal < row.alpha_star or exists_at(0.5 * (LO + formal), cls) != "yes":
                bad.append(f"{cls} formal alpha1={formal}")
    detail = (f"{len(nondegenerate)} non-degenerate, {len(degenerate)} degenerate with documented reason, "
              f"{formal_checked} formal margins below alpha*")
    record(6, not bad, detail + (f"; failures: {bad}" if bad else ""))


def _collect_geodesics():
    found = []
    for a in np.linspace(LO + 1e-3, HI - 1e-3, 25):
        found.append((a, geodesic_01(a)))
    for a in np.linspace(LO + 1e-3, math.pi / 2 - 1e-3, 25):
        found.append((a, geodesic_11(a)))
    for row in survey10():
        if row.alpha_star is None:
            continue
        for f in (0.2, 0.5, 0.8):
            a = LO + f * (row.alpha_star - LO)
            found.append((a, geodesic_from_unfolding(a, row.cls)))
    return found


def test_criterion_7_universal_length_band():
    bad = []
    found = _collect_geodesics()
    for a, g in found:
        lower = B.length_lower_bound(a, g.cls)
        if not lower < g.length < 2 * math.pi:
            bad.append(f"{g.cls}@{a:.4f} length")
        if max(g.midpoint_errors()) > 1e-9:
            bad.append(f"{g.cls}@{a:.4f} midpoints")
        if max(g.angle_defects()) > 1e-9:
            bad.append(f"{g.cls}@{a:.4f} angles")
    record(7, not bad, f"{len(found)} geodesics checked" + (f"; failures: {bad[:5]}" if bad else ""))


def _unit_arc_image(R, r, theta):
    """Planar length, in units of the sphere of radius R, of the central image of a
    unit arc starting at distance r from the tangent point in direction theta."""
    p = sg.point_from_angles(r / R, 0.0)
    radial = np.array([math.cos(r / R), 0.0, math.sin(r / R)])
    d = math.cos(theta) * radial + math.sin(theta) * np.array([0.0, 1.0, 0.0])
    q = math.cos(1 / R) * p + math.sin(1 / R) * d
    c = np.array([0.0, 0.0, -1.0])
    frame = sg.gnomonic_frame(c)
    return R * float(np.linalg.norm(sg.gnomonic_project(q, c, frame) - sg.gnomonic_project(p, c, frame)))


def test_criterion_8_distortion_bounds():
    rng = np.random.default_rng(20240601)
    v81 = sum(not edge_length(LO + e) < B.edge_upper_bound(e) for e in rng.uniform(0, math.pi / 6, SAMPLES)
              if e > 0)

    v82 = n82 = 0
    while n82 < SAMPLES:
        eps = rng.uniform(0, math.pi / 6)
        rho = rng.uniform(0, math.pi / 2)
        alpha = LO + eps
        th1 = rng.uniform(0, math.pi - alpha)
        a1, a2 = math.cos(th1), math.cos(th1 + alpha)
        try:
            hat = B.projected_angle_exact(a1, a2, rho)
        except DomainError:
            continue
        n82 += 1
        v82 += not abs(hat - LO) < B.projected_angle_bound(eps, rho)

    v17 = vmax = vmin = n17 = n83 = 0
    classes = coprime_classes(8)[2:]
    while n17 < SAMPLES:
        cls = classes[rng.integers(len(classes))]
        eps = rng.uniform(1e-6, 1.0 / (8 * B.COS15 * cls.total ** 2))
        a = edge_length(LO + eps)
        r = int(rng.integers(0, cls.total))
        bound = B.projected_length_bound(r, cls, eps)
        if bound is None:
            continue
        n17 += 1
        v17 += not _unit_arc_image(1 / a, r, rng.uniform(0, 2 * math.pi)) - 1 < bound
    while n83 < SAMPLES:
        R = rng.uniform(1.0, 20.0)
        r = rng.uniform(0, R * math.pi / 2 - 1.0)
        if (r + 1) / R >= math.pi / 2:
            continue
        n83 += 1
        lo, hi = B.projected_length_extremes(r, R)
        img = _unit_arc_image(R, r, rng.uniform(0, 2 * math.pi))
        vmax += img > hi + 1e-9
        vmin += img < lo - 1e-9

    parts = {"edge bound": v81, "projected angle": v82, "excess bound": v17,
             "length max": vmax, "length min": vmin}
    detail = ", ".join(f"{k} {v}/{SAMPLES}" for k, v in parts.items()) + " violations"
    record(8, not any(parts.values()), detail)


def test_criterion_9_finiteness_trend():
    rows = survey10()
    stars = [r.alpha_star for r in rows if r.alpha_star is not None]
    inside = all(LO < s < HI for s in stars)
    best = max_alpha_star_by_sum(rows)
    seq = [best[s] for s in range(3, 11)]
    decreasing = all(x > y for x, y in zip(seq, seq[1:]))
    detail = f"{len(stars)} critical angles in range: {inside}; max alpha* by p+q 3..10: " + \
        ", ".join(f"{x:.5f}" for x in seq)
    record(9, inside and decreasing, detail)


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
