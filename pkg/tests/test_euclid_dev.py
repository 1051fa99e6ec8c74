import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from tetrageo.errors import DomainError, VertexHit
from tetrageo.euclid_dev import (
    GeodesicClass, coprime_classes, crossing_sequence, euclid_length, geodesic_segment, lattice_direction,
    lattice_point, measured_clearance, midpoint_segment, symmetry_check_euclid, vertex_clearance_bound,
    vertex_label,
)

SMALL = coprime_classes(12)


classes = st.sampled_from(coprime_classes(15))


def sampled_faces(cls, samples_per_unit=4000):
    """Face sequence found by dense sampling of the segment in lattice coordinates."""
    dm, dn = lattice_direction(cls)
    steps = samples_per_unit * (dm + dn)
    faces = []
    for k in range(steps):
        t = (k + 0.5) / steps
        m, n = 0.5 + t * dm, t * dn
        i, j = math.floor(m), math.floor(n)
        face = (i, j, (m - i) + (n - j) >= 1)
        if not faces or faces[-1] != face:
            faces.append(face)
    return faces


def test_class_validation():
    with pytest.raises(DomainError):
        GeodesicClass(2, 4)
    with pytest.raises(DomainError):
        GeodesicClass(-1, 2)
    with pytest.raises(DomainError):
        GeodesicClass(3, 2)
    with pytest.raises(DomainError):
        GeodesicClass(0, 2)
    assert str(GeodesicClass(1, 2)) == "(1,2)"


def test_coprime_enumeration_order():
    assert coprime_classes(3) == [GeodesicClass(0, 1), GeodesicClass(1, 1), GeodesicClass(1, 2)]
    keys = [(c.total, c.p) for c in coprime_classes(12)]
    assert keys == sorted(keys)


def test_labels_follow_parity():
    assert [vertex_label(0, 0), vertex_label(1, 0), vertex_label(0, 1), vertex_label(1, 1)] == ["A1", "A2", "A3", "A4"]
    assert vertex_label(-3, 4) == "A2"


@pytest.mark.parametrize("cls", SMALL, ids=str)
def test_crossing_count_matches_sampling_oracle(cls):
    seq = crossing_sequence(cls)
    assert len(seq) == 4 * cls.total
    oracle = sampled_faces(cls)
    assert len(oracle) == len(seq.faces)


@pytest.mark.parametrize("cls", SMALL, ids=str)
def test_edge_counts_pair_up(cls):
    counts = crossing_sequence(cls).edge_counts()
    pairs = [(("A1", "A2"), ("A3", "A4")), (("A1", "A3"), ("A2", "A4")), (("A1", "A4"), ("A2", "A3"))]
    per_pair = []
    for e, f in pairs:
        assert counts.get(e, 0) == counts.get(f, 0)
        per_pair.append(counts.get(e, 0))
    assert sorted(per_pair) == sorted([cls.p, cls.q, cls.p + cls.q])


@pytest.mark.parametrize("cls", SMALL, ids=str)
def test_length_matches_segment(cls):
    a, b = midpoint_segment(cls)
    assert abs(np.linalg.norm(b - a) - euclid_length(cls)) < 1e-12


@pytest.mark.parametrize("cls", SMALL, ids=str)
def test_clearance_and_symmetry(cls):
    assert measured_clearance(cls) >= vertex_clearance_bound(cls) - 1e-12
    assert symmetry_check_euclid(cls)


@pytest.mark.parametrize("cls", SMALL, ids=str)
def test_quarter_points_are_midpoints(cls):
    seq = crossing_sequence(cls)
    for i in seq.quarter_indices():
        assert seq[i].parameter == 0.5


def test_known_values():
    assert euclid_length(GeodesicClass(1, 2)) == pytest.approx(2 * math.sqrt(7), abs=1e-15)
    assert vertex_clearance_bound(GeodesicClass(1, 1)) == pytest.approx(0.25)


def test_segment_with_even_q_through_midpoint_hits_vertex():
    # the quarter point of the (1,2) segment from (1/2, 0) is the lattice vertex (1, 1)
    with pytest.raises(VertexHit):
        geodesic_segment(GeodesicClass(1, 2), 0.5)
    a, b = geodesic_segment(GeodesicClass(1, 2), 0.3)
    assert np.allclose(a, [0.3, 0.0]) and np.allclose(b, [4.3, 2 * math.sqrt(3)])
    with pytest.raises(DomainError):
        geodesic_segment(GeodesicClass(1, 2), 1.0)


def test_first_face_and_start_edge():
    seq = crossing_sequence(GeodesicClass(2, 3))
    assert seq.faces[0] == ((0, 0), (1, 0), (0, 1))
    assert seq[0].edge == ("A1", "A2")
    assert np.allclose(seq[0].point, lattice_point(0.5, 0))


@given(classes)
def test_structure_properties(cls):
    seq = crossing_sequence(cls)
    assert len(seq) == 4 * cls.total
    # consecutive faces share exactly one edge
    for f, g in zip(seq.faces, seq.faces[1:]):
        assert len(set(f) & set(g)) == 2
    assert symmetry_check_euclid(cls)
    assert measured_clearance(cls) >= vertex_clearance_bound(cls) - 1e-12
