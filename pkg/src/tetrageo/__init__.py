"""Simple closed geodesics on regular tetrahedra in spherical space."""

from .bounds import BoundReport, alpha1_existence, alpha2_nonexistence, bound_report, length_lower_bound
from .errors import DomainError, GeometryError, HemisphereError, NoBracket, NotConstructible, VertexHit
from .euclid_dev import GeodesicClass, coprime_classes, crossing_sequence
from .search import CriticalAngleResult, critical_alpha, exists_at, survey
from .tetra_model import edge_length, embed, geodesic_01, geodesic_11, length_01
from .unfolding import GeodesicResult, chord_test, geodesic_from_unfolding, unfold

__version__ = "0.1.0"
