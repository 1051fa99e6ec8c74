"""Closed-form bounds on the existence of closed geodesics.

Notation: n = p + q, N = p^2 + pq + q^2 and alpha = pi/3 + eps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import DomainError
from .euclid_dev import GeodesicClass, euclid_length
from .tetra_model import ALPHA_MAX, ALPHA_MIN, check_alpha, chord_edge_length, edge_length

COS15 = math.cos(math.pi / 12)


def _check_eps(eps: float) -> float:
    eps = float(eps)
    if not 0.0 < eps < math.pi / 6:
        raise DomainError(f"eps={eps!r} outside (0, pi/6)")
    return eps


def length_lower_bound(alpha: float, cls: GeodesicClass) -> float:
    """2 sqrt(N) sqrt(4 sin^2(alpha/2) - 1) / sin(alpha/2)."""
    h = math.sin(check_alpha(alpha) / 2.0)
    return 2.0 * math.sqrt(cls.norm2) * math.sqrt(4.0 * h * h - 1.0) / h


def length_lower_bound_factored(alpha: float, cls: GeodesicClass) -> float:
    return euclid_length(cls) * chord_edge_length(alpha)


def alpha2_nonexistence(cls: GeodesicClass) -> float | None:
    """Face angle above which no geodesic of the class exists, or None when the
    arcsin argument falls outside [0, 1]."""
    n2 = cls.norm2
    x = n2 / (4.0 * n2 - math.pi ** 2)
    if not 0.0 <= x <= 1.0:
        return None
    return 2.0 * math.asin(math.sqrt(x))


def edge_upper_bound(eps: float) -> float:
    """Upper bound pi sqrt(2 cos(pi/12)) sqrt(eps) on the edge length at alpha = pi/3 + eps."""
    return math.pi * math.sqrt(2.0 * COS15) * math.sqrt(_check_eps(eps))


def projected_angle_exact(a1: float, a2: float, r_over_R: float) -> float:
    """Angle at radius r/R after central projection onto the tangent plane at the pole.

    The two sides of the angle are the great circles cut by the planes
    a_i cos(rho) x + sqrt(1 - a_i^2) y + a_i sin(rho) z = 0.
    """
    if abs(a1) > 1.0 or abs(a2) > 1.0:
        raise DomainError("plane coefficients must satisfy |a_i| <= 1")
    if not 0.0 <= r_over_R < math.pi / 2:
        raise DomainError("r/R must lie in [0, pi/2)")
    c, s = math.cos(r_over_R), math.sin(r_over_R)
    d1 = 1.0 - (a1 * s) ** 2
    d2 = 1.0 - (a2 * s) ** 2
    if min(d1, d2) < 1e-15:
        raise DomainError("projected angle undefined: a side is perpendicular to the tangent plane")
    num = a1 * a2 * c * c + math.sqrt((1.0 - a1 * a1) * (1.0 - a2 * a2))
    return math.acos(max(-1.0, min(1.0, num / math.sqrt(d1 * d2))))


def sphere_angle_from_planes(a1: float, a2: float) -> float:
    """Dihedral angle of the two planes, i.e. the angle on the sphere."""
    c = a1 * a2 + math.sqrt((1.0 - a1 * a1) * (1.0 - a2 * a2))
    return math.acos(max(-1.0, min(1.0, c)))


def projected_angle_bound(eps: float, r_over_R: float) -> float:
    return math.pi * math.tan(r_over_R) ** 2 + eps


def projected_length_extremes(r: float, R: float) -> tuple[float, float]:
    """Stated min and max planar lengths of the image of a unit arc starting at radius r.

    min = R sin(1/R) / (cos(r/R) cos((r-1)/R)) is attained by the arc pointing
    straight at the pole, max = R sin(1/R) / (cos(r/R) cos((r+1)/R)) by the arc
    pointing straight away from it.
    """
    if R <= 0 or r < 0 or (r + 1.0) / R >= math.pi / 2:
        raise DomainError("need R > 0, r >= 0 and (r + 1)/R < pi/2")
    k = R * math.sin(1.0 / R) / math.cos(r / R)
    return k / math.cos((r - 1.0) / R), k / math.cos((r + 1.0) / R)


def projected_length_bound(r: int, cls: GeodesicClass, eps: float) -> float | None:
    """Bound on the excess l_r - 1 of a projected unit edge at depth r, in edge units.

    Returns None when 1 - (2/pi) a (r + 1) <= 0.
    """
    eps = _check_eps(eps)
    a = edge_length(ALPHA_MIN + eps)
    if a * cls.total >= math.pi / 2:
        raise DomainError("hemisphere condition a (p + q) < pi/2 fails")
    den = 1.0 - 2.0 / math.pi * a * (r + 1)
    if den <= 0.0:
        return None
    return COS15 * (4.0 + math.pi ** 2 * (2 * r + 1) ** 2) / den ** 2 * eps


def hemisphere_condition(alpha: float, cls: GeodesicClass) -> bool:
    return edge_length(alpha) * cls.total < math.pi / 2


@dataclass(frozen=True)
class ExistenceConstants:
    cls: GeodesicClass
    upper: int  # summation limit floor(n/2) + 2
    c0: float | None
    c_l: list = field(default_factory=list)
    c_alpha: list = field(default_factory=list)
    tan_sum: float = math.inf
    c0_numerator: float = math.nan
    c0_denominator: float = math.nan
    reason: str | None = None

    @property
    def degenerate(self) -> bool:
        return self.c0 is None


def existence_constants(cls: GeodesicClass) -> ExistenceConstants:
    n = cls.total
    upper = n // 2 + 2
    c_l, c_alpha = [], []
    for i in range(upper + 1):
        d = n - i - 1
        c_l.append(math.inf if d == 0 else COS15 * n * n * (4.0 + math.pi ** 2 * (2 * i + 1) ** 2) / d ** 2)
    tan_ok = upper < n  # largest argument pi*upper/(2n) stays below pi/2
    for j in range(upper + 1):
        if j >= n:
            c_alpha.append(math.inf)
        else:
            c_alpha.append(4.0 * (8.0 * math.pi * n * n * COS15 * math.tan(math.pi * j / (2 * n)) ** 2 + 1.0))
    if not tan_ok:
        return ExistenceConstants(cls, upper, None, c_l, c_alpha,
                                 reason=f"tan argument reaches pi/2 (index {upper} >= p+q={n})")
    s = sum(math.tan(math.pi * i / (2 * n)) ** 2 for i in range(upper + 1))
    t = (n + 2) / (math.pi * COS15 * n * n)
    num = 3.0 - t - 16.0 * s
    den = 1.0 - t / 2.0 - 8.0 * s
    if any(math.isinf(v) for v in c_l):
        return ExistenceConstants(cls, upper, None, c_l, c_alpha, s, num, den,
                                 reason=f"c_l divides by zero (index p+q-1={n - 1} within limit {upper})")
    if den <= 0.0:
        return ExistenceConstants(cls, upper, None, c_l, c_alpha, s, num, den,
                                 reason=f"c0 denominator {den:.6g} is not positive")
    return ExistenceConstants(cls, upper, num / den, c_l, c_alpha, s, num, den)


def _eps_terms(cls: GeodesicClass, c0: float, consts: ExistenceConstants) -> tuple[float, float]:
    # accumulate the double sum first, then divide once
    total = 0.0
    inner = 0.0
    for i in range(consts.upper + 1):
        inner += consts.c_alpha[i]
        total += consts.c_l[i] + inner
    first = math.sqrt(3.0) / (4.0 * c0 * math.sqrt(cls.norm2) * total)
    second = 1.0 / (8.0 * COS15 * cls.total ** 2)
    return first, second


def existence_margin(cls: GeodesicClass, formal: bool = False) -> float | None:
    """Margin eps below which existence is guaranteed, or None if the constants degenerate.

    With ``formal`` the sign requirement on the c0 denominator is dropped and the
    ratio is used as written whenever it is finite and positive; the result then
    carries no guarantee.
    """
    consts = existence_constants(cls)
    c0 = consts.c0
    if c0 is None and formal and "c0 denominator" in (consts.reason or ""):
        c0 = consts.c0_numerator / consts.c0_denominator
    if c0 is None or not c0 > 0.0:
        return None
    first, second = _eps_terms(cls, c0, consts)
    eps = min(first, second)
    return eps if eps > 0.0 else None


def alpha1_existence(cls: GeodesicClass, formal: bool = False) -> float | None:
    """Face angle below which a geodesic of the class is guaranteed to exist.

    (0,1) exists on the whole range, reported as 2pi/3; (1,1) exists up to pi/2.
    """
    if cls == GeodesicClass(0, 1):
        return ALPHA_MAX
    if cls == GeodesicClass(1, 1):
        return math.pi / 2
    eps = existence_margin(cls, formal)
    return None if eps is None else ALPHA_MIN + eps


@dataclass(frozen=True)
class BoundReport:
    cls: GeodesicClass
    alpha1: float | None
    alpha2: float | None
    degenerate_reason: str | None = None
    alpha1_formal: float | None = None
    note: str | None = None

    @property
    def ordered(self) -> bool | None:
        """Whether pi/3 < alpha1 < alpha2 < 2pi/3; None when a bound is missing."""
        if self.alpha1 is None or self.alpha2 is None:
            return None
        return ALPHA_MIN < self.alpha1 < self.alpha2 < ALPHA_MAX


def bound_report(cls: GeodesicClass) -> BoundReport:
    alpha2 = alpha2_nonexistence(cls)
    alpha1 = alpha1_existence(cls)
    if cls == GeodesicClass(0, 1):
        return BoundReport(cls, alpha1, alpha2, None, alpha1, "exists on whole interval")
    if cls == GeodesicClass(1, 1):
        return BoundReport(cls, alpha1, alpha2, None, alpha1, "exists exactly for alpha < pi/2")
    reason = None if alpha1 is not None else existence_constants(cls).reason
    return BoundReport(cls, alpha1, alpha2, reason, alpha1_existence(cls, formal=True))
