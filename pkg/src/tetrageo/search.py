"""Locate the critical face angle where a geodesic class stops existing."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .bounds import BoundReport, bound_report
from .errors import HemisphereError, NoBracket
from .euclid_dev import GeodesicClass, coprime_classes
from .tetra_model import ALPHA_MAX, ALPHA_MIN, check_alpha
from .unfolding import chord_test, unfold

YES, NO, MARGINAL = "yes", "no", "marginal"

SCAN_POINTS = 64
DEFAULT_TOL = 1e-7


def exists_at(alpha: float, cls: GeodesicClass, strict: bool = False) -> str:
    """Tri-state existence: "yes", "no" or "marginal" (inside the dead-band).

    With ``strict`` a development leaving the hemisphere counts as "no".
    """
    check_alpha(alpha)
    try:
        dev = unfold(alpha, cls, strict=strict)
    except HemisphereError:
        return NO
    return chord_test(dev).status


def scan_grid(n: int = SCAN_POINTS) -> list[float]:
    """Angles pi/3 + (pi/3)(k/(n+1))^2, k = 1..n, packed toward pi/3 where
    the transitions of long geodesics sit."""
    span = ALPHA_MAX - ALPHA_MIN
    return [ALPHA_MIN + span * (k / (n + 1)) ** 2 for k in range(1, n + 1)]


@dataclass(frozen=True)
class CriticalAngleResult:
    cls: GeodesicClass
    alpha_star: float
    bracket: tuple[float, float]
    iterations: int
    monotone_verified: bool
    diagnostic: str = ""


def _yes(alpha: float, cls: GeodesicClass) -> bool:
    # marginal counts as the boundary, i.e. not yes
    return exists_at(alpha, cls) == YES


def critical_alpha(cls: GeodesicClass, tol: float = DEFAULT_TOL) -> CriticalAngleResult:
    """Coarse scan for a yes -> no change, then bisection down to ``tol``."""
    if tol < 1e-9:
        raise ValueError("tol must be at least 1e-9")
    if cls == GeodesicClass(0, 1):
        raise NoBracket("class (0,1) exists on the whole interval; no transition")
    grid = scan_grid()
    states = [_yes(a, cls) for a in grid]
    changes = [i for i in range(1, len(states)) if states[i] != states[i - 1]]
    lo = hi = None
    if states[0]:
        if not changes:
            raise NoBracket(f"class {cls} exists at every scanned angle")
        lo, hi = grid[changes[0] - 1], grid[changes[0]]
    else:
        # transition below the first grid point: shrink toward pi/3
        hi = grid[0]
        eps = hi - ALPHA_MIN
        while eps > 1e-12:
            eps /= 4.0
            if _yes(ALPHA_MIN + eps, cls):
                lo = ALPHA_MIN + eps
                break
            hi = ALPHA_MIN + eps
        if lo is None:
            raise NoBracket(f"class {cls} not found at any scanned angle")
    monotone = len(changes) <= 1 and not (not states[0] and changes)
    diagnostic = "" if monotone else f"scan shows {len(changes)} transitions; first one bracketed"
    iterations = 0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if _yes(mid, cls):
            lo = mid
        else:
            hi = mid
        iterations += 1
    return CriticalAngleResult(cls, 0.5 * (lo + hi), (lo, hi), iterations, monotone, diagnostic)


@dataclass(frozen=True)
class SurveyRow:
    cls: GeodesicClass
    critical: CriticalAngleResult | None
    bounds: BoundReport

    @property
    def alpha_star(self) -> float | None:
        return None if self.critical is None else self.critical.alpha_star


def _survey_one(args: tuple[GeodesicClass, float]) -> SurveyRow:
    cls, tol = args
    crit = None if cls == GeodesicClass(0, 1) else critical_alpha(cls, tol)
    return SurveyRow(cls, crit, bound_report(cls))


def survey(max_sum: int, tol: float = DEFAULT_TOL, workers: int | None = None) -> list[SurveyRow]:
    """Critical angle and bounds for every class with p + q <= max_sum, in (p + q, p) order."""
    if max_sum < 2:
        raise ValueError("max_sum must be at least 2")
    jobs = [(c, tol) for c in coprime_classes(max_sum)]
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_survey_one, jobs))
    return [_survey_one(j) for j in jobs]


def count_at(rows: list[SurveyRow], alpha: float) -> int:
    """Number of surveyed classes whose geodesic exists at ``alpha`` according to alpha*."""
    return sum(1 for r in rows if r.alpha_star is None or r.alpha_star > alpha)


def count_by_probe(max_sum: int, alpha: float) -> int:
    return sum(1 for c in coprime_classes(max_sum) if exists_at(alpha, c) == YES)


def max_alpha_star_by_sum(rows: list[SurveyRow]) -> dict[int, float]:
    out: dict[int, float] = {}
    for r in rows:
        if r.alpha_star is not None:
            s = r.cls.total
            out[s] = max(out.get(s, -math.inf), r.alpha_star)
    return out
