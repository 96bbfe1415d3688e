"""Threshold curves, viability-domain test, critical stock levels, regions.

The normative constraints are a minimum stock (``stock_floor``) and a
minimum total harvest (``harvest_floor``).  The functions here answer two
questions: can some recommendation keep both constraints satisfied forever
(the viability-domain test), and where do the qualitative phase regions that
drive rule-based control sit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .econ import (
    EconParams,
    Recruitment,
    total_harvest,
    unmanaged_harvest,
)

__all__ = [
    "ViabilityBounds",
    "ViabilityVerdict",
    "CaseOrder",
    "CriticalLevels",
    "Region",
    "Maturity",
    "RegionLabel",
    "recommendation_ceiling",
    "recommendation_floor",
    "check_viability_domain",
    "critical_levels",
    "classify_region",
    "recruitment_meets_floor_flags",
    "catch_within_recruitment_flags",
    "phase_rows",
]

_SIGN_TOL = 1e-12


@dataclass(frozen=True)
class ViabilityBounds:
    """Normative floors: minimum acceptable stock and total harvest."""

    stock_floor: float
    harvest_floor: float

    def __post_init__(self) -> None:
        if not self.stock_floor > 0.0:
            raise ValueError("stock_floor must be positive")
        if not self.harvest_floor > 0.0:
            raise ValueError("harvest_floor must be positive")


class Region(Enum):
    """Qualitatively distinguishable situations of the fishery."""

    R0_NON_BINDING = "R0"
    R1_GROWING_ABOVE_FLOOR = "R1"
    R2_GROWING_BELOW_FLOOR = "R2"
    R3_DECLINING_ABOVE_FLOOR = "R3"
    R4_DECLINING_BELOW_FLOOR = "R4"


class Maturity(Enum):
    EMERGING = "emerging"
    MATURE = "mature"


@dataclass(frozen=True)
class RegionLabel:
    region: Region
    maturity: Maturity


class CaseOrder(Enum):
    A_BELOW_B = "a<b"
    B_BELOW_A = "b<a"
    DEGENERATE = "degenerate"


@dataclass(frozen=True)
class ViabilityVerdict:
    """Outcome of the viability-domain test with per-condition margins.

    Conditions: (i) the harvest floor is attainable even without deviation
    costs, (ii) recruitment at the stock floor covers the harvest floor,
    (iii) a non-negative recommendation suffices at the stock floor.
    """

    viable: bool
    margin_floor_attainable: float
    margin_recruitment: float
    margin_admissible: float

    @property
    def conditions(self) -> tuple[bool, bool, bool]:
        return (
            self.margin_floor_attainable >= 0.0,
            self.margin_recruitment >= 0.0,
            self.margin_admissible >= 0.0,
        )


@dataclass(frozen=True)
class CriticalLevels:
    """Critical stock levels for the phase-plane discussion.

    ``a``: stock where the floor recommendation meets the unmanaged harvest
    (below it, asking for the floor yield no longer binds).  ``b < c``:
    stocks where recruitment equals the harvest floor.  Missing roots are
    ``None``.  ``crossings_below_b`` lists stocks below ``b`` where the
    stabilizing ceiling meets the unmanaged harvest (diagnostic only).
    """

    a: float | None
    b: float | None
    c: float | None
    case_order: CaseOrder
    crossings_below_b: tuple[float, ...] = field(default=())


def _coeff_context(params: EconParams, x: float) -> tuple[float, float, float, float]:
    if not x > 0.0:
        raise ValueError("stock must be positive")
    c = params.coeffs()
    if c.deviation_cross == 0.0:
        raise ValueError("threshold curves undefined without deviation costs")
    return c.mean_beta, c.deviation_cross, c.cost_cross, c.beta_product


def recommendation_ceiling(params: EconParams, rec: Recruitment, x: float) -> float:
    """Largest recommendation whose negotiated harvest keeps the stock from
    declining at ``x``.  Negative means no admissible recommendation can
    stabilize the stock there."""
    u, w, v, bb = _coeff_context(params, x)
    wx = w * x
    return (rec.rate(x) * (wx + bb) + v) / wx - u * params.price / w


def recommendation_floor(params: EconParams, bounds: ViabilityBounds, x: float) -> float:
    """Smallest recommendation whose negotiated harvest reaches the harvest
    floor at ``x``.  Strictly decreasing in the stock."""
    u, w, v, bb = _coeff_context(params, x)
    wx = w * x
    return (bounds.harvest_floor * (wx + bb) + v) / wx - u * params.price / w


def check_viability_domain(params: EconParams, rec: Recruitment,
                           bounds: ViabilityBounds) -> ViabilityVerdict:
    """Decide whether the region above the stock floor is a viability domain.

    True iff some recommendation path can keep both floors satisfied forever
    from any admissible start; all three conditions are evaluated at the
    stock floor, where they are binding.
    """
    x0 = bounds.stock_floor
    floor0 = recommendation_floor(params, bounds, x0)
    m1 = unmanaged_harvest(params, x0) - floor0
    m2 = rec.rate(x0) - bounds.harvest_floor
    m3 = max(floor0, recommendation_ceiling(params, rec, x0))
    return ViabilityVerdict(
        viable=(m1 >= 0.0 and m2 >= 0.0 and m3 >= 0.0),
        margin_floor_attainable=m1,
        margin_recruitment=m2,
        margin_admissible=m3,
    )


def _bisect(f, lo: float, hi: float, xtol: float = 1e-12) -> float:
    flo = f(lo)
    for _ in range(200):
        if hi - lo <= xtol:
            break
        mid = 0.5 * (lo + hi)
        fmid = f(mid)
        if fmid == 0.0:
            return mid
        if (flo > 0.0) == (fmid > 0.0):
            lo, flo = mid, fmid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def critical_levels(params: EconParams, rec: Recruitment, bounds: ViabilityBounds,
                    search_cap: float | None = None) -> CriticalLevels:
    """Locate the critical stock levels by bracketed bisection.

    The stabilizing ceiling is not monotone in general, so every root is
    bracketed on a structurally known interval before bisecting.  Missing
    roots (e.g. a harvest floor above the recruitment peak) come back as
    ``None`` rather than being silently filled in.
    """
    cap = search_cap if search_cap is not None else 4.0 * rec.capacity
    tiny = rec.capacity * 1e-12

    def floor_minus_unmanaged(x: float) -> float:
        return recommendation_floor(params, bounds, x) - unmanaged_harvest(params, x)

    a: float | None = None
    if floor_minus_unmanaged(tiny) > 0.0 and floor_minus_unmanaged(cap) < 0.0:
        a = _bisect(floor_minus_unmanaged, tiny, cap)

    peak, top = rec.peak_stock, rec.peak_rate
    scale = max(abs(top), 1.0)

    def rate_minus_floor(x: float) -> float:
        return rec.rate(x) - bounds.harvest_floor

    b: float | None
    c: float | None
    if bounds.harvest_floor > top + 1e-12 * scale:
        b = c = None
    elif bounds.harvest_floor >= top - 1e-12 * scale:
        b = c = peak
    else:
        b = _bisect(rate_minus_floor, tiny, peak)
        c = _bisect(rate_minus_floor, peak, rec.capacity - tiny)

    if a is None or b is None or abs(a - b) <= 1e-9 or (b is not None and c is not None and abs(b - c) <= 1e-9):
        order = CaseOrder.DEGENERATE
    elif a < b:
        order = CaseOrder.A_BELOW_B
    else:
        order = CaseOrder.B_BELOW_A

    crossings: list[float] = []
    if b is not None and b > 2.0 * tiny:
        def ceiling_minus_unmanaged(x: float) -> float:
            return recommendation_ceiling(params, rec, x) - unmanaged_harvest(params, x)

        xs = [tiny + (b - tiny) * i / 64 for i in range(65)]
        prev_x, prev_f = xs[0], ceiling_minus_unmanaged(xs[0])
        for x in xs[1:]:
            f = ceiling_minus_unmanaged(x)
            if (prev_f > 0.0) != (f > 0.0):
                crossings.append(_bisect(ceiling_minus_unmanaged, prev_x, x))
            prev_x, prev_f = x, f

    return CriticalLevels(a=a, b=b, c=c, case_order=order,
                          crossings_below_b=tuple(crossings))


def classify_region(trend_sign: int, harvest_sign: int, binding: bool,
                    maturity: Maturity) -> RegionLabel:
    """Map qualitative observations to a phase region.

    ``trend_sign`` / ``harvest_sign`` are the signs of the stock trend and
    of (harvest - harvest floor).  Zero trend counts as growing and zero
    harvest margin as above the floor: both tie-breaks favour continuation
    over intervention.  A non-binding recommendation wins over everything.
    """
    if not binding:
        return RegionLabel(Region.R0_NON_BINDING, maturity)
    growing = trend_sign >= 0
    above = harvest_sign >= 0
    if growing:
        region = Region.R1_GROWING_ABOVE_FLOOR if above else Region.R2_GROWING_BELOW_FLOOR
    else:
        region = Region.R3_DECLINING_ABOVE_FLOOR if above else Region.R4_DECLINING_BELOW_FLOOR
    return RegionLabel(region, maturity)


def recruitment_meets_floor_flags(params: EconParams, rec: Recruitment,
                                  bounds: ViabilityBounds, x: float) -> tuple[bool, bool]:
    """Two routes to "recommending the recruitment keeps the economy afloat".

    Left: threshold form, recruitment at ``x`` clears the floor
    recommendation.  Right: realized form, the negotiated harvest under the
    recruitment recommendation reaches the harvest floor.  Inside a
    viability domain the two agree.
    """
    rate = rec.rate(x)
    left = rate >= recommendation_floor(params, bounds, x)
    right = total_harvest(params, x, max(rate, 0.0)).h >= bounds.harvest_floor
    return left, right


def catch_within_recruitment_flags(params: EconParams, rec: Recruitment,
                                   x: float) -> tuple[bool, bool]:
    """Two routes to "recommending the recruitment does not erode the stock".

    Left: realized form, the negotiated harvest stays at or below the
    recruitment.  Right: threshold form, the recruitment is at least the
    unmanaged harvest (the recommendation does not bind).  The two agree;
    whenever both are false the stock declines under a recruitment-based
    recommendation.
    """
    rate = rec.rate(x)
    left = total_harvest(params, x, max(rate, 0.0)).h <= rate
    right = rate >= unmanaged_harvest(params, x)
    return left, right


def phase_rows(params: EconParams, rec: Recruitment, bounds: ViabilityBounds,
               xs, rs):
    """Yield plot-ready grid rows over stock/recommendation rectangles.

    Row: (x, r, h, regime, sign(recruitment - h), unmanaged harvest,
    stabilizing ceiling, floor recommendation, candidate region).  The sign
    is 0 when recruitment and harvest balance within tolerance.
    """
    for x in xs:
        rate = rec.rate(x)
        unmanaged = unmanaged_harvest(params, x)
        ceiling = recommendation_ceiling(params, rec, x)
        floor = recommendation_floor(params, bounds, x)
        for r in rs:
            out = total_harvest(params, x, r)
            gap = rate - out.h
            if abs(gap) <= _SIGN_TOL:
                sign = 0
            else:
                sign = 1 if gap > 0.0 else -1
            binding = out.h + _SIGN_TOL >= r
            label = classify_region(
                sign if sign != 0 else 1,
                1 if out.h >= bounds.harvest_floor else -1,
                binding,
                Maturity.MATURE,
            )
            yield (x, r, out.h, out.regime, sign, unmanaged, ceiling, floor,
                   label.region)
