"""Two-group catch-quota negotiation: costs, Nash quotas, total harvest.

A scientific institution opens each negotiation round with a recommendation
``r`` for the total catch.  Two groups of fishing firms then pick individual
quotas, trading harvest profit against the political cost of pushing the
agreed total above the recommendation.  Everything in this module is a
closed-form evaluation of that game's unique Nash equilibrium under
non-negative quotas, plus the elementary ingredients (recruitment, profit)
it is built from.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

__all__ = [
    "BOUNDARY_TOL",
    "Regime",
    "EconParams",
    "DerivedCoeffs",
    "Recruitment",
    "NegotiationOutcome",
    "recruitment",
    "unmanaged_harvest",
    "realized_unmanaged_harvest",
    "binding_harvest",
    "individual_quotas",
    "total_harvest",
    "harvest_level",
    "profit",
]

# Absolute tolerance for regime-boundary comparisons on harvest quantities.
# Exact equality at a boundary resolves to the non-binding branch.
BOUNDARY_TOL = 1e-12

_SHAPE_GRID = 256


class Regime(Enum):
    """How the negotiated harvest relates to the recommendation."""

    BINDING = "binding"
    NON_BINDING = "non_binding"
    SHUTDOWN_UNPROFITABLE = "shutdown_unprofitable"
    SHUTDOWN_RESTRICTED = "shutdown_restricted"


@dataclass(frozen=True)
class EconParams:
    """Cost, deviation-cost and price parameters of the two fishing groups.

    Variable costs of group ``i`` are ``(alpha_i q + beta_i q**2) / x``:
    increasing in the catch ``q``, decreasing in the available stock ``x``.
    ``kappa_i`` weighs the quadratic cost a group incurs when the agreed
    total exceeds the recommendation; ``kappa_1 = kappa_2 = 0`` encodes a
    fishery without management.  ``price`` is the exogenous market price.
    """

    alpha_1: float
    alpha_2: float
    beta_1: float
    beta_2: float
    kappa_1: float
    kappa_2: float
    price: float

    def __post_init__(self) -> None:
        for name in ("alpha_1", "alpha_2", "beta_1", "beta_2", "price"):
            if not getattr(self, name) > 0.0:
                raise ValueError(f"{name} must be positive")
        for name in ("kappa_1", "kappa_2"):
            if not getattr(self, name) >= 0.0:
                raise ValueError(f"{name} must be non-negative")

    @property
    def unmanaged(self) -> bool:
        """True when deviation costs vanish for both groups."""
        return self.kappa_1 == 0.0 and self.kappa_2 == 0.0

    def coeffs(self) -> "DerivedCoeffs":
        return DerivedCoeffs(
            mean_beta=0.5 * (self.beta_1 + self.beta_2),
            deviation_cross=self.beta_1 * self.kappa_2 + self.beta_2 * self.kappa_1,
            cost_cross=0.5 * (self.alpha_1 * self.beta_2 + self.alpha_2 * self.beta_1),
            beta_product=self.beta_1 * self.beta_2,
        )


@dataclass(frozen=True)
class DerivedCoeffs:
    """Aggregate coefficients the negotiation algebra runs on.

    Always recomputed from :class:`EconParams`, never stored on their own.
    """

    mean_beta: float        # (beta_1 + beta_2) / 2
    deviation_cross: float  # beta_1 kappa_2 + beta_2 kappa_1
    cost_cross: float       # (alpha_1 beta_2 + alpha_2 beta_1) / 2
    beta_product: float     # beta_1 beta_2


@dataclass(frozen=True)
class Recruitment:
    """Hump-shaped stock growth, logistic by default.

    ``rate`` may be overridden with another growth law; the required shape
    (zero at the origin, strictly rising up to a single peak at
    ``peak_stock``, strictly falling beyond it) is checked numerically on a
    256-point grid at construction so a wrong shape fails fast.
    """

    growth: float
    capacity: float

    def __post_init__(self) -> None:
        if not self.growth > 0.0:
            raise ValueError("growth must be positive")
        if not self.capacity > 0.0:
            raise ValueError("capacity must be positive")
        self._validate_shape()

    @property
    def peak_stock(self) -> float:
        """Stock level with the largest sustainable yield."""
        return 0.5 * self.capacity

    @property
    def peak_rate(self) -> float:
        """Largest recruitment rate (at ``peak_stock``)."""
        return self.rate(self.peak_stock)

    def rate(self, x: float) -> float:
        return self.growth * x * (1.0 - x / self.capacity)

    def _validate_shape(self) -> None:
        scale = max(abs(self.rate(self.peak_stock)), 1e-300)
        if abs(self.rate(0.0)) > 1e-9 * scale:
            raise ValueError("recruitment must vanish at zero stock")
        peak = self.peak_stock
        xs = [self.capacity * (i + 1) / _SHAPE_GRID for i in range(_SHAPE_GRID)]
        prev_x, prev_v = 0.0, 0.0
        for x, v in zip(xs, (self.rate(x) for x in xs)):
            if x <= peak and not v > 0.0:
                raise ValueError("recruitment must be positive below the peak")
            if x <= peak and not v > prev_v:
                raise ValueError("recruitment must increase below the peak")
            if prev_x >= peak and not v < prev_v:
                raise ValueError("recruitment must decrease above the peak")
            prev_x, prev_v = x, v


@dataclass(frozen=True)
class NegotiationOutcome:
    """Equilibrium of one negotiation round: quotas, total catch, regime tag."""

    q_1: float
    q_2: float
    h: float
    regime: Regime


def _require_stock(x: float) -> None:
    if not x > 0.0:
        raise ValueError("stock must be positive")


def _require_recommendation(r: float) -> None:
    if not r >= 0.0:
        raise ValueError("recommendation must be non-negative")


def recruitment(rec: Recruitment, x: float) -> float:
    """Growth rate of the stock at biomass ``x`` (non-negative domain)."""
    if x < 0.0:
        raise ValueError("stock must be non-negative")
    return rec.rate(x)


def unmanaged_harvest(params: EconParams, x: float) -> float:
    """Total catch the two groups would agree on with zero deviation costs.

    This is the hard cap on any negotiated harvest.  A negative value means
    fishing is unprofitable at this stock level even without management.
    """
    _require_stock(x)
    c = params.coeffs()
    return (c.mean_beta * params.price * x - c.cost_cross) / c.beta_product


def realized_unmanaged_harvest(params: EconParams, x: float) -> float:
    """Catch an unmanaged fishery actually lands at stock ``x``.

    Groups whose own optimum is negative stay ashore, so this can exceed
    :func:`unmanaged_harvest` when cost parameters are strongly asymmetric.
    """
    _require_stock(x)
    px = params.price * x
    q1 = (px - params.alpha_1) / (2.0 * params.beta_1)
    q2 = (px - params.alpha_2) / (2.0 * params.beta_2)
    return max(q1, 0.0) + max(q2, 0.0)


def binding_harvest(params: EconParams, x: float, r: float) -> float:
    """Total harvest when the recommendation binds and both groups fish.

    Strictly increasing in both ``r`` and ``x``.  Undefined for a fishery
    without deviation costs.
    """
    _require_stock(x)
    _require_recommendation(r)
    c = params.coeffs()
    if c.deviation_cross == 0.0:
        raise ValueError("binding harvest undefined without deviation costs")
    wx = c.deviation_cross * x
    return (c.mean_beta * params.price * x + wx * r - c.cost_cross) / (c.beta_product + wx)


def _nash_point(params: EconParams, x: float, r: float) -> tuple[float, float, float, Regime]:
    """Constrained Nash equilibrium for stock ``x`` and recommendation ``r``.

    Solves the complementarity problem directly: quotas are clamped at zero
    and the remaining group's first-order condition is re-solved, so the
    result agrees with best-response iteration under q >= 0 everywhere.
    With both groups active this reduces to the standard four-branch total
    harvest function.
    """
    p = params.price
    b1, b2 = params.beta_1, params.beta_2
    k1, k2 = params.kappa_1, params.kappa_2
    gain1 = p * x - params.alpha_1
    gain2 = p * x - params.alpha_2
    opt1 = gain1 / (2.0 * b1)
    opt2 = gain2 / (2.0 * b2)
    free1 = opt1 if opt1 > 0.0 else 0.0
    free2 = opt2 if opt2 > 0.0 else 0.0
    free = free1 + free2
    w = b1 * k2 + b2 * k1

    if w == 0.0 or free <= r + BOUNDARY_TOL:
        if free <= BOUNDARY_TOL:
            return 0.0, 0.0, 0.0, Regime.SHUTDOWN_UNPROFITABLE
        return free1, free2, free, Regime.NON_BINDING

    # The agreed total will exceed r, so deviation costs shape the outcome.
    if opt1 >= 0.0 and opt2 >= 0.0:
        wx = w * x
        h = (0.5 * (b2 * gain1 + b1 * gain2) + wx * r) / (b1 * b2 + wx)
        excess = h - r
        q1 = opt1 - k1 * x * excess / b1
        q2 = opt2 - k2 * x * excess / b2
        if q1 >= 0.0 and q2 >= 0.0:
            return q1, q2, h, _deviation_regime(h, free)
        active = 2 if q1 < 0.0 else 1
    else:
        active = 1 if opt1 > 0.0 else 2

    # Remaining group's first-order condition with the other held at zero.
    if active == 1:
        q = (gain1 + 2.0 * k1 * x * r) / (2.0 * (b1 + k1 * x))
        q = q if q > 0.0 else 0.0
        return q, 0.0, q, _deviation_regime(q, free)
    q = (gain2 + 2.0 * k2 * x * r) / (2.0 * (b2 + k2 * x))
    q = q if q > 0.0 else 0.0
    return 0.0, q, q, _deviation_regime(q, free)


def _deviation_regime(h: float, free: float) -> Regime:
    if h > BOUNDARY_TOL:
        return Regime.BINDING
    # Retained defensively: unreachable for r >= 0 under this cost model.
    return Regime.SHUTDOWN_RESTRICTED if free > BOUNDARY_TOL else Regime.SHUTDOWN_UNPROFITABLE


def total_harvest(params: EconParams, x: float, r: float) -> NegotiationOutcome:
    """Resolve one negotiation round at stock ``x``, recommendation ``r``.

    The returned total never exceeds what the groups would catch with no
    management at all; equality requires a non-binding recommendation.
    """
    _require_stock(x)
    _require_recommendation(r)
    q1, q2, h, regime = _nash_point(params, x, r)
    return NegotiationOutcome(q_1=q1, q_2=q2, h=h, regime=regime)


def harvest_level(params: EconParams, x: float, r: float) -> float:
    """Total negotiated harvest only; fast path for tight simulation loops."""
    _require_stock(x)
    _require_recommendation(r)
    return _nash_point(params, x, r)[2]


def individual_quotas(params: EconParams, x: float, r: float) -> tuple[float, float]:
    """Equilibrium quota pair; quotas sum to the resolved total harvest."""
    _require_stock(x)
    _require_recommendation(r)
    q1, q2, _, _ = _nash_point(params, x, r)
    return q1, q2


def profit(params: EconParams, group: int, q_own: float, q_other: float,
           x: float, r: float) -> float:
    """Per-round profit of one group at a given quota allocation.

    The deviation term vanishes whenever the sum of quotas stays at or
    below the recommendation.
    """
    if group not in (1, 2):
        raise ValueError("group must be 1 or 2")
    _require_stock(x)
    _require_recommendation(r)
    if q_own < 0.0 or q_other < 0.0:
        raise ValueError("quotas must be non-negative")
    if group == 1:
        alpha, beta, kappa = params.alpha_1, params.beta_1, params.kappa_1
    else:
        alpha, beta, kappa = params.alpha_2, params.beta_2, params.kappa_2
    over = q_own + q_other - r
    deviation = kappa * over * over if over > 0.0 else 0.0
    return params.price * q_own - (alpha * q_own + beta * q_own * q_own) / x - deviation
