"""Closed-loop recommendation strategies.

Three interchangeable controllers produce a catch recommendation from the
observable state: a purely resource-based rule (recommend the recruitment),
an economically conservative rule (recommend just enough for the harvest
floor), and a qualitative rule table that reads only trend signs and
threshold comparisons.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .econ import EconParams, Recruitment
from .viability import Maturity, ViabilityBounds, recommendation_floor

__all__ = [
    "Strategy",
    "Observation",
    "ControllerState",
    "ichthyocentric_recommend",
    "conservative_recommend",
    "qualitative_step",
]


class Strategy(Enum):
    ICHTHYOCENTRIC = "ichthyocentric"
    CONSERVATIVE = "conservative"
    QUALITATIVE = "qualitative"


@dataclass(frozen=True)
class Observation:
    """What a controller may see at a decision point.

    The qualitative rules read only ``trend_sign``, the harvest/floor
    comparison and the binding flag.  ``stock`` is carried for strategies
    whose information model includes exact stock estimates and is ``None``
    otherwise, which makes the information firewall structural.
    """

    trend_sign: int
    harvest: float
    recommendation: float
    binding: bool
    stock: float | None = None


@dataclass
class ControllerState:
    """Mutable state of one controller, owned by a single simulation run."""

    strategy: Strategy
    recommendation: float = 0.0
    maturity: Maturity = Maturity.EMERGING
    moratorium: bool = False
    rate: float = 0.05              # multiplicative step per control interval
    floor_step: float = 0.0         # additive minimum increase, lets r leave 0
    exit_intervals: int = 5         # growing intervals needed to lift a moratorium
    growth_streak: int = 0

    def __post_init__(self) -> None:
        if self.recommendation < 0.0:
            raise ValueError("recommendation must be non-negative")
        if not self.rate > 0.0:
            raise ValueError("rate must be positive")
        if self.floor_step < 0.0:
            raise ValueError("floor_step must be non-negative")
        if self.exit_intervals < 1:
            raise ValueError("exit_intervals must be at least 1")


def ichthyocentric_recommend(rec: Recruitment, x: float) -> float:
    """Recommend exactly the estimated recruitment (clamped to zero above
    capacity, since recommendations cannot be negative)."""
    if x < 0.0:
        raise ValueError("stock must be non-negative")
    return max(rec.rate(x), 0.0)


def conservative_recommend(params: EconParams, bounds: ViabilityBounds, x: float) -> float:
    """Recommend the smallest value that secures the harvest floor."""
    return max(recommendation_floor(params, bounds, x), 0.0)


def _increase(state: ControllerState) -> None:
    state.recommendation += max(state.rate * state.recommendation, state.floor_step)


def _decrease(state: ControllerState) -> None:
    state.recommendation /= 1.0 + state.rate


def qualitative_step(state: ControllerState, obs: Observation,
                     bounds: ViabilityBounds) -> ControllerState:
    """Advance the qualitative rule table by one control interval.

    Rules, in priority order: during a moratorium nothing moves until the
    stock has grown for ``exit_intervals`` consecutive intervals; a
    non-binding recommendation is always reduced; while the stock grows the
    recommendation is raised (and the fishery turns mature on first reaching
    the growing-above-floor region); while it declines, a mature fishery
    lowers the recommendation when the catch clears the floor and closes the
    fishery entirely when it does not, whereas an emerging fishery steers
    the catch toward the floor from either side.
    """
    if state.moratorium:
        if obs.trend_sign > 0:
            state.growth_streak += 1
        else:
            state.growth_streak = 0
        if state.growth_streak >= state.exit_intervals:
            state.moratorium = False
            state.growth_streak = 0
        return state

    if not obs.binding:
        _decrease(state)
        return state

    above_floor = obs.harvest >= bounds.harvest_floor
    if obs.trend_sign >= 0:
        if above_floor and state.maturity is Maturity.EMERGING:
            state.maturity = Maturity.MATURE
        _increase(state)
    elif above_floor:
        _decrease(state)
    elif state.maturity is Maturity.MATURE:
        state.moratorium = True
        state.recommendation = 0.0
        state.growth_streak = 0
    else:
        _increase(state)
    return state
