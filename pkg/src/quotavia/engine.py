"""Time integration of the managed stock with event detection.

The stock follows ``dx/dt = growth(x) - harvest(x, r)``.  The recommendation
``r`` is piecewise constant between controller decisions; the negotiated
harvest reacts to the stock instantaneously, so the integrator re-solves the
negotiation at every Runge-Kutta stage.  Violations of the viability floors,
region crossings, moratorium transitions and extinction are recorded as
time-stamped events.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable

from .control import (
    ControllerState,
    Observation,
    Strategy,
    conservative_recommend,
    ichthyocentric_recommend,
    qualitative_step,
)
from .econ import (
    EconParams,
    Recruitment,
    Regime,
    _nash_point,
    realized_unmanaged_harvest,
)
from .viability import (
    Maturity,
    Region,
    ViabilityBounds,
    check_viability_domain,
    classify_region,
)

__all__ = [
    "StrategySettings",
    "SimConfig",
    "Sample",
    "Event",
    "TrajectoryRecord",
    "CellResult",
    "step",
    "simulate",
    "sweep",
]

# Deadband below which a floor comparison does not flip the viability flag;
# keeps an exactly-on-the-floor trajectory from flickering events.
_VIABILITY_TOL = 1e-9
_BINDING_TOL = 1e-12

EVENT_VIOLATION = "ViabilityViolation"
EVENT_RECOVERY = "ViabilityRecovery"
EVENT_REGION = "RegionCrossing"
EVENT_MORATORIUM_START = "MoratoriumStart"
EVENT_MORATORIUM_END = "MoratoriumEnd"
EVENT_EXTINCTION = "Extinction"


@dataclass(frozen=True)
class StrategySettings:
    """Controller seed carried by a scenario.

    ``initial_recommendation = None`` lets the qualitative controller start
    from half the realized unmanaged catch.  ``initial_trend`` seeds the
    first trend observation; when set, the qualitative controller decides
    already at t = 0 (a fishery with a pre-model history), otherwise its
    first decision waits for one measured control interval.
    """

    strategy: Strategy
    rate: float = 0.05
    floor_step: float | None = None          # None -> 1e-3 * peak recruitment
    initial_recommendation: float | None = None
    initial_maturity: Maturity = Maturity.EMERGING
    initial_trend: int | None = None
    moratorium_exit_intervals: int = 5
    trend_deadband: float | None = None      # None -> 1e-6 * capacity

    def __post_init__(self) -> None:
        if not self.rate > 0.0:
            raise ValueError("rate must be positive")
        if self.initial_recommendation is not None and self.initial_recommendation < 0.0:
            raise ValueError("initial_recommendation must be non-negative")
        if self.moratorium_exit_intervals < 1:
            raise ValueError("moratorium_exit_intervals must be at least 1")


@dataclass(frozen=True)
class SimConfig:
    initial_stock: float
    settings: StrategySettings
    dt: float = 0.01
    horizon: float = 200.0
    control_interval: float = 0.1
    record_stride: int = 1

    def __post_init__(self) -> None:
        if not self.initial_stock > 0.0:
            raise ValueError("initial_stock must be positive")
        if not self.dt > 0.0:
            raise ValueError("dt must be positive")
        if self.control_interval < self.dt:
            raise ValueError("control_interval must be at least dt")
        ratio = self.control_interval / self.dt
        if abs(ratio - round(ratio)) > 1e-9 * max(ratio, 1.0):
            raise ValueError("control_interval must be an integer multiple of dt")
        if self.horizon < self.control_interval:
            raise ValueError("horizon must cover at least one control interval")
        if self.record_stride < 1:
            raise ValueError("record_stride must be at least 1")


@dataclass(frozen=True)
class Sample:
    t: float
    x: float
    r: float
    h: float
    q_1: float
    q_2: float
    regime: Regime
    region: Region
    maturity: Maturity
    viable_ecological: bool
    viable_economic: bool


@dataclass(frozen=True)
class Event:
    t: float
    kind: str
    detail: dict = field(default_factory=dict)


@dataclass
class TrajectoryRecord:
    """Sampled trajectory plus its event log.

    During a moratorium the recorded harvest and quotas are the realized
    (zero) ones while ``regime`` keeps reporting what the negotiation at the
    current stock and recommendation would yield, so regime tags always
    recompute from (x, r).
    """

    samples: list[Sample]
    events: list[Event]
    metadata: dict

    def first_event(self, kind: str) -> Event | None:
        for event in self.events:
            if event.kind == kind:
                return event
        return None

    def mean_harvest(self, t_from: float = 0.0) -> float:
        values = [s.h for s in self.samples if s.t >= t_from]
        return sum(values) / len(values)


def step(x: float, h: float, rec: Recruitment, dt: float) -> float:
    """One classical fourth-order step of ``dx/dt = growth(x) - h`` with the
    harvest held constant; the result is clamped at zero."""
    if x < 0.0:
        raise ValueError("stock must be non-negative")
    if h < 0.0:
        raise ValueError("harvest must be non-negative")
    if not dt > 0.0:
        raise ValueError("dt must be positive")
    k1 = rec.rate(x) - h
    k2 = rec.rate(x + 0.5 * dt * k1) - h
    k3 = rec.rate(x + 0.5 * dt * k2) - h
    k4 = rec.rate(x + dt * k3) - h
    return max(x + dt * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0, 0.0)


def _closed_loop_rhs(params: EconParams, rec: Recruitment, r: float) -> Callable[[float], float]:
    def rhs(x: float) -> float:
        if x <= 0.0:
            return 0.0
        return rec.rate(x) - _nash_point(params, x, r)[2]
    return rhs


def _rk4(rhs: Callable[[float], float], x: float, dt: float) -> float:
    k1 = rhs(x)
    k2 = rhs(x + 0.5 * dt * k1)
    k3 = rhs(x + 0.5 * dt * k2)
    k4 = rhs(x + dt * k3)
    return x + dt * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0


def _initial_recommendation(params: EconParams, rec: Recruitment,
                            bounds: ViabilityBounds, settings: StrategySettings,
                            x: float) -> float:
    if settings.strategy is Strategy.ICHTHYOCENTRIC:
        return ichthyocentric_recommend(rec, x)
    if settings.strategy is Strategy.CONSERVATIVE:
        return conservative_recommend(params, bounds, x)
    if settings.initial_recommendation is not None:
        return settings.initial_recommendation
    return 0.5 * realized_unmanaged_harvest(params, x)


def simulate(params: EconParams, rec: Recruitment, bounds: ViabilityBounds,
             cfg: SimConfig) -> TrajectoryRecord:
    """Run one closed-loop trajectory.

    Every control interval the strategy updates the recommendation from its
    observations; every dt the negotiation outcome is re-evaluated at the
    current stock and the stock is advanced.  Pathological states surface as
    events, never as exceptions.
    """
    settings = cfg.settings
    dt = cfg.dt
    per_control = round(cfg.control_interval / dt)
    n_steps = round(cfg.horizon / dt)
    deadband = (settings.trend_deadband if settings.trend_deadband is not None
                else 1e-6 * rec.capacity)
    floor_step = (settings.floor_step if settings.floor_step is not None
                  else 1e-3 * rec.peak_rate)

    state = ControllerState(
        strategy=settings.strategy,
        recommendation=_initial_recommendation(params, rec, bounds, settings, cfg.initial_stock),
        maturity=settings.initial_maturity,
        rate=settings.rate,
        floor_step=floor_step,
        exit_intervals=settings.moratorium_exit_intervals,
    )

    try:
        verdict = check_viability_domain(params, rec, bounds)
    except ValueError:
        verdict = None  # unmanaged fishery has no threshold curves

    events: list[Event] = []
    samples: list[Sample] = []
    x = cfg.initial_stock
    extinct = False
    trend = settings.initial_trend if settings.initial_trend is not None else 1
    prev_control_x = x

    def observe(t: float) -> Observation:
        q1, q2, h, _ = _nash_point(params, x, state.recommendation)
        if state.moratorium or extinct:
            h = 0.0
        return Observation(
            trend_sign=trend,
            harvest=h,
            recommendation=state.recommendation,
            binding=h + _BINDING_TOL >= state.recommendation,
            stock=x,
        )

    def control_update(t: float) -> None:
        if settings.strategy is Strategy.ICHTHYOCENTRIC:
            state.recommendation = ichthyocentric_recommend(rec, x)
        elif settings.strategy is Strategy.CONSERVATIVE:
            state.recommendation = conservative_recommend(params, bounds, x)
        else:
            was_moratorium = state.moratorium
            qualitative_step(state, observe(t), bounds)
            if state.moratorium and not was_moratorium:
                events.append(Event(t, EVENT_MORATORIUM_START))
            elif was_moratorium and not state.moratorium:
                events.append(Event(t, EVENT_MORATORIUM_END))

    # A seeded trend is pre-model history: the qualitative controller then
    # decides already at t = 0.
    if settings.strategy is Strategy.QUALITATIVE and settings.initial_trend is not None:
        control_update(0.0)

    def region_at(t: float) -> Region:
        obs = observe(t)
        harvest_sign = 1 if obs.harvest >= bounds.harvest_floor else -1
        return classify_region(obs.trend_sign, harvest_sign, obs.binding,
                               state.maturity).region

    region = region_at(0.0)
    prev_flags: tuple[bool, bool] | None = None

    for k in range(n_steps + 1):
        t = k * dt
        if k > 0 and k % per_control == 0:
            raw = x - prev_control_x
            trend = -1 if raw <= -deadband else 1
            prev_control_x = x
            control_update(t)
            new_region = region_at(t)
            if new_region is not region:
                events.append(Event(t, EVENT_REGION,
                                    {"from": region.value, "to": new_region.value}))
                region = new_region

        q1, q2, h, regime = _nash_point(params, max(x, 1e-300), state.recommendation)
        if state.moratorium or extinct:
            q1 = q2 = h = 0.0

        flags = (x >= bounds.stock_floor - _VIABILITY_TOL,
                 h >= bounds.harvest_floor - _VIABILITY_TOL)
        if prev_flags is not None:
            for which, before, now in (("ecological", prev_flags[0], flags[0]),
                                       ("economic", prev_flags[1], flags[1])):
                if before and not now:
                    events.append(Event(t, EVENT_VIOLATION, {"which": which}))
                elif now and not before:
                    events.append(Event(t, EVENT_RECOVERY, {"which": which}))
        prev_flags = flags

        if k % cfg.record_stride == 0 or k == n_steps:
            samples.append(Sample(t, x, state.recommendation, h, q1, q2, regime,
                                  region, state.maturity, flags[0], flags[1]))
        if k == n_steps:
            break

        if state.moratorium or extinct:
            x_next = _rk4(lambda s: rec.rate(s) if s > 0.0 else 0.0, x, dt)
        else:
            x_next = _rk4(_closed_loop_rhs(params, rec, state.recommendation), x, dt)
        if x_next <= 0.0:
            if not extinct:
                events.append(Event((k + 1) * dt, EVENT_EXTINCTION))
                extinct = True
            x_next = 0.0
        x = x_next

    return TrajectoryRecord(samples=samples, events=events,
                            metadata={"viability_verdict": verdict,
                                      "strategy": settings.strategy.value})


@dataclass(frozen=True)
class CellResult:
    """Per-cell summary of a parameter sweep."""

    values: tuple
    violated: bool
    first_violation: float | None
    terminal_stock: float
    mean_harvest: float
    error: str | None = None


def summarize(record: TrajectoryRecord, values: tuple = ()) -> CellResult:
    violation = record.first_event(EVENT_VIOLATION)
    return CellResult(
        values=values,
        violated=violation is not None,
        first_violation=violation.t if violation is not None else None,
        terminal_stock=record.samples[-1].x,
        mean_harvest=record.mean_harvest(),
    )


def sweep(build: Callable[[dict], tuple[EconParams, Recruitment, ViabilityBounds, SimConfig]],
          axes: list[tuple[str, list]]) -> list[CellResult]:
    """One simulation per cell of the cartesian axis grid.

    ``build`` maps a field->value override dict to simulation inputs.
    Per-cell failures are recorded in the grid instead of aborting it;
    results are ordered by row-major cell index, so the sweep is
    deterministic and any cell reproduces standalone.
    """
    fields = [name for name, _ in axes]
    grids = [values for _, values in axes]
    results: list[CellResult] = []
    for combo in itertools.product(*grids) if grids else [()]:
        overrides = dict(zip(fields, combo))
        try:
            params, rec, bounds, cfg = build(overrides)
            record = simulate(params, rec, bounds, cfg)
            results.append(summarize(record, tuple(combo)))
        except Exception as exc:  # recorded in-grid, sweep continues
            results.append(CellResult(tuple(combo), False, None,
                                      math.nan, math.nan,
                                      error=f"{type(exc).__name__}: {exc}"))
    return results
