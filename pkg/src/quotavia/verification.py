"""Randomized cross-verification suites.

Each suite checks one family of closed forms against an independent route:
the negotiation equilibrium against best-response iteration, the
viability-domain conditions against a brute-force existence search over
recommendation grids, and the two threshold biconditionals against realized
harvests.  The suites are deterministic given a seed and are shared between
the test suite and the ``verify`` command.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .econ import (
    BOUNDARY_TOL,
    EconParams,
    Recruitment,
    binding_harvest,
    harvest_level,
    profit,
    realized_unmanaged_harvest,
    total_harvest,
    unmanaged_harvest,
)
from .oracle import equilibrium
from .viability import (
    ViabilityBounds,
    catch_within_recruitment_flags,
    check_viability_domain,
    recommendation_floor,
    recruitment_meets_floor_flags,
)

__all__ = [
    "DEFAULT_SEED",
    "SuiteReport",
    "harvest_curve",
    "viability_existence_search",
    "nash_agreement_suite",
    "viability_domain_suite",
    "floor_biconditional_suite",
    "catch_cap_biconditional_suite",
    "monotonicity_suite",
    "run_all",
]

DEFAULT_SEED = 1729

_MARGIN_EPS = 1e-6  # instances closer than this to a condition boundary are resampled


@dataclass(frozen=True)
class SuiteReport:
    name: str
    instances: int
    failures: int
    max_error: float
    elapsed: float
    notes: str = ""

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f" ({self.notes})" if self.notes else ""
        return (f"{status} {self.name}: {self.instances} instances, "
                f"{self.failures} failures, max error {self.max_error:.3e}, "
                f"{self.elapsed:.1f}s{extra}")


def _log_uniform(rng: np.random.Generator, lo: float, hi: float, size=None):
    return np.exp(rng.uniform(np.log(lo), np.log(hi), size))


def _random_params(rng: np.random.Generator) -> EconParams:
    vals = _log_uniform(rng, 0.1, 10.0, 7)
    return EconParams(*map(float, vals))


def _biased_params(rng: np.random.Generator, x: float) -> EconParams | None:
    """Random parameters with linear costs biased into profitability at ``x``
    (both groups' unconstrained optima non-negative)."""
    p = float(_log_uniform(rng, 0.1, 10.0))
    hi = min(10.0, 0.95 * p * x)
    if hi <= 0.1:
        return None
    a1, a2 = (float(v) for v in _log_uniform(rng, 0.1, hi, 2))
    b1, b2, k1, k2 = (float(v) for v in _log_uniform(rng, 0.1, 10.0, 4))
    return EconParams(a1, a2, b1, b2, k1, k2, p)


def _interior_params(rng: np.random.Generator, x: float,
                     attempts: int = 64) -> EconParams | None:
    for _ in range(attempts):
        params = _biased_params(rng, x)
        if params is not None and _interior_negotiation(params, x):
            return params
    return None


def _logistic_rate(growth: float, capacity: float, x: float) -> float:
    return growth * x * (1.0 - x / capacity)


def _ceiling_from_rate(params: EconParams, rate: float, x: float) -> float:
    c = params.coeffs()
    wx = c.deviation_cross * x
    return (rate * (wx + c.beta_product) + c.cost_cross) / wx - c.mean_beta * params.price / c.deviation_cross


def _interior_negotiation(params: EconParams, x: float) -> bool:
    """True when the equilibrium at ``x`` keeps both groups active for every
    recommendation, i.e. the quota clamp never engages.  The threshold
    biconditionals hold on exactly this set."""
    px = params.price * x
    opt1 = (px - params.alpha_1) / (2.0 * params.beta_1)
    opt2 = (px - params.alpha_2) / (2.0 * params.beta_2)
    if opt1 < 0.0 or opt2 < 0.0:
        return False
    if opt1 + opt2 <= 0.0:
        return True
    c = params.coeffs()
    if c.deviation_cross == 0.0:
        return True
    wx = c.deviation_cross * x
    h0 = (c.mean_beta * params.price * x - c.cost_cross) / (c.beta_product + wx)
    if h0 <= 0.0:
        return True
    # deviation pressure is largest at r = 0
    return (opt1 - params.kappa_1 * x * h0 / params.beta_1 >= 0.0
            and opt2 - params.kappa_2 * x * h0 / params.beta_2 >= 0.0)


def harvest_curve(params: EconParams, x_values, r_values) -> np.ndarray:
    """Vectorized negotiated total harvest on the (x, r) grid.

    Mirrors the scalar solve branch for branch; exercised against it in the
    tests so the brute-force searches can run on large grids.
    """
    X = np.asarray(x_values, dtype=float).reshape(-1, 1)
    R = np.asarray(r_values, dtype=float).reshape(1, -1)
    p = params.price
    b1, b2 = params.beta_1, params.beta_2
    k1, k2 = params.kappa_1, params.kappa_2
    gain1 = p * X - params.alpha_1
    gain2 = p * X - params.alpha_2
    opt1 = gain1 / (2.0 * b1)
    opt2 = gain2 / (2.0 * b2)
    free = np.maximum(opt1, 0.0) + np.maximum(opt2, 0.0)
    w = b1 * k2 + b2 * k1
    shape = (X.size, R.size)
    if w == 0.0:
        return np.broadcast_to(free, shape).copy()

    nondev = free <= R + BOUNDARY_TOL
    wx = w * X
    hb = (0.5 * (b2 * gain1 + b1 * gain2) + wx * R) / (b1 * b2 + wx)
    excess = hb - R
    q1i = opt1 - k1 * X * excess / b1
    q2i = opt2 - k2 * X * excess / b2
    both = (opt1 >= 0.0) & (opt2 >= 0.0)
    interior = ~nondev & both & (q1i >= 0.0) & (q2i >= 0.0)
    solo1 = ~nondev & ~interior & ((opt2 < 0.0) | (both & (q2i < 0.0)))
    solo2 = ~nondev & ~interior & ((opt1 < 0.0) | (both & (q1i < 0.0)))
    q1s = np.maximum((gain1 + 2.0 * k1 * X * R) / (2.0 * (b1 + k1 * X)), 0.0)
    q2s = np.maximum((gain2 + 2.0 * k2 * X * R) / (2.0 * (b2 + k2 * X)), 0.0)
    return np.where(nondev, np.broadcast_to(free, shape),
                    np.where(interior, hb,
                             np.where(solo1, q1s,
                                      np.where(solo2, q2s, 0.0))))


def viability_existence_search(params: EconParams, rec: Recruitment,
                               bounds: ViabilityBounds, r_points: int = 4096,
                               x_points: int = 64, span: float = 4.0) -> bool:
    """Brute-force counterpart of the viability-domain conditions.

    At the stock floor, scan a recommendation grid for a harvest that clears
    the harvest floor without exceeding recruitment (with bracket refinement
    when the feasible window is narrower than the grid); at sampled stocks
    above the floor, only the harvest floor must be reachable.
    """
    x_lo, h_lo = bounds.stock_floor, bounds.harvest_floor
    r_top = 3.0 * max(unmanaged_harvest(params, x_lo), 1.0)
    r_grid = np.linspace(0.0, r_top, r_points)
    xs_above = np.linspace(x_lo, span * rec.capacity, x_points + 1)[1:]
    grid = harvest_curve(params, np.concatenate(([x_lo], xs_above)), r_grid)

    ceiling = rec.rate(x_lo)
    row = grid[0]
    ok_floor = bool(np.any((row >= h_lo) & (row <= ceiling)))
    if not ok_floor and row.max() >= h_lo and row.min() <= ceiling:
        idx = int(np.argmax(row >= h_lo))
        if idx > 0:
            lo, hi = float(r_grid[idx - 1]), float(r_grid[idx])
            for _ in range(80):
                mid = 0.5 * (lo + hi)
                if harvest_level(params, x_lo, mid) < h_lo:
                    lo = mid
                else:
                    hi = mid
            witness = harvest_level(params, x_lo, hi)
            ok_floor = h_lo - 1e-9 <= witness <= ceiling + 1e-12

    ok_above = bool(np.all(grid[1:].max(axis=1) >= h_lo))
    return ok_floor and ok_above


def nash_agreement_suite(seed: int = DEFAULT_SEED, instances: int = 1000,
                         rtol: float = 1e-6) -> SuiteReport:
    """Closed-form negotiation vs best-response oracle on random instances.

    Also certifies each closed-form point as a Nash point (no profitable
    unilateral perturbation) and checks the harvest cap.
    """
    rng = np.random.default_rng(seed)
    start = time.perf_counter()
    failures = 0
    max_err = 0.0
    eps = 1e-4
    for _ in range(instances):
        params = _random_params(rng)
        x = float(_log_uniform(rng, 0.1, 10.0))
        cap = max(unmanaged_harvest(params, x), 0.0)
        r = float(rng.uniform(0.0, 2.0 * cap)) if cap > 0.0 else 0.0
        out = total_harvest(params, x, r)
        res = equilibrium(params, x, r)
        err = max(
            abs(out.h - (res.q_1 + res.q_2)) / max(1.0, abs(out.h)),
            abs(out.q_1 - res.q_1) / max(1.0, abs(out.q_1)),
            abs(out.q_2 - res.q_2) / max(1.0, abs(out.q_2)),
        )
        max_err = max(max_err, err)
        bad = (not res.converged) or err > rtol
        for group, own, other in ((1, out.q_1, out.q_2), (2, out.q_2, out.q_1)):
            base = profit(params, group, own, other, x, r)
            for candidate in (own + eps, max(own - eps, 0.0)):
                if profit(params, group, candidate, other, x, r) - base > 1e-8:
                    bad = True
        if out.h > max(realized_unmanaged_harvest(params, x), 0.0) + 1e-9:
            bad = True
        if _interior_negotiation(params, x) and out.h > max(cap, 0.0) + 1e-9:
            bad = True
        failures += bad
    return SuiteReport("nash_agreement", instances, failures, max_err,
                       time.perf_counter() - start)


def viability_domain_suite(seed: int = DEFAULT_SEED,
                            instances: int = 2000) -> SuiteReport:
    """Viability-domain conditions vs brute-force existence search.

    Instances are sampled inside the interior-negotiation regime and away
    from condition margins below 1e-6, where the equivalence is exact.
    """
    rng = np.random.default_rng(seed)
    start = time.perf_counter()
    failures = 0
    accepted = 0
    skipped = 0
    while accepted < instances:
        growth = float(_log_uniform(rng, 0.2, 5.0))
        capacity = float(_log_uniform(rng, 0.5, 8.0))
        x_lo = capacity * float(rng.uniform(0.15, 0.9))
        params = _interior_params(rng, x_lo)
        if params is None:
            continue
        rate_lo = _logistic_rate(growth, capacity, x_lo)
        h_lo = rate_lo * float(_log_uniform(rng, 0.2, 1.4))
        if h_lo <= 0.0:
            continue
        bounds = ViabilityBounds(stock_floor=x_lo, harvest_floor=h_lo)
        rec = Recruitment(growth, capacity)
        verdict = check_viability_domain(params, rec, bounds)
        margins = (verdict.margin_floor_attainable, verdict.margin_recruitment,
                   verdict.margin_admissible)
        if min(abs(m) for m in margins) < _MARGIN_EPS:
            skipped += 1
            continue
        accepted += 1
        if viability_existence_search(params, rec, bounds) != verdict.viable:
            failures += 1
    return SuiteReport("viability_domain_equivalence", accepted, failures, 0.0,
                       time.perf_counter() - start,
                       notes=f"{skipped} margin-resamples")


def floor_biconditional_suite(seed: int = DEFAULT_SEED,
                          instances: int = 10000) -> SuiteReport:
    """Threshold vs realized flags for economic viability of the
    recruitment recommendation, inside verified viability domains."""
    rng = np.random.default_rng(seed)
    start = time.perf_counter()
    failures = 0
    accepted = 0
    while accepted < instances:
        growth = float(_log_uniform(rng, 0.2, 5.0))
        capacity = float(_log_uniform(rng, 0.5, 8.0))
        x_lo = capacity * float(rng.uniform(0.1, 0.7))
        params = _interior_params(rng, x_lo)
        if params is None:
            continue
        rate_lo = _logistic_rate(growth, capacity, x_lo)
        h_lo = rate_lo * float(rng.uniform(0.1, 0.95))
        if h_lo <= 0.0:
            continue
        bounds = ViabilityBounds(stock_floor=x_lo, harvest_floor=h_lo)
        floor_lo = recommendation_floor(params, bounds, x_lo)
        viable = (unmanaged_harvest(params, x_lo) >= floor_lo
                  and max(floor_lo, _ceiling_from_rate(params, rate_lo, x_lo)) >= 0.0)
        if not viable:
            continue
        x = float(rng.uniform(x_lo, capacity))
        if not _interior_negotiation(params, x):
            continue
        rate_x = _logistic_rate(growth, capacity, x)
        if abs(rate_x - recommendation_floor(params, bounds, x)) < 1e-9:
            continue
        if abs(harvest_level(params, x, max(rate_x, 0.0)) - h_lo) < 1e-9:
            continue
        accepted += 1
        rec = Recruitment(growth, capacity)
        left, right = recruitment_meets_floor_flags(params, rec, bounds, x)
        failures += left != right
    return SuiteReport("floor_biconditional", accepted, failures, 0.0,
                       time.perf_counter() - start)


def catch_cap_biconditional_suite(seed: int = DEFAULT_SEED,
                          instances: int = 10000) -> SuiteReport:
    """Realized vs threshold flags for catch staying within recruitment."""
    rng = np.random.default_rng(seed)
    start = time.perf_counter()
    failures = 0
    accepted = 0
    while accepted < instances:
        growth = float(_log_uniform(rng, 0.2, 5.0))
        capacity = float(_log_uniform(rng, 0.5, 8.0))
        x = capacity * float(rng.uniform(0.05, 0.95))
        # both groups profitable; a clamped group breaks the threshold form
        params = _biased_params(rng, x)
        if params is None:
            continue
        if abs(_logistic_rate(growth, capacity, x) - unmanaged_harvest(params, x)) < 1e-9:
            continue
        accepted += 1
        left, right = catch_within_recruitment_flags(params, Recruitment(growth, capacity), x)
        failures += left != right
    return SuiteReport("catch_cap_biconditional", accepted, failures, 0.0,
                       time.perf_counter() - start)


def monotonicity_suite(seed: int = DEFAULT_SEED, instances: int = 400) -> SuiteReport:
    """Slope signs, the binding-observability equivalence and regime-boundary
    continuity on random parameter draws."""
    rng = np.random.default_rng(seed)
    start = time.perf_counter()
    failures = 0
    max_jump = 0.0
    for _ in range(instances):
        params = _random_params(rng)
        h_lo = float(_log_uniform(rng, 0.05, 2.0))
        bounds = ViabilityBounds(stock_floor=1.0, harvest_floor=h_lo)
        draws = np.sort(_log_uniform(rng, 0.1, 10.0, 8))
        xs = [float(draws[0])]
        for value in draws[1:]:         # keep grid spacing above rounding noise
            if value > xs[-1] * 1.001:
                xs.append(float(value))
        bad = False
        for x in xs:
            unman = unmanaged_harvest(params, float(x))
            rs = np.linspace(0.0, 2.0 * max(unman, 1.0), 8)
            hseq = [binding_harvest(params, float(x), float(r)) for r in rs]
            if any(b <= a for a, b in zip(hseq, hseq[1:])):
                bad = True
            for r in rs:
                gap = unman - float(r)
                if abs(gap) > 1e-9 * max(1.0, abs(unman), float(r)):
                    bound_gap = binding_harvest(params, float(x), float(r)) - float(r)
                    if (gap > 0.0) != (bound_gap > 0.0):
                        bad = True
        r_fixed = 0.37
        hx = [binding_harvest(params, float(x), r_fixed) for x in xs]
        if any(b <= a for a, b in zip(hx, hx[1:])):
            bad = True
        unman = [unmanaged_harvest(params, float(x)) for x in xs]
        if any(b <= a for a, b in zip(unman, unman[1:])):
            bad = True
        floors = [recommendation_floor(params, bounds, float(x)) for x in xs]
        if any(b >= a for a, b in zip(floors, floors[1:])):
            bad = True
        x_mid = float(xs[len(xs) // 2])
        r_hat = unmanaged_harvest(params, x_mid)
        if r_hat > 1e-3:
            delta = 1e-6
            jump = abs(harvest_level(params, x_mid, r_hat - delta)
                       - harvest_level(params, x_mid, r_hat + delta))
            max_jump = max(max_jump, jump)
            if jump > 1e-4:
                bad = True
        failures += bad
    return SuiteReport("monotonicity", instances, failures, max_jump,
                       time.perf_counter() - start)


def run_all(seed: int = DEFAULT_SEED, instances: int | None = None) -> list[SuiteReport]:
    """Run every suite; ``instances`` overrides each suite's default count."""
    return [
        nash_agreement_suite(seed, instances or 1000),
        viability_domain_suite(seed + 1, instances or 2000),
        floor_biconditional_suite(seed + 2, instances or 10000),
        catch_cap_biconditional_suite(seed + 3, instances or 10000),
        monotonicity_suite(seed + 4, instances or 400),
    ]
