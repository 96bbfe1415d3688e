"""Closed-form negotiation: frozen examples, regime dispatch, invariants."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quotavia import (
    EconParams,
    Recruitment,
    Regime,
    binding_harvest,
    individual_quotas,
    profit,
    realized_unmanaged_harvest,
    recruitment,
    total_harvest,
    unmanaged_harvest,
)
from quotavia.econ import harvest_level


def test_econ_params_validation():
    with pytest.raises(ValueError):
        EconParams(-1, 1, 1, 1, 1, 1, 2)
    with pytest.raises(ValueError):
        EconParams(1, 1, 0, 1, 1, 1, 2)
    with pytest.raises(ValueError):
        EconParams(1, 1, 1, 1, -0.1, 1, 2)
    with pytest.raises(ValueError):
        EconParams(1, 1, 1, 1, 1, 1, 0)
    assert EconParams(1, 1, 1, 1, 0, 0, 2).unmanaged


def test_derived_coeffs():
    params = EconParams(1, 2, 3, 4, 5, 6, 1)
    c = params.coeffs()
    assert c.mean_beta == pytest.approx(3.5)
    assert c.deviation_cross == pytest.approx(3 * 6 + 4 * 5)
    assert c.cost_cross == pytest.approx(0.5 * (1 * 4 + 2 * 3))
    assert c.beta_product == pytest.approx(12.0)


class TestRecruitment:
    def test_examples(self, logistic):
        assert recruitment(logistic, 0.0) == 0.0
        assert recruitment(logistic, 1.0) == pytest.approx(0.5)
        assert recruitment(logistic, 2.0) == pytest.approx(0.0)
        assert logistic.peak_stock == pytest.approx(1.0)
        assert logistic.peak_rate == pytest.approx(0.5)

    def test_negative_stock_rejected(self, logistic):
        with pytest.raises(ValueError):
            recruitment(logistic, -0.1)

    def test_bad_parameters_rejected(self):
        with pytest.raises(ValueError):
            Recruitment(growth=0.0, capacity=2.0)
        with pytest.raises(ValueError):
            Recruitment(growth=1.0, capacity=-2.0)

    def test_wrong_shape_rejected(self):
        class Monotone(Recruitment):
            def rate(self, x):
                return self.growth * x  # no hump

        with pytest.raises(ValueError):
            Monotone(growth=1.0, capacity=2.0)

    def test_shape_holds_on_grid(self, logistic):
        xs = np.linspace(1e-3, logistic.capacity, 257)
        vals = np.array([logistic.rate(float(x)) for x in xs])
        below = xs < logistic.peak_stock
        assert np.all(vals[below] > 0.0)
        assert np.all(np.diff(vals[below]) > 0.0)
        above = xs > logistic.peak_stock
        assert np.all(np.diff(vals[above]) < 0.0)


class TestUnmanagedHarvest:
    def test_examples(self, symmetric_params):
        assert unmanaged_harvest(symmetric_params, 1.0) == pytest.approx(1.0)
        assert unmanaged_harvest(symmetric_params, 0.5) == pytest.approx(0.0)
        assert unmanaged_harvest(symmetric_params, 0.4) == pytest.approx(-0.2)

    def test_bad_stock_rejected(self, symmetric_params):
        with pytest.raises(ValueError):
            unmanaged_harvest(symmetric_params, 0.0)

    def test_clamped_variant_drops_idle_group(self):
        # group 2 unprofitable: it stays ashore instead of fishing negatively
        params = EconParams(0.1, 10.0, 1.0, 10.0, 1.0, 1.0, 2.0)
        assert unmanaged_harvest(params, 1.0) == pytest.approx(0.55)
        assert realized_unmanaged_harvest(params, 1.0) == pytest.approx(0.95)


class TestBindingHarvest:
    def test_examples(self, symmetric_params):
        assert binding_harvest(symmetric_params, 1.0, 0.0) == pytest.approx(1 / 3)
        assert binding_harvest(symmetric_params, 1.0, 0.25) == pytest.approx(0.5)
        # joins the unmanaged level exactly at the regime boundary
        assert binding_harvest(symmetric_params, 1.0, 1.0) == pytest.approx(1.0)

    def test_requires_deviation_costs(self):
        params = EconParams(1, 1, 1, 1, 0, 0, 2)
        with pytest.raises(ValueError):
            binding_harvest(params, 1.0, 0.5)

    def test_rejects_bad_domain(self, symmetric_params):
        with pytest.raises(ValueError):
            binding_harvest(symmetric_params, 0.0, 0.5)
        with pytest.raises(ValueError):
            binding_harvest(symmetric_params, 1.0, -0.1)

    def test_monotone_in_recommendation_and_stock(self, symmetric_params):
        rs = np.linspace(0.0, 2.0, 40)
        hs = [binding_harvest(symmetric_params, 1.3, float(r)) for r in rs]
        assert all(b > a for a, b in zip(hs, hs[1:]))
        xs = np.linspace(0.2, 5.0, 40)
        hs = [binding_harvest(symmetric_params, float(x), 0.7) for x in xs]
        assert all(b > a for a, b in zip(hs, hs[1:]))


class TestTotalHarvest:
    def test_binding_example(self, symmetric_params):
        out = total_harvest(symmetric_params, 1.0, 0.5)
        assert out.regime is Regime.BINDING
        assert out.h == pytest.approx(2 / 3)

    def test_non_binding_example(self, symmetric_params):
        out = total_harvest(symmetric_params, 1.0, 2.0)
        assert out.regime is Regime.NON_BINDING
        assert out.h == pytest.approx(1.0)

    def test_shutdown_example(self, symmetric_params):
        out = total_harvest(symmetric_params, 0.4, 10.0)
        assert out.regime is Regime.SHUTDOWN_UNPROFITABLE
        assert out.h == 0.0

    def test_boundary_resolves_non_binding(self, symmetric_params):
        r_hat = unmanaged_harvest(symmetric_params, 1.0)
        out = total_harvest(symmetric_params, 1.0, r_hat)
        assert out.regime is Regime.NON_BINDING
        assert out.h == pytest.approx(r_hat)

    def test_quotas_sum_to_total(self, symmetric_params):
        rng = np.random.default_rng(7)
        for _ in range(500):
            params = EconParams(*np.exp(rng.uniform(np.log(0.1), np.log(10), 7)))
            x = float(np.exp(rng.uniform(np.log(0.1), np.log(10))))
            r = float(rng.uniform(0.0, 3.0))
            out = total_harvest(params, x, r)
            assert out.h == pytest.approx(out.q_1 + out.q_2, abs=1e-12)
            assert out.q_1 >= 0.0 and out.q_2 >= 0.0
            if out.regime is Regime.NON_BINDING:
                assert out.h == pytest.approx(
                    realized_unmanaged_harvest(params, x), abs=1e-12)
            if out.regime in (Regime.SHUTDOWN_UNPROFITABLE, Regime.SHUTDOWN_RESTRICTED):
                assert out.h == 0.0

    def test_continuity_at_regime_boundary(self, symmetric_params):
        delta = 1e-6
        r_hat = unmanaged_harvest(symmetric_params, 1.0)
        below = harvest_level(symmetric_params, 1.0, r_hat - delta)
        above = harvest_level(symmetric_params, 1.0, r_hat + delta)
        assert abs(below - above) < 1e-4

    def test_unmanaged_params_ignore_recommendation(self):
        params = EconParams(1, 1, 1, 1, 0, 0, 2)
        for r in (0.0, 0.3, 5.0):
            assert harvest_level(params, 1.0, r) == pytest.approx(1.0)


class TestIndividualQuotas:
    def test_symmetric_binding(self, symmetric_params):
        q1, q2 = individual_quotas(symmetric_params, 1.0, 0.0)
        assert q1 == pytest.approx(1 / 6)
        assert q2 == pytest.approx(1 / 6)

    def test_symmetric_non_binding(self, symmetric_params):
        assert individual_quotas(symmetric_params, 1.0, 5.0) == (
            pytest.approx(0.5), pytest.approx(0.5))

    def test_asymmetric_clamps_idle_group(self):
        params = EconParams(1.0, 2.0, 1.0, 1.0, 1.0, 1.0, 2.0)
        q1, q2 = individual_quotas(params, 1.0, 5.0)
        assert q1 == pytest.approx(0.5)
        assert q2 == 0.0


class TestProfit:
    def test_equilibrium_value(self, symmetric_params):
        value = profit(symmetric_params, 1, 1 / 6, 1 / 6, 1.0, 0.0)
        assert value == pytest.approx(1 / 36)

    def test_idle_group_earns_nothing(self, symmetric_params):
        assert profit(symmetric_params, 1, 0.0, 0.0, 3.0, 1.0) == 0.0

    def test_deviation_term_inactive_below_recommendation(self, symmetric_params):
        value = profit(symmetric_params, 1, 0.2, 0.2, 1.0, 1.0)
        assert value == pytest.approx(0.16)

    def test_validation(self, symmetric_params):
        with pytest.raises(ValueError):
            profit(symmetric_params, 3, 0.1, 0.1, 1.0, 0.0)
        with pytest.raises(ValueError):
            profit(symmetric_params, 1, -0.1, 0.1, 1.0, 0.0)
        with pytest.raises(ValueError):
            profit(symmetric_params, 1, 0.1, 0.1, 0.0, 0.0)


_positive = st.floats(min_value=0.1, max_value=10.0,
                      allow_nan=False, allow_infinity=False)


@settings(max_examples=200, deadline=None)
@given(a1=_positive, a2=_positive, b1=_positive, b2=_positive,
       k1=_positive, k2=_positive, p=_positive, x=_positive,
       r=st.floats(min_value=0.0, max_value=30.0, allow_nan=False))
def test_harvest_never_exceeds_unmanaged_catch(a1, a2, b1, b2, k1, k2, p, x, r):
    params = EconParams(a1, a2, b1, b2, k1, k2, p)
    out = total_harvest(params, x, r)
    assert out.h <= max(realized_unmanaged_harvest(params, x), 0.0) + 1e-9


@settings(max_examples=200, deadline=None)
@given(a=_positive, b=_positive, k1=_positive, k2=_positive, p=_positive,
       x=_positive, r=st.floats(min_value=0.0, max_value=30.0, allow_nan=False))
def test_binding_flag_observable(a, b, k1, k2, p, x, r):
    # realized catch reaches the recommendation exactly when it binds
    params = EconParams(a, a, b, b, k1, k2, p)
    gap = unmanaged_harvest(params, x) - r
    if abs(gap) <= 1e-9 * max(1.0, abs(gap) + r):
        return
    bound_gap = binding_harvest(params, x, r) - r
    assert (gap > 0.0) == (bound_gap > 0.0)
