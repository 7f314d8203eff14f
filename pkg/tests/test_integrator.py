import math

import numpy as np
import pytest

from hjls import (
    IntegratorOptions,
    ScalarField,
    TermOutput,
    advection_term_config,
    create_grid,
    ode_cfl_1,
    ode_cfl_2,
    ode_cfl_3,
    term_lax_friedrichs,
)

INTEGRATORS = {1: ode_cfl_1, 2: ode_cfl_2, 3: ode_cfl_3}


def scalar_term(fn, bound=np.inf):
    def term(t, y, cfg):
        return TermOutput(delta=ScalarField(fn(t, y.values)), step_bound=bound)

    return term


def total_variation(values):
    return np.sum(np.abs(np.diff(values))) + abs(values[0] - values[-1])


class TestBasics:
    @pytest.mark.parametrize("order", [1, 2, 3])
    def test_constant_rhs_exact(self, order):
        term = scalar_term(lambda t, y: np.full_like(y, 2.5))
        y0 = ScalarField(np.array([1.0, -3.0]))
        opts = IntegratorOptions(cfl_factor=1.0, max_step=0.3)
        res = INTEGRATORS[order](term, (0.0, 1.2), y0, opts, None)
        assert res.t_final == 1.2
        assert np.allclose(res.y_final.values, y0.values + 2.5 * 1.2, atol=1e-12)

    @pytest.mark.parametrize("order", [1, 2, 3])
    def test_zero_length_span(self, order):
        term = scalar_term(lambda t, y: np.full_like(y, 1.0))
        y0 = ScalarField(np.array([4.0]))
        res = INTEGRATORS[order](term, (2.0, 2.0), y0, IntegratorOptions(), None)
        assert res.steps_taken == 0
        assert res.t_final == 2.0
        assert np.array_equal(res.y_final.values, y0.values)
        assert res.min_dt == 0.0 and res.max_dt == 0.0

    def test_decreasing_span_rejected(self):
        term = scalar_term(lambda t, y: y)
        with pytest.raises(ValueError, match="increasing"):
            ode_cfl_1(term, (1.0, 0.0), ScalarField(np.array([1.0])),
                      IntegratorOptions(), None)

    def test_final_time_hit_exactly(self):
        term = scalar_term(lambda t, y: np.zeros_like(y))
        t1 = 0.1 + 0.2 + 0.7  # not exactly representable sums
        res = ode_cfl_1(term, (0.0, t1), ScalarField(np.array([0.0])),
                        IntegratorOptions(cfl_factor=1.0, max_step=0.23), None)
        assert res.t_final == t1

    def test_single_step_mode(self):
        term = scalar_term(lambda t, y: np.ones_like(y))
        opts = IntegratorOptions(cfl_factor=1.0, max_step=0.25, single_step=True)
        res = ode_cfl_1(term, (0.0, 10.0), ScalarField(np.array([0.0])), opts, None)
        assert res.steps_taken == 1
        assert res.t_final == pytest.approx(0.25)

    def test_nonfinite_rhs_aborts_with_step_index(self):
        def term(t, y, cfg):
            if t > 0.2:
                return TermOutput(delta=ScalarField(np.full_like(y.values, np.nan)),
                                  step_bound=np.inf)
            return TermOutput(delta=ScalarField(np.ones_like(y.values)),
                              step_bound=np.inf)

        opts = IntegratorOptions(cfl_factor=1.0, max_step=0.25)
        with pytest.raises(RuntimeError, match="step 1"):
            ode_cfl_1(term, (0.0, 1.0), ScalarField(np.array([0.0])), opts, None)

    def test_stats_lines_on_stderr(self, capsys):
        term = scalar_term(lambda t, y: np.ones_like(y))
        opts = IntegratorOptions(cfl_factor=1.0, max_step=0.5, collect_stats=True)
        ode_cfl_1(term, (0.0, 1.0), ScalarField(np.array([0.0])), opts, None)
        err = capsys.readouterr().err
        assert "step 1:" in err and "dt=" in err and "max=" in err

    def test_options_validation(self):
        with pytest.raises(ValueError, match="cfl_factor"):
            IntegratorOptions(cfl_factor=0.0)
        with pytest.raises(ValueError, match="cfl_factor"):
            IntegratorOptions(cfl_factor=1.5)
        with pytest.raises(ValueError, match="max_step"):
            IntegratorOptions(max_step=-1.0)


class TestStageAlgebra:
    """Single-step amplification on y' = lam * y matches the Taylor
    polynomial of the scheme's order, computed independently."""

    @pytest.mark.parametrize("order", [1, 2, 3])
    @pytest.mark.parametrize("lam,dt", [(-0.8, 0.3), (0.5, 0.2), (-2.0, 0.1)])
    def test_amplification(self, order, lam, dt):
        term = scalar_term(lambda t, y: lam * y)
        opts = IntegratorOptions(cfl_factor=1.0, max_step=dt, single_step=True)
        res = INTEGRATORS[order](term, (0.0, 1.0), ScalarField(np.array([1.0])),
                                 opts, None)
        h = lam * dt
        want = sum(h ** k / math.factorial(k) for k in range(order + 1))
        assert abs(res.y_final.values[0] - want) < 1e-14

    def test_constant_rhs_rk2_rk3_match_euler(self):
        term = scalar_term(lambda t, y: np.full_like(y, -1.25))
        y0 = ScalarField(np.array([2.0]))
        opts = IntegratorOptions(cfl_factor=1.0, max_step=0.4, single_step=True)
        outs = [INTEGRATORS[k](term, (0.0, 1.0), y0, opts, None).y_final.values
                for k in (1, 2, 3)]
        assert np.allclose(outs[0], outs[1], atol=1e-15)
        assert np.allclose(outs[0], outs[2], atol=1e-15)


class TestCflAndStability:
    def test_every_step_respects_cfl(self):
        g = create_grid((0,), (2 * math.pi,), (40,), periodic_axes={0})
        cfg = advection_term_config([1.0], scheme="first")
        taken = []

        def term(t, y, c):
            out = term_lax_friedrichs(t, y, c, g)
            taken.append(out.step_bound)
            return out

        y0 = ScalarField(np.sin(g.axis_nodes[0]))
        opts = IntegratorOptions(cfl_factor=0.5)
        res = ode_cfl_3(term, (0.0, 1.0), y0, opts, cfg)
        assert res.max_dt <= 0.5 * min(taken) + 1e-15
        assert res.t_final == 1.0

    def test_max_principle_forward_euler(self):
        # 200 CFL-limited steps of first-order upwind advection stay in range
        g = create_grid((0,), (2 * math.pi,), (40,), periodic_axes={0})
        cfg = advection_term_config([1.0], scheme="first")

        def term(t, y, c):
            return term_lax_friedrichs(t, y, c, g)

        x = g.axis_nodes[0]
        y = ScalarField(np.where(x < math.pi, 1.0, 0.0))
        lo, hi = y.values.min(), y.values.max()
        opts = IntegratorOptions(cfl_factor=0.5, single_step=True)
        t = 0.0
        for _ in range(200):
            res = ode_cfl_1(term, (t, t + 1e9), y, opts, cfg)
            y, t = res.y_final, res.t_final
            assert y.values.min() >= lo - 1e-12
            assert y.values.max() <= hi + 1e-12

    def test_total_variation_diminishing_rk3(self):
        # advected step profile: TV never grows across RK3 steps
        g = create_grid((0,), (2 * math.pi,), (60,), periodic_axes={0})
        cfg = advection_term_config([1.0], scheme="first")

        def term(t, y, c):
            return term_lax_friedrichs(t, y, c, g)

        x = g.axis_nodes[0]
        y = ScalarField(np.where((x > 1.0) & (x < 3.0), 1.0, 0.0))
        tv = total_variation(y.values)
        opts = IntegratorOptions(cfl_factor=0.5, single_step=True)
        t = 0.0
        for _ in range(150):
            res = ode_cfl_3(term, (t, t + 1e9), y, opts, cfg)
            y, t = res.y_final, res.t_final
            tv_new = total_variation(y.values)
            assert tv_new <= tv + 1e-12
            tv = tv_new

    @pytest.mark.parametrize("order", [2, 3])
    def test_temporal_self_convergence(self, order):
        # fixed fine grid; halving max_step shows the scheme's time order
        g = create_grid((0,), (2 * math.pi,), (120,), periodic_axes={0})
        cfg = advection_term_config([1.0], scheme="weno5")

        def term(t, y, c):
            return term_lax_friedrichs(t, y, c, g)

        y0 = ScalarField(np.sin(g.axis_nodes[0]))
        outs = []
        for k in range(3):
            dt = 0.02 / 2 ** k
            opts = IntegratorOptions(cfl_factor=1.0, max_step=dt)
            outs.append(ode_cfl_2(term, (0.0, 0.5), y0, opts, cfg).y_final.values
                        if order == 2 else
                        ode_cfl_3(term, (0.0, 0.5), y0, opts, cfg).y_final.values)
        e01 = np.max(np.abs(outs[0] - outs[1]))
        e12 = np.max(np.abs(outs[1] - outs[2]))
        assert math.log2(e01 / e12) == pytest.approx(order, abs=0.4)

    def test_determinism(self):
        g = create_grid((0,), (2 * math.pi,), (50,), periodic_axes={0})
        cfg = advection_term_config([1.0], scheme="eno2")

        def term(t, y, c):
            return term_lax_friedrichs(t, y, c, g)

        y0 = ScalarField(np.sin(g.axis_nodes[0]))
        opts = IntegratorOptions(cfl_factor=0.5)
        a = ode_cfl_3(term, (0.0, 1.0), y0, opts, cfg)
        b = ode_cfl_3(term, (0.0, 1.0), y0, opts, cfg)
        assert np.array_equal(a.y_final.values, b.y_final.values)
        assert a.steps_taken == b.steps_taken
