import math

import numpy as np
import pytest

from dilaton_steering.dilaton import (
    DilatonParams,
    Pair,
    RootNotFoundError,
    amplitude_arrays,
    bogoliubov,
    closed_form_measures,
    closed_measure_arrays,
    closed_xparams,
    critical_dilatons,
    find_critical_numeric,
    monogamy_residuals,
    pipeline_measures,
    reduced,
    tripartite_state,
)
from dilaton_steering.measures import Regime

SQRT3 = math.sqrt(3.0)
EIGHT_PI = 8.0 * math.pi

# Closed-form critical dilatons at M = 1, omega = 1 (verified against
# independent bisection / golden-section on the witness margins).
D0_REF = 0.9781438029646212
D1_REF = 0.9475999102151271
D2_REF = 0.9875896801171044

MEASURE_FIELDS = ("s_forward", "s_backward", "concurrence", "bell_branch1", "bell_branch2", "bell")


def extreme_params(omega=1.0, mass=1.0):
    return DilatonParams(mass, mass * (1.0 - 1e-12), omega)


class TestParams:
    @pytest.mark.parametrize(
        "mass,dilaton,omega",
        [(0.0, 0.0, 1.0), (-1.0, 0.0, 1.0), (1.0, 1.0, 1.0), (1.0, 1.5, 1.0), (1.0, -0.1, 1.0), (1.0, 0.5, 0.0), (1.0, 0.5, -2.0)],
    )
    def test_rejects_invalid(self, mass, dilaton, omega):
        with pytest.raises(ValueError):
            DilatonParams(mass, dilaton, omega)


class TestBogoliubov:
    def test_symmetric_limit(self):
        amp = bogoliubov(extreme_params())
        assert abs(amp.c - 1.0 / math.sqrt(2.0)) < 1e-10
        assert abs(amp.s - 1.0 / math.sqrt(2.0)) < 1e-10

    def test_zero_dilaton_values(self):
        amp = bogoliubov(DilatonParams(1.0, 0.0, 1.0))
        assert abs(amp.x - EIGHT_PI) < 1e-12
        assert amp.s**2 < 1.3e-11 and amp.s > 0.0

    def test_hawking_temperature(self):
        amp = bogoliubov(DilatonParams(1.0, 0.0, 1.0))
        assert abs(amp.temperature - 0.039788735772973836) < 1e-15

    def test_unitarity_across_grid(self):
        for omega in (0.5, 1.0, 2.0, 10.0):
            _, c2, s2, _, _ = amplitude_arrays(1.0, omega, np.linspace(0.0, 1.0 - 1e-9, 501))
            assert np.abs(c2 + s2 - 1.0).max() < 1e-14

    def test_amplitude_ordering(self):
        for dilaton in (0.0, 0.5, 0.9):
            amp = bogoliubov(DilatonParams(1.0, dilaton, 1.0))
            assert 0.0 < amp.s < 1.0 / math.sqrt(2.0) < amp.c < 1.0

    def test_no_overflow_for_large_argument(self):
        amp = bogoliubov(DilatonParams(1.0, 0.0, 500.0))
        assert amp.c == 1.0 and amp.s == 0.0 and math.isfinite(amp.x)


class TestTripartiteState:
    def test_trace_and_purity(self):
        rho = tripartite_state(DilatonParams(1.0, 0.3, 1.0))
        assert abs(rho.matrix.trace().real - 1.0) < 1e-14
        assert abs(rho.purity() - 1.0) < 1e-12

    def test_entries_match_literal_pattern(self):
        p = DilatonParams(1.0, 0.9, 1.0)
        amp = bogoliubov(p)
        c, s = amp.c, amp.s
        expected = np.zeros((8, 8), dtype=complex)
        expected[0, 0] = 0.5 * c * c
        expected[0, 3] = expected[3, 0] = 0.5 * c * s
        expected[0, 6] = expected[6, 0] = 0.5 * c
        expected[3, 3] = 0.5 * s * s
        expected[3, 6] = expected[6, 3] = 0.5 * s
        expected[6, 6] = 0.5
        assert np.abs(tripartite_state(p).matrix - expected).max() < 1e-15

    def test_zero_dilaton_is_bell_pair_with_empty_interior(self):
        # Residual interior weight at D = 0, omega = 1 is s/2 with
        # s = (e^{8 pi} + 1)^{-1/2}, about 1.7e-6.
        rho = tripartite_state(DilatonParams(1.0, 0.0, 1.0))
        expected = np.zeros((8, 8), dtype=complex)
        expected[0, 0] = expected[0, 6] = expected[6, 0] = expected[6, 6] = 0.5
        assert np.abs(rho.matrix - expected).max() < 2e-6
        assert rho.matrix[3, 3].real < 1e-11

    def test_extreme_limit_corner_block(self):
        rho = tripartite_state(extreme_params())
        half = 1.0 / math.sqrt(2.0)
        for (i, j), value in {(0, 0): 0.25, (0, 3): 0.25, (0, 6): 0.5 * half, (3, 3): 0.25, (3, 6): 0.5 * half, (6, 6): 0.5}.items():
            assert abs(rho.matrix[i, j] - value) < 1e-10


class TestReducedStates:
    def test_exterior_pair_limit_values(self):
        s = reduced(extreme_params(), Pair.AB)
        assert abs(s.d11 - 0.25) < 1e-10
        assert abs(s.d22 - 0.25) < 1e-10
        assert s.d33 == 0.0
        assert abs(s.d44 - 0.5) < 1e-12
        assert abs(s.c14 - 0.5 / math.sqrt(2.0)) < 1e-10
        assert s.c23 == 0.0

    def test_alice_interior_at_zero_dilaton_is_separable(self):
        s = reduced(DilatonParams(1.0, 0.0, 1.0), Pair.ABBAR)
        assert abs(s.d11 - 0.5) < 1e-10
        assert abs(s.d33 - 0.5) < 1e-10
        assert s.d22 < 1e-10 and s.d44 == 0.0
        assert abs(s.c23) < 1e-5 and s.c14 == 0.0

    def test_interior_pair_limit_values(self):
        s = reduced(extreme_params(), Pair.BBBAR)
        assert abs(s.d11 - 0.25) < 1e-10
        assert s.d22 == 0.0
        assert abs(s.d33 - 0.5) < 1e-12
        assert abs(s.d44 - 0.25) < 1e-10
        assert abs(s.c14 - 0.25) < 1e-10

    @pytest.mark.parametrize("pair", list(Pair))
    def test_structural_zeros(self, pair):
        s = reduced(DilatonParams(1.0, 0.4, 1.3), pair)
        if pair is Pair.AB:
            assert s.d33 == 0.0 and s.c23 == 0.0
        elif pair is Pair.ABBAR:
            assert s.d44 == 0.0 and s.c14 == 0.0
        else:
            assert s.d22 == 0.0 and s.c23 == 0.0

    @pytest.mark.parametrize("pair", list(Pair))
    def test_partial_trace_matches_literal_entries(self, pair):
        # The reduced matrices written directly in the mixing amplitudes.
        p = DilatonParams(1.0, 0.7, 0.8)
        amp = bogoliubov(p)
        c, s = amp.c, amp.s
        expected = np.zeros((4, 4), dtype=complex)
        if pair is Pair.AB:
            expected[0, 0], expected[1, 1], expected[3, 3] = 0.5 * c * c, 0.5 * s * s, 0.5
            expected[0, 3] = expected[3, 0] = 0.5 * c
        elif pair is Pair.ABBAR:
            expected[0, 0], expected[1, 1], expected[2, 2] = 0.5 * c * c, 0.5 * s * s, 0.5
            expected[1, 2] = expected[2, 1] = 0.5 * s
        else:
            expected[0, 0], expected[2, 2], expected[3, 3] = 0.5 * c * c, 0.5, 0.5 * s * s
            expected[0, 3] = expected[3, 0] = 0.5 * c * s
        assert np.abs(reduced(p, pair).to_matrix().matrix - expected).max() < 1e-12


class TestClosedForms:
    def test_exterior_pair_limit_anchors(self):
        m = closed_form_measures(extreme_params(), Pair.AB)
        assert abs(m.s_forward - 0.35566243270259357) < 1e-9
        assert abs(m.s_backward - 0.21132486540518708) < 1e-9
        assert abs(m.concurrence - 0.7071067811865475) < 1e-9
        assert abs(m.bell - 2.0) < 1e-6
        assert abs(m.bell_branch2 - SQRT3) < 1e-6
        assert m.regime is Regime.TWO_WAY

    def test_interior_backward_steering_is_zero_everywhere(self):
        _, c2, s2, c, s = amplitude_arrays(1.0, 1.0, np.linspace(0.0, 1.0 - 1e-9, 2001))
        vals = closed_measure_arrays(c2, s2, c, s, Pair.BBBAR)
        assert np.all(vals["s_backward"] == 0.0)

    def test_alice_interior_at_zero_dilaton_is_uncorrelated(self):
        m = closed_form_measures(DilatonParams(1.0, 0.0, 1.0), Pair.ABBAR)
        assert m.s_forward < 1e-10
        assert m.s_backward == 0.0
        assert m.concurrence < 1e-5

    def test_exterior_pair_at_zero_dilaton_is_nearly_maximal(self):
        # Horizon mixing is negligible at D = 0, so the exterior pair keeps
        # the quantum maximum of the Bell signal.
        m = closed_form_measures(DilatonParams(1.0, 0.0, 1.0), Pair.AB)
        assert abs(m.bell - 2.0 * math.sqrt(2.0)) < 1e-9
        pipe = pipeline_measures(DilatonParams(1.0, 0.0, 1.0), Pair.AB)
        assert abs(pipe.bell - 2.0 * math.sqrt(2.0)) < 1e-9

    def test_asymmetry_at_birth_point_equals_forward_steering(self):
        # At the birth dilaton the backward steering is exactly zero, so
        # the asymmetry coincides with the forward value.
        d0 = critical_dilatons(1.0, 1.0).d0
        m = closed_form_measures(DilatonParams(1.0, d0, 1.0), Pair.ABBAR)
        assert m.s_backward <= 1e-12
        assert abs(m.asymmetry - m.s_forward) <= 1e-12

    @pytest.mark.parametrize("pair", list(Pair))
    def test_bell_is_max_of_branches(self, pair):
        _, c2, s2, c, s = amplitude_arrays(1.0, 1.0, np.linspace(0.0, 1.0 - 1e-9, 301))
        vals = closed_measure_arrays(c2, s2, c, s, pair)
        assert np.all(vals["bell_max"] >= vals["bell_branch1"] - 1e-15)
        assert np.all(vals["bell_max"] >= vals["bell_branch2"] - 1e-13)
        assert np.abs(
            vals["bell_max"] - np.maximum(vals["bell_branch1"], vals["bell_branch2"])
        ).max() < 1e-13

    @pytest.mark.parametrize("pair", list(Pair))
    def test_printed_branch_equals_rebuilt_branch2(self, pair):
        # The analytic single-branch expressions coincide with branch 2 of
        # the reduced states' correlation invariants.
        d = np.linspace(0.0, 1.0 - 1e-9, 501)
        _, c2, s2, c, s = amplitude_arrays(1.0, 1.0, d)
        vals = closed_measure_arrays(c2, s2, c, s, pair)
        d11, d22, d33, d44, a14, a23 = closed_xparams(c2, s2, c, s, pair)
        b2 = 2.0 * np.sqrt(4.0 * (a14 + a23) ** 2 + (d11 - d22 - d33 + d44) ** 2)
        assert np.abs(vals["bell_branch2"] - b2).max() < 1e-13

    def test_no_nonlocality_in_interior_partitions(self):
        d = np.linspace(0.0, 1.0 - 1e-6, 2001)
        for omega in (0.5, 1.0, 1.5, 2.0):
            _, c2, s2, c, s = amplitude_arrays(1.0, omega, d)
            for pair in (Pair.ABBAR, Pair.BBBAR):
                vals = closed_measure_arrays(c2, s2, c, s, pair)
                assert vals["bell_max"].max() <= 2.0 + 1e-12


class TestDualPath:
    @pytest.mark.parametrize("pair", list(Pair))
    def test_pointwise_agreement(self, pair):
        for dilaton in (0.0, 0.25, 0.5, 0.9, 0.97, 1.0 - 1e-9):
            for omega in (0.5, 1.0, 2.0):
                p = DilatonParams(1.0, dilaton, omega)
                closed = closed_form_measures(p, pair)
                pipe = pipeline_measures(p, pair)
                for name in MEASURE_FIELDS:
                    assert abs(getattr(closed, name) - getattr(pipe, name)) < 1e-10, name
                assert closed.regime is pipe.regime

    def test_regimes_match_the_known_structure(self):
        p = DilatonParams(1.0, 0.99, 1.0)
        assert pipeline_measures(p, Pair.ABBAR).regime is Regime.TWO_WAY
        assert pipeline_measures(p, Pair.BBBAR).regime is Regime.NO_WAY
        p_low = DilatonParams(1.0, 0.95, 1.0)
        assert pipeline_measures(p_low, Pair.ABBAR).regime is Regime.ONE_WAY_FORWARD
        assert pipeline_measures(p_low, Pair.AB).regime is Regime.TWO_WAY


class TestCriticalPoints:
    def test_closed_form_values(self):
        points = critical_dilatons(1.0, 1.0)
        assert abs(points.d0 - D0_REF) < 1e-12
        assert abs(points.d1 - D1_REF) < 1e-12
        assert abs(points.d2 - D2_REF) < 1e-12
        assert points.d0_in_range and points.d1_in_range and points.d2_in_range

    def test_ordering_when_in_range(self):
        for omega in (0.08, 0.1, 0.5, 1.0, 3.0, 10.0):
            points = critical_dilatons(1.0, omega)
            if points.d1_in_range:
                assert points.d1 < points.d0 < points.d2 < 1.0

    def test_small_omega_is_out_of_range(self):
        points = critical_dilatons(1.0, 0.01)
        assert not (points.d0_in_range or points.d1_in_range or points.d2_in_range)
        assert points.d0 < 0.0

    def test_scaling_in_mass_and_frequency(self):
        base = critical_dilatons(1.0, 1.0)
        heavier = critical_dilatons(2.0, 1.0)
        assert abs((heavier.d0 - 2.0) - (base.d0 - 1.0)) < 1e-12
        faster = critical_dilatons(1.0, 2.0)
        assert abs((faster.d0 - 1.0) - 0.5 * (base.d0 - 1.0)) < 1e-12

    def test_numeric_agrees_with_closed_forms(self):
        assert abs(find_critical_numeric(1.0, 1.0, "d0") - D0_REF) < 1e-8
        assert abs(find_critical_numeric(1.0, 1.0, "d2") - D2_REF) < 1e-8
        assert abs(find_critical_numeric(1.0, 1.0, "d1") - D1_REF) < 1e-6

    def test_numeric_agrees_at_other_parameters(self):
        for mass, omega in ((1.0, 0.5), (2.0, 1.0)):
            points = critical_dilatons(mass, omega)
            assert abs(find_critical_numeric(mass, omega, "d0") - points.d0) < 1e-8
            assert abs(find_critical_numeric(mass, omega, "d2") - points.d2) < 1e-8

    def test_out_of_range_reports_bracket(self):
        with pytest.raises(RootNotFoundError, match="bracket"):
            find_critical_numeric(1.0, 0.01, "d0")

    def test_unknown_point_name(self):
        with pytest.raises(ValueError, match="d0"):
            find_critical_numeric(1.0, 1.0, "d9")


class TestMonogamy:
    def test_identities_at_symmetric_limit(self):
        res = monogamy_residuals(extreme_params())
        assert abs(res.r1) < 1e-12
        assert abs(res.r2) < 1e-12
        # Common value of the sum identity: 1 - 1/(2 sqrt 3).
        m_ab = closed_form_measures(extreme_params(), Pair.AB)
        m_abbar = closed_form_measures(extreme_params(), Pair.ABBAR)
        assert abs(m_ab.s_forward + m_abbar.s_forward - 0.7113248654051871) < 1e-10

    def test_backward_identities_hold_past_birth_point(self):
        res = monogamy_residuals(DilatonParams(1.0, 0.99, 1.0))
        assert res.r3_valid and res.r4_valid
        assert abs(res.r3) < 1e-10
        assert abs(res.r4) < 1e-10

    def test_backward_identities_flagged_before_birth_point(self):
        res = monogamy_residuals(DilatonParams(1.0, 0.5, 1.0))
        assert not res.r3_valid and not res.r4_valid
        assert abs(res.r1) < 1e-12
        assert abs(res.r2) < 1e-12

    def test_forward_identities_hold_on_whole_range(self):
        for dilaton in np.linspace(0.0, 1.0 - 1e-9, 101):
            res = monogamy_residuals(DilatonParams(1.0, float(dilaton), 1.0))
            assert abs(res.r1) < 1e-12
            assert abs(res.r2) < 1e-12


class TestFrequencyIndependenceAtExtremeLimit:
    def test_measures_match_across_frequencies(self):
        omegas = (0.5, 1.0, 2.0)
        for pair in Pair:
            bundles = [closed_form_measures(extreme_params(w), pair) for w in omegas]
            for name in ("s_forward", "s_backward", "concurrence", "bell"):
                values = [getattr(b, name) for b in bundles]
                assert max(values) - min(values) < 1e-9, (pair, name)


class TestMonotonicity:
    def test_coarse_grid_trends(self):
        d = np.linspace(0.0, 1.0 - 1e-6, 401)
        _, c2, s2, c, s = amplitude_arrays(1.0, 1.0, d)
        ab = closed_measure_arrays(c2, s2, c, s, Pair.AB)
        abbar = closed_measure_arrays(c2, s2, c, s, Pair.ABBAR)
        bbbar = closed_measure_arrays(c2, s2, c, s, Pair.BBBAR)
        assert np.all(np.diff(ab["s_forward"]) <= 1e-15)
        assert np.all(np.diff(ab["concurrence"]) <= 1e-15)
        assert np.all(np.diff(abbar["s_forward"]) >= -1e-15)
        assert np.all(np.diff(abbar["concurrence"]) >= -1e-15)
        assert np.all(np.diff(bbbar["concurrence"]) >= -1e-15)
        assert np.all(ab["s_forward"] >= ab["s_backward"] - 1e-15)
        assert np.all(abbar["s_forward"] >= abbar["s_backward"] - 1e-15)

    def test_interior_steering_rises_then_dies(self):
        d = np.linspace(0.0, 1.0 - 1e-6, 2001)
        _, c2, s2, c, s = amplitude_arrays(1.0, 1.0, d)
        fwd = closed_measure_arrays(c2, s2, c, s, Pair.BBBAR)["s_forward"]
        peak = int(np.argmax(fwd))
        step = d[1] - d[0]
        assert abs(d[peak] - D1_REF) <= step
        assert np.all(np.diff(fwd[: peak + 1]) >= -1e-15)
        dead = d >= D2_REF
        assert np.all(fwd[dead] == 0.0)
        alive = (d > 0.0) & (d < D2_REF)
        assert np.all(fwd[alive] > 0.0)
