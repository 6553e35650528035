"""Separability indicators, crossings, negativity oracle, Haar moments.

Hand-derived anchors used below:
  qubit crossing (p=1):  -2 ln(sqrt(2)-1)      = 1.7627471740390861
  qutrit crossing (p=1): -2 ln((sqrt(3)-1)/2)  = 2.0101050789535874
  equal-ratio preservation boundary: a* = ln((sqrt(3)-1)/2)/ln(sqrt(2)-1)
                                        = 1.1403266 (True below, False above)
  F_qutrit(t=1, A=1) = (1 + 2 e^{-1/2})^2 / 9 = 0.54418226705958...
"""

import numpy as np
import pytest

from qutrit_se.analysis import (
    QUBIT_SEP_THRESHOLD,
    QUTRIT_SEP_THRESHOLD,
    crossing_time,
    fidelity_closed,
    fidelity_from_state,
    haar_bloch_vectors,
    haar_moment_check,
    negativity,
    ppt_threshold,
    preservation_inequality,
    qubit_crossing_closed,
    s_from_state,
    s_qubit_closed,
    s_qutrit_closed,
    separability_report,
)
from qutrit_se.channels import ChannelParams, bipartite_channel, se_kraus_qubit, se_kraus_qutrit
from qutrit_se.linalg import kron, random_density_matrix
from qutrit_se.states import max_entangled, werner

T_QUBIT_P1 = -2.0 * np.log(np.sqrt(2.0) - 1.0)
T_QUTRIT_P1 = -2.0 * np.log((np.sqrt(3.0) - 1.0) / 2.0)


class TestClosedForms:
    def test_start_at_p(self):
        for p in (0.0, 0.3, 1.0):
            par = ChannelParams(a1=1.4, a2=0.8, a3=2.0, t=0.0)
            assert abs(s_qubit_closed(p, par) - p) < 1e-12
            assert abs(s_qutrit_closed(p, par) - p) < 1e-12

    def test_decay_to_zero(self):
        par = ChannelParams(t=200.0)
        assert s_qubit_closed(1.0, par) < 1e-12
        assert s_qutrit_closed(1.0, par) < 1e-12

    def test_monotone_nonincreasing_on_fine_grid(self):
        par = ChannelParams(a1=1.0, a2=1.7, a3=0.3)
        for f in (lambda t: s_qubit_closed(0.9, par.with_time(t)),
                  lambda t: s_qutrit_closed(0.9, par.with_time(t)),
                  lambda t: fidelity_closed(2, par.with_time(t)),
                  lambda t: fidelity_closed(3, par.with_time(t))):
            vals = np.array([f(t) for t in np.linspace(0.0, 8.0, 1000)])
            assert np.all(np.diff(vals) <= 1e-15)

    def test_rate_exchange_symmetry(self):
        for t in (0.3, 1.1, 4.0):
            a = ChannelParams(a2=2.0, a3=0.5, t=t)
            b = ChannelParams(a2=0.5, a3=2.0, t=t)
            assert abs(s_qutrit_closed(0.8, a) - s_qutrit_closed(0.8, b)) <= 1e-12
            assert abs(fidelity_closed(3, a) - fidelity_closed(3, b)) <= 1e-12

    def test_known_crossing_values(self):
        par = ChannelParams()
        assert abs(s_qubit_closed(1.0, par.with_time(T_QUBIT_P1)) - 1 / 3) < 1e-14
        assert abs(s_qutrit_closed(1.0, par.with_time(T_QUTRIT_P1)) - 0.25) < 1e-14


class TestStateRoute:
    def test_werner_at_t_zero(self):
        for p in (0.0, 0.4, 1.0):
            assert abs(s_from_state(werner(3, p), 3) - p) < 1e-12
            assert abs(s_from_state(werner(2, p), 2) - p) < 1e-12

    def test_matches_closed_form_after_evolution(self):
        p = 0.8
        par = ChannelParams(a1=1.1, a2=1.0, a3=0.7, t=0.5)
        rho3 = bipartite_channel(werner(3, p), se_kraus_qutrit(par), "symmetric")
        assert abs(s_from_state(rho3, 3) - s_qutrit_closed(p, par)) <= 1e-10
        rho2 = bipartite_channel(werner(2, p), se_kraus_qubit(par), "symmetric")
        assert abs(s_from_state(rho2, 2) - s_qubit_closed(p, par)) <= 1e-10

    def test_q_does_not_enter(self):
        p, par = 0.9, ChannelParams(a2=1.3, a3=0.5, t=0.8)
        vals = [
            s_from_state(
                bipartite_channel(werner(3, p), se_kraus_qutrit(par), "symmetric", q), 3
            )
            for q in (0.0, 0.5, 1.0)
        ]
        assert max(vals) - min(vals) <= 1e-12

    def test_shape_checks(self):
        with pytest.raises(ValueError):
            s_from_state(np.eye(9) / 9, 2)
        with pytest.raises(ValueError):
            s_from_state(np.eye(4) / 4, 4)


class TestFidelity:
    def test_at_t_zero(self):
        assert abs(fidelity_closed(2, ChannelParams()) - 1.0) < 1e-14
        assert abs(fidelity_closed(3, ChannelParams()) - 1.0) < 1e-14

    def test_limits(self):
        far = ChannelParams(t=80.0)
        assert abs(fidelity_closed(2, far) - 0.25) < 1e-14
        assert abs(fidelity_closed(3, far) - 1.0 / 9.0) < 1e-14

    def test_frozen_value_t1(self):
        assert abs(fidelity_closed(3, ChannelParams(t=1.0)) - 0.5441822670595895) < 1e-12

    def test_state_route_reference_points(self):
        assert abs(fidelity_from_state(max_entangled(3), 3) - 1.0) < 1e-14
        assert abs(fidelity_from_state(np.eye(9) / 9, 3) - 1.0 / 9.0) < 1e-14

    def test_kraus_route_matches_closed(self):
        par = ChannelParams(a1=0.9, a2=1.2, a3=0.6, t=0.8)
        rho3 = bipartite_channel(werner(3, 1.0), se_kraus_qutrit(par), "symmetric")
        assert abs(fidelity_from_state(rho3, 3) - fidelity_closed(3, par)) <= 1e-10
        rho2 = bipartite_channel(werner(2, 1.0), se_kraus_qubit(par), "symmetric")
        assert abs(fidelity_from_state(rho2, 2) - fidelity_closed(2, par)) <= 1e-10

    def test_q_independence(self):
        par = ChannelParams(a2=1.0, a3=0.4, t=0.9)
        w = werner(3, 0.65)
        ch = se_kraus_qutrit(par)
        f03 = fidelity_from_state(bipartite_channel(w, ch, "symmetric", 0.3), 3)
        f07 = fidelity_from_state(bipartite_channel(w, ch, "symmetric", 0.7), 3)
        assert abs(f03 - f07) <= 1e-12


class TestCrossings:
    def test_bisection_matches_anchors(self):
        par = ChannelParams()
        t_qb = crossing_time(
            lambda t: s_qubit_closed(1.0, par.with_time(t)), QUBIT_SEP_THRESHOLD
        )
        t_qt = crossing_time(
            lambda t: s_qutrit_closed(1.0, par.with_time(t)), QUTRIT_SEP_THRESHOLD
        )
        assert abs(t_qb - T_QUBIT_P1) < 1e-8
        assert abs(t_qt - T_QUTRIT_P1) < 1e-8

    def test_closed_form_matches_bisection_over_p(self):
        for p in (0.4, 0.6, 0.8, 1.0):
            t_bis = crossing_time(
                lambda t: s_qubit_closed(p, ChannelParams(t=t)), QUBIT_SEP_THRESHOLD
            )
            assert abs(t_bis - qubit_crossing_closed(p)) < 1e-8

    def test_rate_scaling(self):
        a1 = 2.5
        t_bis = crossing_time(
            lambda t: s_qubit_closed(1.0, ChannelParams(a1=a1, t=t)),
            QUBIT_SEP_THRESHOLD,
        )
        assert abs(t_bis - T_QUBIT_P1 / a1) < 1e-8

    def test_below_threshold_returns_none(self):
        assert crossing_time(
            lambda t: s_qutrit_closed(0.2, ChannelParams(t=t)), QUTRIT_SEP_THRESHOLD
        ) is None

    def test_unbracketed_raises(self):
        with pytest.raises(ValueError):
            crossing_time(
                lambda t: s_qubit_closed(1.0, ChannelParams(t=t)),
                QUBIT_SEP_THRESHOLD,
                t_hi=0.5,
            )

    def test_residual_within_tolerance(self):
        par = ChannelParams()
        f = lambda t: s_qutrit_closed(1.0, par.with_time(t))
        t_star = crossing_time(f, QUTRIT_SEP_THRESHOLD)
        assert abs(f(t_star) - QUTRIT_SEP_THRESHOLD) <= 1e-10

    def test_closed_form_domain(self):
        with pytest.raises(ValueError):
            qubit_crossing_closed(0.2)


class TestPreservation:
    def test_equal_rates_verdicts(self):
        assert preservation_inequality(1.0, 1.0, 1.0)
        assert preservation_inequality(1.0, 1.14, 1.14)  # just inside boundary
        assert not preservation_inequality(1.0, 1.15, 1.15)  # just outside
        assert not preservation_inequality(1.0, 10.0, 10.0)

    def test_agrees_with_crossing_comparison(self):
        t_qb = T_QUBIT_P1
        for a21 in (0.2, 1.0, 2.6, 5.0):
            for a31 in (0.2, 1.0, 2.6, 5.0):
                par = ChannelParams(a2=a21, a3=a31)
                t_qt = crossing_time(
                    lambda t: s_qutrit_closed(1.0, par.with_time(t)),
                    QUTRIT_SEP_THRESHOLD,
                )
                assert preservation_inequality(1.0, a21, a31) == (t_qt >= t_qb)

    def test_domain(self):
        with pytest.raises(ValueError):
            preservation_inequality(0.0, 1.0, 1.0)


class TestNegativity:
    def test_max_entangled_values(self):
        assert abs(negativity(max_entangled(2), 2, 2) - 0.5) < 1e-12
        assert abs(negativity(max_entangled(3), 3, 3) - 1.0) < 1e-12

    def test_product_state_zero(self):
        rng = np.random.default_rng(29)
        rho = kron(random_density_matrix(3, rng), random_density_matrix(3, rng))
        assert negativity(rho, 3, 3) < 1e-10

    def test_werner_threshold_behavior(self):
        for d, thr in ((2, QUBIT_SEP_THRESHOLD), (3, QUTRIT_SEP_THRESHOLD)):
            for p in (0.0, thr / 2, thr):
                assert negativity(werner(d, p), d, d) <= 1e-10
            for p in (thr + 0.01, 0.6, 1.0):
                assert negativity(werner(d, p), d, d) > 1e-4

    def test_ppt_threshold_bisection(self):
        assert abs(ppt_threshold(2) - 1.0 / 3.0) <= 1e-4
        assert abs(ppt_threshold(3) - 0.25) <= 1e-4


class TestHaar:
    def test_seed_determinism(self):
        m1 = haar_moment_check(3, 2000, seed=123)
        m2 = haar_moment_check(3, 2000, seed=123)
        np.testing.assert_array_equal(m1, m2)
        assert np.max(np.abs(m1 - haar_moment_check(3, 2000, seed=124))) > 0

    def test_moments_small_sample(self):
        m3 = haar_moment_check(3, 20_000, seed=42)
        assert np.max(np.abs(m3 - np.eye(8) / 8.0)) <= 0.02
        m2 = haar_moment_check(2, 20_000, seed=42)
        assert np.max(np.abs(m2 - np.eye(3) / 3.0)) <= 0.02

    def test_bloch_vectors_are_pure(self):
        n = haar_bloch_vectors(3, 50, seed=5)
        norms = np.einsum("si,si->s", n, n)
        np.testing.assert_allclose(norms, 1.0, atol=1e-12)

    def test_symmetric_matrix(self):
        m = haar_moment_check(2, 1000, seed=7)
        np.testing.assert_allclose(m, m.T, atol=1e-15)


class TestReport:
    def test_default_point(self):
        rep = separability_report(1.0, ChannelParams(), t_max=5.0, steps=50)
        assert rep.rows.shape == (51, 7)
        np.testing.assert_allclose(rep.rows[0], [0, 1, 1, 1, 1, 0.5, 1.0], atol=1e-12)
        assert abs(rep.t_cross_qubit - T_QUBIT_P1) < 1e-8
        assert abs(rep.t_cross_qutrit - T_QUTRIT_P1) < 1e-8
        assert rep.qutrit_preserves_longer
        # s columns nonincreasing, negativity columns nonnegative
        assert np.all(np.diff(rep.rows[:, 1]) <= 1e-15)
        assert np.all(np.diff(rep.rows[:, 2]) <= 1e-15)
        assert np.all(rep.rows[:, 5] >= 0) and np.all(rep.rows[:, 6] >= 0)

    def test_fast_rates_flip_the_verdict(self):
        rep = separability_report(
            1.0, ChannelParams(a2=10.0, a3=10.0), t_max=3.0, steps=10
        )
        assert not rep.qutrit_preserves_longer
        assert rep.t_cross_qutrit < rep.t_cross_qubit

    def test_below_both_thresholds(self):
        rep = separability_report(0.2, ChannelParams(), t_max=1.0, steps=5)
        assert rep.t_cross_qubit is None and rep.t_cross_qutrit is None
        assert not rep.qutrit_preserves_longer

    def test_validation(self):
        with pytest.raises(ValueError):
            separability_report(1.2, ChannelParams())
        with pytest.raises(ValueError):
            separability_report(0.5, ChannelParams(), steps=1)
        with pytest.raises(ValueError):
            separability_report(0.5, ChannelParams(), t_max=0.0)
