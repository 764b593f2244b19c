import math

import numpy as np
import pytest

from amplearn.qcore import PureState
from amplearn.search import (
    TRIPLING_LIMIT,
    Oracle,
    apply_oracle,
    cubic_step,
    grover_step,
    grover_success_curve,
    rounds_to_constant,
    run_grover,
    run_ideal_log_search,
)


class TestOracle:
    def test_range_check(self):
        with pytest.raises(ValueError):
            Oracle(2, 4)

    def test_null(self):
        assert Oracle(3).is_null

    def test_apply(self):
        s = PureState.uniform(2)
        out = apply_oracle(Oracle(2, 1), s)
        assert out.amps[1] == -s.amps[1]
        assert np.array_equal(apply_oracle(Oracle(2), s).amps, s.amps)


class TestGrover:
    def test_closed_form_small(self):
        n, tau = 5, 7
        theta0 = math.asin(2.0 ** (-n / 2))
        traj = run_grover(n, tau, 4)
        for r, p in enumerate(traj.success):
            assert abs(p - math.sin((2 * r + 1) * theta0) ** 2) < 1e-12

    def test_curve_matches_trajectory(self):
        traj = run_grover(6, 11, 5)
        curve = grover_success_curve(6, 11, 5)
        assert np.allclose(curve, traj.success, atol=1e-12)

    def test_queries_counted(self):
        assert run_grover(4, 0, 7).queries == 7

    def test_null_oracle_fixes_uniform(self):
        s = PureState.uniform(3)
        out = grover_step(s, Oracle(3), s)
        # -R_s R_null |s> = -(-|s>) = |s>
        assert np.allclose(out.amps, s.amps, atol=1e-12)


class TestCubic:
    def test_overlap_tripling_identity(self):
        # <tau|psi'> = sin(3 theta) for a state in the span of tau and its complement
        rng = np.random.default_rng(0)
        for _ in range(200):
            n = int(rng.integers(2, 8))
            tau = int(rng.integers(0, 1 << n))
            theta = float(rng.uniform(0.01, math.pi / 2 - 0.01))
            rest = rng.standard_normal(1 << n)
            rest[tau] = 0.0
            rest = rest / np.linalg.norm(rest) * math.cos(theta)
            amps = rest.astype(complex)
            amps[tau] = math.sin(theta)
            out = cubic_step(PureState(n, amps), Oracle(n, tau))
            assert abs(out.amps[tau].real - math.sin(3 * theta)) < 1e-10

    def test_null_oracle_rejected(self):
        with pytest.raises(ValueError):
            cubic_step(PureState.uniform(2), Oracle(2))

    def test_angle_triples_from_uniform(self):
        traj = run_ideal_log_search(10, 5)
        theta0 = math.asin(2.0**-5)
        for r, angle in enumerate(traj.angles):
            expected = 3**r * theta0
            if expected < TRIPLING_LIMIT:
                assert abs(angle - expected) < 1e-9


class TestIdealLogSearch:
    def test_threshold_reached(self):
        traj = run_ideal_log_search(8, 1, 0.5)
        assert traj.angles[-1] >= 0.5
        assert all(a < 0.5 for a in traj.angles[:-1])

    def test_queries_equal_rounds(self):
        traj = run_ideal_log_search(8, 1)
        assert traj.queries == traj.rounds

    def test_polish_appends_one_query(self):
        base = run_ideal_log_search(8, 1)
        polished = run_ideal_log_search(8, 1, polish=True)
        assert polished.queries == base.queries + 1
        assert polished.success[-1] > base.success[-1]

    def test_threshold_validation(self):
        with pytest.raises(ValueError):
            run_ideal_log_search(4, 0, threshold_c=1.0)


class TestRoundsToConstant:
    def test_matches_simulation(self):
        for n in range(2, 13):
            traj = run_ideal_log_search(n, 0, 0.5)
            assert rounds_to_constant(n, 0.5) == traj.rounds, n

    def test_already_above_threshold(self):
        # n=2: theta0 = arcsin(1/2) = pi/6 >= pi/6
        assert rounds_to_constant(2, math.pi / 6) == 0

    def test_known_value(self):
        assert rounds_to_constant(20, 0.5) == 6

    def test_slope(self):
        ns = np.arange(4, 24)
        rounds = np.array([rounds_to_constant(int(n), 0.5) for n in ns])
        slope = np.polyfit(ns, rounds, 1)[0]
        assert abs(slope - math.log(2) / (2 * math.log(3))) < 0.15
