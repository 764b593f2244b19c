import math

import numpy as np
import pytest

from amplearn.complexity import (
    PackingSet,
    RangeWarning,
    StateClassSpec,
    covering_log_bound,
    discrimination_experiment,
    fano_lower,
    greedy_packing,
    holevo_chi,
    sample_lower_bound,
    sample_upper_bound,
    universal_lock,
)
from amplearn.qcore import Ensemble, PureState


def plus():
    return PureState(1, np.array([1.0, 1.0]) / math.sqrt(2.0))


class TestCoveringBound:
    def test_arithmetic(self):
        spec = StateClassSpec(n=4, gates=8)
        got = covering_log_bound(spec, 0.25)
        assert abs(got - (8 * math.log(32) + math.log(4))) < 1e-12

    def test_single_gate(self):
        got = covering_log_bound(StateClassSpec(n=2, gates=1), 0.25)
        assert abs(got - 2 * math.log(4)) < 1e-12

    def test_degenerate_constant(self):
        spec = StateClassSpec(n=2, gates=5, entropy_constant=0.0)
        assert abs(covering_log_bound(spec, 0.1) - math.log(10)) < 1e-12

    def test_range_warning(self):
        with pytest.warns(RangeWarning):
            covering_log_bound(StateClassSpec(n=2, gates=2), 0.5)


class TestGreedyPacking:
    def test_single_candidate(self):
        ps = greedy_packing(2, 0.5, candidate_pool_size=1, seed=0)
        assert ps.size == 1

    def test_orthogonal_pair(self):
        ps = greedy_packing(
            2, 1.0, candidates=[PureState.basis(1, 0), PureState.basis(1, 1)]
        )
        assert ps.size == 2

    def test_validity_reverified(self):
        with pytest.raises(ValueError):
            PackingSet((PureState.basis(1, 0), plus()), 0.9, 2, 0)

    def test_size_grows_with_dim(self):
        wins = 0
        for seed in range(10):
            k4 = greedy_packing(4, 0.5, 2000, seed=seed).size
            k8 = greedy_packing(8, 0.5, 2000, seed=seed).size
            wins += k8 > k4
        assert wins >= 9

    def test_deterministic(self):
        a = greedy_packing(4, 0.5, 500, seed=3)
        b = greedy_packing(4, 0.5, 500, seed=3)
        assert a.size == b.size
        for x, y in zip(a.states, b.states):
            assert np.array_equal(x.amps, y.amps)


class TestFano:
    def test_exact_identification(self):
        assert fano_lower(4, 0.0) == 2.0

    def test_clamp(self):
        assert fano_lower(2, 0.4) == 0.0

    def test_arithmetic(self):
        got = fano_lower(1024, 0.1)
        h2 = -(0.1 * math.log2(0.1) + 0.9 * math.log2(0.9))
        assert abs(got - (0.9 * 10 - h2)) < 1e-12

    def test_precondition(self):
        with pytest.raises(ValueError):
            fano_lower(4, 0.5)


class TestHolevo:
    def test_identical_members(self):
        e = Ensemble(((0.5, plus()), (0.5, plus())))
        assert holevo_chi(e) < 1e-12

    def test_orthogonal_pair(self):
        e = Ensemble(((0.5, PureState.basis(1, 0)), (0.5, PureState.basis(1, 1))))
        assert abs(holevo_chi(e) - 1.0) < 1e-12

    def test_zero_plus(self):
        e = Ensemble(((0.5, PureState.basis(1, 0)), (0.5, plus())))
        assert abs(holevo_chi(e) - 0.6009) < 1e-4


class TestSampleBounds:
    def test_lower_arithmetic(self):
        got = sample_lower_bound(4, 8, 0.25, 0.1)
        assert abs(got - 16 * (8 + math.log(10))) < 1e-9

    def test_min_selection(self):
        assert sample_lower_bound(3, 100, 0.25, 0.1) == sample_lower_bound(
            3, 8, 0.25, 0.1
        )

    def test_epsilon_scaling(self):
        base = sample_lower_bound(4, 8, 0.2, 0.1)
        assert abs(sample_lower_bound(4, 8, 0.1, 0.1) - 4 * base) < 1e-9

    def test_upper_arithmetic(self):
        got = sample_upper_bound(10, 8, 0.25, 0.1)
        assert abs(got - 16 * (8 * math.log(32) + math.log(10))) < 1e-9

    def test_upper_universal_branch(self):
        got = sample_upper_bound(3, 10**6, 0.25, 0.1)
        assert abs(got - 16 * 8 * math.log(10)) < 1e-9

    def test_upper_dominates_lower(self):
        rng = np.random.default_rng(0)
        for _ in range(1000):
            n = int(rng.integers(1, 12))
            g = float(rng.integers(1, 10**4))
            eps = float(rng.uniform(0.01, 0.25))
            delta = float(rng.uniform(0.001, 0.1))
            assert sample_upper_bound(n, g, eps, delta) >= sample_lower_bound(
                n, g, eps, delta
            ) - 1e-9

    def test_monotone_in_gates(self):
        vals = [sample_lower_bound(10, g, 0.25, 0.1) for g in range(1, 100)]
        assert all(b >= a for a, b in zip(vals, vals[1:]))


class TestUniversalLock:
    def test_gate_floor(self):
        rep = universal_lock(5, constants={"params_per_gate": 2})
        assert rep.bounds["g_univ_floor"] == math.ceil(2 * 31 / 2)

    def test_locked_unit_accuracy(self):
        rep = universal_lock(5, epsilon=1.0, delta=1.0)
        assert rep.bounds["locked_samples"] == 32.0

    def test_unlocked_formula(self):
        rep = universal_lock(10, epsilon=1.0, delta=1.0)
        g_ref = math.sqrt(1024) / math.log(1024)
        assert abs(rep.bounds["unlocked_gate_budget"] - g_ref) < 1e-12
        assert abs(rep.bounds["unlocked_samples"] - g_ref) < 1e-12

    def test_shape_only_flag(self):
        assert universal_lock(4).shape_only


class TestDiscrimination:
    def orthogonal_pair(self):
        return PackingSet((PureState.basis(1, 0), PureState.basis(1, 1)), 1.0, 2, 0)

    def test_orthogonal_perfect(self):
        rep = discrimination_experiment(self.orthogonal_pair(), 1, trials=4000, seed=0)
        assert rep.error_rate == 0.0
        # plug-in MI is 1 bit up to the empirical-prior deficit
        assert abs(rep.mi - 1.0) <= 3 * rep.mi_sigma
        assert rep.sandwich_ok

    def test_multi_copy_helstrom_match(self):
        v = np.array([0.8, 0.6], dtype=complex)
        pair = PackingSet((PureState.basis(1, 0), PureState(1, v)), 0.5, 2, 0)
        for m in (1, 3):
            rep = discrimination_experiment(pair, m, trials=10_000, seed=m)
            theo = 0.5 * (1 - math.sqrt(1 - 0.8 ** (2 * m)))
            assert abs(rep.error_rate - theo) <= 3 * max(rep.error_sigma, 1e-3)

    def test_exact_posterior(self):
        ps = greedy_packing(4, 0.5, 2000, seed=1)
        trimmed = PackingSet(ps.states[:4], 0.5, ps.pool_size, 1)
        rep = discrimination_experiment(
            trimmed, 4, strategy="exact-posterior", trials=4000, seed=2
        )
        assert 0.0 <= rep.error_rate <= 1.0
        assert rep.sandwich_ok

    def test_exact_posterior_cap(self):
        ps = greedy_packing(32, 0.1, 300, seed=0)
        with pytest.raises(ValueError):
            discrimination_experiment(ps, 1, strategy="exact-posterior", trials=10)

    def test_error_decreases_with_copies(self):
        ps = greedy_packing(4, 0.5, 2000, seed=3)
        trimmed = PackingSet(ps.states[:4], 0.5, ps.pool_size, 3)
        errs = [
            discrimination_experiment(trimmed, m, trials=4000, seed=10 + m).error_rate
            for m in (1, 6, 12)
        ]
        assert errs[2] < errs[0]

    def test_needs_two_hypotheses(self):
        single = PackingSet((plus(),), 0.5, 1, 0)
        with pytest.raises(ValueError):
            discrimination_experiment(single, 1)
