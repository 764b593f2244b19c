import math

import numpy as np
import pytest

from amplearn.nosignal import (
    AliceProgram,
    bob_induced_ensembles,
    bob_phase,
    helstrom_bias,
    kickback_check,
    magic_demo_program,
    magic_reflection,
    max_entangled,
    random_cptp_program,
    run_signaling_protocol,
)
from amplearn.qcore import Ensemble, PureState, trace_distance
from amplearn.search import Oracle


def plus():
    return PureState(1, np.array([1.0, 1.0]) / math.sqrt(2.0))


class TestMaxEntangled:
    def test_bell_pair(self):
        phi = max_entangled(1)
        want = np.zeros(4)
        want[0] = want[3] = 1 / math.sqrt(2)
        assert np.allclose(phi.amps, want)

    def test_marginal_maximally_mixed(self):
        for n in (1, 2, 3):
            rho = max_entangled(n).alice_marginal()
            assert np.max(np.abs(rho.entries - np.eye(1 << n) / (1 << n))) < 1e-12

    def test_equal_amplitudes(self):
        phi = max_entangled(3)
        nz = phi.amps[np.abs(phi.amps) > 0]
        assert len(nz) == 8 and np.allclose(nz, 1 / math.sqrt(8))

    def test_size_limit(self):
        with pytest.raises(ValueError):
            max_entangled(6)


class TestBobPhase:
    def test_null_is_identity(self):
        phi = max_entangled(2)
        assert np.array_equal(bob_phase(Oracle(2), phi).amps, phi.amps)

    def test_sign_flip(self):
        phi = max_entangled(1)
        out = bob_phase(Oracle(1, 1), phi)
        want = np.zeros(4)
        want[0], want[3] = 1 / math.sqrt(2), -1 / math.sqrt(2)
        assert np.allclose(out.amps, want)

    def test_involution(self):
        phi = max_entangled(2)
        f = Oracle(2, 3)
        assert np.allclose(bob_phase(f, bob_phase(f, phi)).amps, phi.amps)


class TestKickback:
    def test_exhaustive(self):
        for n in range(1, 6):
            assert kickback_check(n, Oracle(n)) == 0.0
            for tau in range(1 << n):
                assert kickback_check(n, Oracle(n, tau)) < 1e-12


class TestSignaling:
    def test_cptp_oracle_choice_null(self):
        rng = np.random.default_rng(0)
        for _ in range(20):
            prog = random_cptp_program(2, rng)
            rep = run_signaling_protocol(2, 1, prog, "oracle-choice")
            assert rep.mi < 1e-9 and rep.tv < 1e-10

    def test_cptp_measurement_basis_null(self):
        rng = np.random.default_rng(1)
        for _ in range(20):
            prog = random_cptp_program(1, rng)
            rep = run_signaling_protocol(1, 0, prog, "measurement-basis")
            assert rep.mi < 1e-9 and rep.tv < 1e-10

    def test_magic_demo(self):
        rep = run_signaling_protocol(1, 0, magic_demo_program(), "measurement-basis")
        assert abs(rep.tv - 1.0) < 1e-9
        assert abs(rep.mi - 1.0) < 1e-9
        # P0 concentrates on "-" (index 1), P1 on "+" (index 0)
        assert abs(rep.P0[1] - 1.0) < 1e-9 and abs(rep.P1[0] - 1.0) < 1e-9

    def test_magic_needs_ensemble_path(self):
        with pytest.raises(ValueError):
            run_signaling_protocol(1, 0, magic_demo_program(), "oracle-choice")

    def test_identical_settings_no_signal(self):
        rep = run_signaling_protocol(
            1, 0, magic_demo_program(), "measurement-basis", basis_angle=0.0
        )
        assert rep.tv < 1e-12

    def test_tv_decreases_with_angle(self):
        angles = np.linspace(0.0, math.pi / 2, 10)
        tvs = [
            run_signaling_protocol(
                1, 0, magic_demo_program(), "measurement-basis", basis_angle=a
            ).tv
            for a in angles
        ]
        assert tvs[0] < 1e-12 and abs(tvs[-1] - 1.0) < 1e-9
        assert all(b >= a - 1e-9 for a, b in zip(tvs, tvs[1:]))

    def test_ensemble_averages_equal(self):
        e0, e1 = bob_induced_ensembles(1)
        assert trace_distance(e0.average(), e1.average()) < 1e-12


class TestMagicReflection:
    def test_singleton(self):
        psi = PureState.basis(1, 0)
        out = magic_reflection(Ensemble(((1.0, psi),)), plus())
        want = np.array([-1.0, 1.0]) / math.sqrt(2)  # R_0 |+> = -|->
        assert np.allclose(out.members[0][1].amps, want)

    def test_computational_ensemble(self):
        ens = Ensemble(((0.5, PureState.basis(1, 0)), (0.5, PureState.basis(1, 1))))
        out = magic_reflection(ens, plus())
        minus = np.array([1.0, -1.0]) / math.sqrt(2)
        avg = out.average()
        assert np.allclose(avg.entries, np.outer(minus, minus), atol=1e-12)

    def test_pm_ensemble(self):
        minus = PureState(1, np.array([1.0, -1.0]) / math.sqrt(2))
        ens = Ensemble(((0.5, plus()), (0.5, minus)))
        out = magic_reflection(ens, plus())
        avg = out.average()
        assert np.allclose(avg.entries, plus().density().entries, atol=1e-12)

    def test_equal_average_different_output(self):
        # the two ensembles above share the average I/2 but map |+> to
        # orthogonal average outputs: that is the signaling mechanism
        comp = Ensemble(((0.5, PureState.basis(1, 0)), (0.5, PureState.basis(1, 1))))
        minus = PureState(1, np.array([1.0, -1.0]) / math.sqrt(2))
        pm = Ensemble(((0.5, plus()), (0.5, minus)))
        assert trace_distance(comp.average(), pm.average()) < 1e-12
        out_c = magic_reflection(comp, plus()).average()
        out_p = magic_reflection(pm, plus()).average()
        assert abs(trace_distance(out_c, out_p) - 1.0) < 1e-12


class TestHelstrom:
    def test_orthogonal(self):
        a, b = PureState.basis(1, 0).density(), PureState.basis(1, 1).density()
        assert helstrom_bias(a, b, 1) == 1.0

    def test_identical(self):
        rho = plus().density()
        # sqrt(1 - alpha^2) amplifies float eps to ~1e-8 at alpha = 1
        assert abs(helstrom_bias(rho, rho, 1) - 0.5) < 1e-7

    def test_multi_copy_formula(self):
        # alpha = 1/2, t = 2 -> 1/2 + 1/2 sqrt(1 - 1/16)
        v = np.array([0.5, math.sqrt(0.75)], dtype=complex)
        rho1 = PureState(1, v).density()
        got = helstrom_bias(PureState.basis(1, 0).density(), rho1, 2)
        assert abs(got - (0.5 + 0.5 * math.sqrt(1 - 1 / 16))) < 1e-12

    def test_mixed_single_copy(self):
        from amplearn.qcore import DensityMatrix

        rho0 = DensityMatrix(2, np.diag([0.75, 0.25]).astype(complex))
        rho1 = DensityMatrix(2, np.diag([0.25, 0.75]).astype(complex))
        assert abs(helstrom_bias(rho0, rho1, 1) - 0.75) < 1e-12

    def test_mixed_multi_copy_rejected(self):
        from amplearn.qcore import DensityMatrix

        rho = DensityMatrix(2, np.eye(2) / 2)
        with pytest.raises(ValueError):
            helstrom_bias(rho, rho, 2)


class TestAliceProgram:
    def test_unitary_checked(self):
        with pytest.raises(ValueError):
            AliceProgram(kind="cptp_circuit", unitary=np.ones((2, 2)))

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            AliceProgram(kind="telepathy")
