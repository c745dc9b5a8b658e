import math

import numpy as np
import pytest

from bqtsim.bqt import A_TO_B, B_TO_A, CLOSED_FORM, ORACLE, PureQubit, make_settings, resource_state, teleported_bloch_dephasing
from bqtsim.errors import QuadratureTooCoarse, RangeError, SingularBloch
from bqtsim.metrics import (
    ad_fidelity_coefficients,
    average_fidelity,
    bloch_curve,
    fidelity,
    fidelity_closed,
    fidelity_field,
    fidelity_report,
    negativity,
    negativity_ad,
    negativity_closed,
    negativity_dephasing,
    qfi_from_bloch,
    qfi_theta,
    sphere_average,
)
from bqtsim.metrics import fidelities as fidelity_module
from bqtsim.qmath import I4, PHI_PLUS, SIGMA_X, SIGMA_Y, SIGMA_Z, density_from_bloch, ket_to_density

KINDS = ("dephasing", "amplitude_damping")


def qfi_eigen(v, dv):
    """Fisher information from the spectral decomposition of rho and d rho."""
    rho = density_from_bloch(v)
    drho = 0.5 * sum(d * s for d, s in zip(dv, (SIGMA_X, SIGMA_Y, SIGMA_Z)))
    lam, vec = np.linalg.eigh(rho)
    j = 0.0
    for a in range(2):
        for b in range(2):
            s = lam[a] + lam[b]
            if s > 1e-14:
                j += 2 * abs(vec[:, a].conj() @ drho @ vec[:, b]) ** 2 / s
    return j


class TestNegativity:
    def test_bell(self):
        assert negativity(ket_to_density(PHI_PLUS)) == pytest.approx(1.0, abs=1e-12)

    def test_mixed(self):
        assert negativity(I4 / 4) == 0.0

    def test_dephased(self):
        assert negativity(resource_state("dephasing", 0.5, 0.5)) == pytest.approx(0.5, abs=1e-12)

    @pytest.mark.parametrize("kind", KINDS)
    def test_spectral_matches_closed_form(self, kind):
        for p in np.linspace(0, 1, 21):
            for u in np.linspace(0, 1, 21):
                assert negativity(resource_state(kind, p, u)) == pytest.approx(negativity_closed(kind, p, u), abs=1e-10)


class TestClosedNegativity:
    def test_dephasing_examples(self):
        assert negativity_dephasing(0.37, 1.0) == pytest.approx(1.0)
        assert negativity_dephasing(0.5, 0.0) == pytest.approx(0.0)
        for u in (0.0, 0.3, 0.9):
            assert negativity_dephasing(0.5, u) == pytest.approx(u)

    def test_damping_examples(self):
        assert negativity_ad(0.0, 0.4) == pytest.approx(1.0)
        for u in (0.0, 0.5, 1.0):
            assert negativity_ad(1.0, u) == 0.0
        assert negativity_ad(0.75, 1.0) == pytest.approx(0.5)

    def test_floored(self):
        for p in np.linspace(0, 1, 101):
            for u in np.linspace(0, 1, 11):
                assert negativity_ad(p, u) >= 0.0

    @pytest.mark.parametrize("p,u", [(-0.1, 0.0), (0.0, 1.5)])
    def test_range(self, p, u):
        with pytest.raises(RangeError):
            negativity_dephasing(p, u)
        with pytest.raises(RangeError):
            negativity_ad(p, u)


class TestPointFidelity:
    def test_same(self):
        q = PureQubit(1.0, 2.0)
        assert fidelity(q, q.bloch) == pytest.approx(1.0)

    def test_mixed(self):
        assert fidelity(PureQubit(1.0, 2.0), [0, 0, 0]) == 0.5

    def test_orthogonal(self):
        q = PureQubit(1.0, 2.0)
        assert fidelity(q, -q.bloch) == pytest.approx(0.0, abs=1e-15)


class TestClosedFidelity:
    def test_perfect_channel(self):
        for th in np.linspace(0, math.pi, 7):
            s = make_settings(theta_a=th, trigger_a=th, theta_b=0.0, trigger_b=math.pi)
            assert fidelity_closed("dephasing", s, A_TO_B, 0.0, 0.0) == pytest.approx(1.0)

    def test_equator_no_entanglement(self):
        s = make_settings(theta_a=math.pi / 2, trigger_a=math.pi / 2, theta_b=0.0, trigger_b=math.pi)
        assert fidelity_closed("dephasing", s, A_TO_B, 0.5, 0.0) == pytest.approx(0.5)

    def test_dephasing_matches_bloch(self, rng):
        for _ in range(50):
            args = rng.uniform(0, 1, 6) * np.array([math.pi, 2 * math.pi, math.pi, 2 * math.pi, math.pi, math.pi])
            s = make_settings(*args)
            p, u = rng.uniform(0, 1, 2)
            for d in (A_TO_B, B_TO_A):
                state, _ = s.sender(d)
                out = teleported_bloch_dephasing(s, d, negativity_dephasing(p, u))
                assert fidelity_closed("dephasing", s, d, p, u) == pytest.approx(fidelity(state, out), abs=1e-10)

    def test_damping_reduces_to_dephasing(self, rng):
        for _ in range(20):
            s = make_settings(*(rng.uniform(0, 1, 6) * math.pi))
            u = rng.uniform()
            for d in (A_TO_B, B_TO_A):
                assert fidelity_closed("amplitude_damping", s, d, 0.0, u) == pytest.approx(
                    fidelity_closed("dephasing", s, d, 0.0, 0.0), abs=1e-12
                )

    def test_damping_coefficients(self):
        chi, delta, eta = ad_fidelity_coefficients(0.0, 0.3)
        assert (chi, delta, eta) == pytest.approx((1.0, 1.0, 1.0))
        chi, delta, eta = ad_fidelity_coefficients(1.0, 0.0)
        assert (chi, delta, eta) == pytest.approx((0.0, 0.0, 2.0))

    @pytest.mark.parametrize("kind", KINDS)
    def test_bounded(self, kind):
        th, ph = np.meshgrid(np.linspace(0, math.pi, 41), np.linspace(0, 2 * math.pi, 9))
        s = make_settings(trigger_a=0.0, trigger_b=math.pi)
        for p in np.linspace(0, 1, 11):
            for u in np.linspace(0, 1, 11):
                f = fidelity_field(kind, s, A_TO_B, p, u, th, ph)
                assert f.min() >= -1e-12 and f.max() <= 1 + 1e-12

    @pytest.mark.parametrize("kind", KINDS)
    def test_oracle_field_is_pointwise_fidelity(self, kind):
        s = make_settings(theta_b=0.4, trigger_a=0.7, trigger_b=2.0)
        from bqtsim.bqt import measurement_probability, oracle_teleport, residual_state, TriggerSetting

        p, u = 0.3, 0.6
        rho = resource_state(kind, p, u)
        m_recv = measurement_probability(s.bob_state, s.bob_trigger)
        for th, ph in ((0.3, 1.0), (2.0, 4.0)):
            q = PureQubit(th, ph)
            w = measurement_probability(q, TriggerSetting(0.7)) * (1 - m_recv)
            v = w * oracle_teleport(rho, q) + (1 - w) * residual_state(kind, p, u)
            assert float(fidelity_field(kind, s, A_TO_B, p, u, th, ph, ORACLE)) == pytest.approx(fidelity(q, v), abs=1e-12)


class TestAverageFidelity:
    def test_sphere_rule(self):
        assert sphere_average(lambda t, p: np.ones_like(t + p), 16) == pytest.approx(1.0)
        assert sphere_average(lambda t, p: np.sin(t) ** 2 + 0 * p, 16) == pytest.approx(2 / 3)
        assert sphere_average(lambda t, p: (np.sin(t) * np.cos(p)) ** 2, 16) == pytest.approx(1 / 3)

    def test_noiseless_ideal(self):
        # trigger_b = pi and theta_b = 0 keep Bob's M at 0; Alice's trigger then
        # varies with the input, so pick the trigger that makes M_A the overlap with |0>
        s = make_settings(trigger_a=0.0, trigger_b=math.pi)
        f = average_fidelity("dephasing", s, A_TO_B, 0.0, 0.0)
        # f = (1 + w)/2 with w = (1 + cos t)/2 averages to 3/4
        assert f == pytest.approx(0.75, abs=1e-12)

    def test_constant_weight_no_entanglement(self, monkeypatch):
        # hold M_A at 1 for every input: the integrand becomes 1 - sin^2/2
        monkeypatch.setattr(fidelity_module, "overlap_probability", lambda t, p, tt: np.ones_like(t + p))
        s = make_settings(trigger_b=math.pi)
        assert average_fidelity("dephasing", s, A_TO_B, 0.5, 0.0) == pytest.approx(2 / 3, abs=1e-12)
        assert average_fidelity("dephasing", s, A_TO_B, 0.0, 0.0) == pytest.approx(1.0, abs=1e-12)

    def test_node_floor(self, sharp_a):
        with pytest.raises(RangeError):
            average_fidelity("dephasing", sharp_a, A_TO_B, 0.1, 0.1, nodes=4)

    def test_too_coarse(self, monkeypatch, sharp_a):
        monkeypatch.setattr(fidelity_module, "fidelity_field", lambda *a: np.exp(40 * np.cos(a[5])))
        with pytest.raises(QuadratureTooCoarse):
            average_fidelity("dephasing", sharp_a, A_TO_B, 0.1, 0.1, nodes=8)

    @pytest.mark.parametrize("kind", KINDS)
    def test_backends_agree_without_noise(self, kind, sharp_a):
        a = average_fidelity(kind, sharp_a, A_TO_B, 0.0, 0.3)
        b = average_fidelity(kind, sharp_a, A_TO_B, 0.0, 0.3, backend=ORACLE)
        assert a == pytest.approx(b, abs=1e-12)

    def test_report(self, sharp_a):
        r = fidelity_report("dephasing", sharp_a, A_TO_B, 0.2, 0.4)
        assert r.pointwise == pytest.approx(1.0)
        assert 0 <= r.averaged <= 1 and r.quadrature_nodes == 64

    def test_phi_periodic(self):
        a = make_settings(phi_a=0.3, phi_b=1.0, trigger_a=0.4, trigger_b=2.0)
        b = make_settings(phi_a=0.3 + 2 * math.pi, phi_b=1.0 - 2 * math.pi, trigger_a=0.4, trigger_b=2.0)
        for kind in KINDS:
            for d in (A_TO_B, B_TO_A):
                assert average_fidelity(kind, a, d, 0.3, 0.2) == pytest.approx(average_fidelity(kind, b, d, 0.3, 0.2), abs=1e-14)


class TestQfi:
    def test_pure_branch(self):
        assert qfi_from_bloch([0, 0, 1], [1, 0, 0]) == pytest.approx(1.0)

    def test_singular(self):
        with pytest.raises(SingularBloch):
            qfi_from_bloch([0, 0, 1], [0, 0, 0.5])

    def test_matches_eigen_formula(self, rng):
        for _ in range(100):
            v = rng.normal(size=3)
            v *= rng.uniform(0, 0.99) / np.linalg.norm(v)
            dv = rng.normal(size=3)
            assert qfi_from_bloch(v, dv) == pytest.approx(qfi_eigen(v, dv), rel=1e-9)

    @pytest.mark.parametrize("backend", [CLOSED_FORM, ORACLE])
    @pytest.mark.parametrize("kind", KINDS)
    def test_ideal(self, backend, kind):
        s = make_settings(theta_a=0.0, trigger_a=0.0, theta_b=0.0, trigger_b=math.pi)
        assert qfi_theta(backend, kind, s, A_TO_B, 0.0, 0.0).value == pytest.approx(1.0, abs=1e-10)

    @pytest.mark.parametrize("backend", [CLOSED_FORM, ORACLE])
    def test_zero_weight(self, backend):
        # Bob's M = 1 blocks the A->B direction whatever Alice sends
        s = make_settings(theta_a=1.0, trigger_a=0.5, theta_b=0.3, trigger_b=0.3)
        assert qfi_theta(backend, "dephasing", s, A_TO_B, 0.2, 0.1).value == 0.0

    @pytest.mark.parametrize("kind", KINDS)
    def test_analytic_vs_finite_difference(self, kind, rng):
        done = 0
        while done < 30:
            s = make_settings(*(rng.uniform(0.1, 0.9, 6) * np.array([math.pi, 2 * math.pi, math.pi, 2 * math.pi, math.pi, math.pi])))
            p, u = rng.uniform(0, 0.9, 2)
            d = (A_TO_B, B_TO_A)[done % 2]
            try:
                a = qfi_theta(CLOSED_FORM, kind, s, d, p, u)
                f = qfi_theta(CLOSED_FORM, kind, s, d, p, u, method="finite-difference")
            except ValueError:
                continue
            assert a.derivative_method == "analytic" and f.derivative_method == "finite-difference"
            assert f.value == pytest.approx(a.value, rel=1e-6, abs=1e-12)
            done += 1

    def test_derivative_matches_curve(self):
        s = make_settings(theta_a=1.1, phi_a=0.4, trigger_a=0.6, theta_b=0.2, trigger_b=2.5)
        for kind in KINDS:
            v0, dv = bloch_curve(ORACLE, kind, s, A_TO_B, 0.4, 0.5)
            vp, _ = bloch_curve(ORACLE, kind, s, A_TO_B, 0.4, 0.5, 1.1 + 1e-6)
            vm, _ = bloch_curve(ORACLE, kind, s, A_TO_B, 0.4, 0.5, 1.1 - 1e-6)
            np.testing.assert_allclose(dv, (vp - vm) / 2e-6, atol=1e-8)

    def test_preset_settings_dephasing(self, sharp_a):
        # at the north pole only the transverse derivative survives
        for p, u in ((0.2, 0.1), (0.4, 0.7)):
            n = negativity_dephasing(p, u)
            assert qfi_theta(CLOSED_FORM, "dephasing", sharp_a, A_TO_B, p, u).value == pytest.approx(n)
            assert qfi_theta(ORACLE, "dephasing", sharp_a, A_TO_B, p, u).value == pytest.approx(n * n)
            assert qfi_theta(CLOSED_FORM, "dephasing", sharp_a, B_TO_A, p, u).value == 0.0

    def test_parameter_names(self, sharp_a):
        assert qfi_theta(CLOSED_FORM, "dephasing", sharp_a, A_TO_B).parameter == "theta_A"
        assert qfi_theta(CLOSED_FORM, "dephasing", sharp_a, B_TO_A).parameter == "theta_B"

    def test_unknown_method(self, sharp_a):
        with pytest.raises(ValueError):
            qfi_theta(CLOSED_FORM, "dephasing", sharp_a, A_TO_B, method="spline")

    def test_phi_periodic(self):
        a = make_settings(theta_a=1.0, phi_a=0.3, trigger_a=0.4, trigger_b=2.0)
        b = make_settings(theta_a=1.0, phi_a=0.3 + 2 * math.pi, trigger_a=0.4, trigger_b=2.0)
        for kind in KINDS:
            assert qfi_theta(CLOSED_FORM, kind, a, A_TO_B, 0.3, 0.2).value == pytest.approx(
                qfi_theta(CLOSED_FORM, kind, b, A_TO_B, 0.3, 0.2).value, abs=1e-14
            )
