import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lamedisc.bounds import (
    Envelope,
    bound_constants,
    discriminant_gap,
    elliptic_gap,
    lemma2_envelope,
    one_minus_tanh,
    theorem1_bound,
)
from lamedisc.errors import PreconditionViolated
from lamedisc.lame_core import LameParams, monodromy, q_lame
from lamedisc.legendre_limit import w1, w2_prime
from lamedisc.ode_floquet import trajectory
from lamedisc.special_functions import Modulus, ellip_E, ellip_K, jacobi_sn_cn_dn


class TestElementary:
    @pytest.mark.parametrize("x", [0.0, 0.5, 3.0, 10.0])
    def test_one_minus_tanh(self, x):
        assert one_minus_tanh(x) == pytest.approx(1.0 - math.tanh(x), rel=1e-6)

    def test_one_minus_tanh_without_cancellation(self):
        assert one_minus_tanh(30.0) == pytest.approx(2.0 * math.exp(-60.0), rel=1e-14)

    @pytest.mark.parametrize("kprime", [0.5, 0.1, 1e-3])
    def test_gaps(self, kprime):
        m = Modulus.from_kprime(kprime)
        big_k, big_e = ellip_K(m), ellip_E(m)
        assert elliptic_gap(m) == pytest.approx(big_e - math.tanh(big_k), rel=1e-9)
        assert discriminant_gap(m) == pytest.approx(big_e + 1 - 2 * math.tanh(big_k), rel=1e-9)

    @pytest.mark.parametrize("k", [0.5, 0.9, 0.99])
    def test_sn_between_k_sn_and_tanh(self, k):
        m = Modulus.from_k(k)
        for t in np.linspace(0.0, ellip_K(m), 41):
            sn = jacobi_sn_cn_dn(float(t), m)[0]
            assert k * sn <= math.tanh(t) + 1e-14
            assert math.tanh(t) <= sn + 1e-14


class TestBoundConstants:
    def test_degree_zero_branches_coincide(self):
        c = bound_constants(4.0, 0.0, Modulus.from_tau(3.0))
        assert (c.H, c.C1, c.C1p, c.C2, c.C2p) == pytest.approx((2.0, 1.0, 2.0, 0.5, 1.0))

    def test_positive_degree(self):
        c = bound_constants(6.0, 0.5, None)
        omega = math.sqrt(5.25)
        assert (c.H, c.C1, c.C1p, c.C2, c.C2p) == pytest.approx(
            (omega, math.sqrt(6.0) / omega, math.sqrt(6.0), 1.0 / omega, 1.0)
        )

    def test_negative_degree(self):
        c = bound_constants(3.0, -0.25, None)
        big_h = math.sqrt(3.1875)
        assert (c.H, c.C1, c.C1p, c.C2, c.C2p) == pytest.approx(
            (big_h, 1.0, big_h, 1.0 / math.sqrt(3.0), big_h / math.sqrt(3.0))
        )

    @pytest.mark.parametrize("h, nu", [(0.0, -0.25), (-1.0, 0.5), (0.7, 0.5)])
    def test_preconditions(self, h, nu):
        with pytest.raises(PreconditionViolated):
            bound_constants(h, nu, None)

    def test_modulus_relaxes_precondition(self):
        # h < nu(nu+1) but h > nu(nu+1) k^2
        c = bound_constants(0.7, 0.5, Modulus.from_k(0.5))
        assert c.H == pytest.approx(math.sqrt(0.7 - 0.75 * 0.25))


class TestMonotoneEnvelope:
    def test_harmonic_oscillator(self):
        omega = 1.7
        for direction in ("nondecreasing", "nonincreasing"):
            env = lemma2_envelope(omega**2, omega**2, direction)
            assert env == pytest.approx((1.0, omega, 1.0 / omega, 1.0))

    def test_nondecreasing(self):
        assert lemma2_envelope(1.0, 4.0, "nondecreasing") == Envelope(1.0, 2.0, 1.0, 2.0)

    def test_nonincreasing(self):
        assert lemma2_envelope(1.0, 4.0, "nonincreasing") == Envelope(2.0, 2.0, 1.0, 1.0)

    @pytest.mark.parametrize("q_min, q_max", [(0.0, 1.0), (-1.0, 1.0), (2.0, 1.0)])
    def test_preconditions(self, q_min, q_max):
        with pytest.raises(PreconditionViolated):
            lemma2_envelope(q_min, q_max, "nondecreasing")

    def test_unknown_direction(self):
        with pytest.raises(PreconditionViolated):
            lemma2_envelope(1.0, 2.0, "oscillating")

    @pytest.mark.parametrize(
        "q, direction", [(lambda t: 1.0 + t, "nondecreasing"), (lambda t: 2.0 - t, "nonincreasing")]
    )
    def test_integrated_solutions_inside_envelope(self, q, direction, cfg):
        path = trajectory(q, 0.0, 1.0, cfg)
        sup = np.max(np.abs(path[:, 1:]), axis=0)
        env = lemma2_envelope(1.0, 2.0, direction)
        assert np.all(sup <= np.asarray(env) + 1e-9)


class TestSolutionBounds:
    @settings(max_examples=10, deadline=None)
    @given(
        nu=st.floats(-0.5, 2.5),
        excess=st.floats(0.5, 10.0),
        tau=st.floats(0.5, 6.0),
        start=st.floats(0.0, 0.99),
    )
    def test_solutions_inside_constants(self, nu, excess, tau, start):
        h = max(nu * (nu + 1.0), 0.0) + excess
        p = LameParams.from_tau(h, nu, tau)
        big_k = ellip_K(p.m)
        path = trajectory(lambda t: q_lame(t, p), start * big_k, big_k)
        sup = np.max(np.abs(path[:, 1:]), axis=0)
        c = bound_constants(p.h, p.nu, p.m)
        assert np.all(sup <= np.asarray((c.C1, c.C1p, c.C2, c.C2p)) + 1e-8)


class TestComparisonBound:
    def test_degree_zero(self):
        assert theorem1_bound(4.0, 0.0, Modulus.from_tau(3.0), "y1") == 0.0

    def test_vanishes_as_k_tends_to_one(self):
        assert theorem1_bound(6.0, 0.5, Modulus.from_tau(10.0), "y1") < 1e-3

    def test_worked_example_value(self):
        m = Modulus.from_tau(5.0)
        omega = math.sqrt(5.25)
        gap = ellip_E(m) - math.tanh(ellip_K(m))
        expected = math.sqrt(6.0) / omega * (1.0 / omega) * 0.75 * gap
        assert theorem1_bound(6.0, 0.5, m, "y1") == pytest.approx(expected, rel=1e-12)

    @pytest.mark.parametrize("nu", [0.0, 0.25, 0.5, 1.0, 2.0])
    @pytest.mark.parametrize("j", [1, 4, 10])
    @pytest.mark.parametrize("tau", [3.0, 5.0, 8.0])
    def test_inclusion(self, nu, j, tau, cfg):
        h = nu * (nu + 1.0) + j
        p = LameParams.from_tau(h, nu, tau)
        fm = monodromy(p, cfg)
        big_k = ellip_K(p.m)
        assert abs(fm.y1 - w1(big_k, h, nu)) <= theorem1_bound(h, nu, p.m, "y1") + 1e-8
        assert abs(fm.y2p - w2_prime(big_k, h, nu)) <= theorem1_bound(h, nu, p.m, "y2p") + 1e-8

    def test_needs_legendre_omega(self):
        with pytest.raises(PreconditionViolated):
            theorem1_bound(0.7, 0.5, Modulus.from_k(0.5), "y1")
