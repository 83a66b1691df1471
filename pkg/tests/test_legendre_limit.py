import math

import pytest

from lamedisc.errors import OmegaUndefined, PreconditionViolated, SeriesDivergence
from lamedisc.lame_core import asymptotic_constants
from lamedisc.legendre_limit import (
    connection_constants,
    theorem2_bound,
    v_connection,
    w1,
    w1_prime,
    w2,
    w2_prime,
    z_osc,
    z_osc_prime,
)
from lamedisc.ode_floquet import fundamental_matrix

H, NU = 6.0, 0.5


class TestCanonicalSolutions:
    def test_initial_data(self):
        assert w1(0.0, H, NU) == pytest.approx(1.0, abs=1e-14)
        assert w2(0.0, H, NU) == 0.0
        assert w1_prime(0.0, H, NU) == 0.0
        assert w2_prime(0.0, H, NU) == pytest.approx(1.0, abs=1e-14)

    def test_numerical_derivatives_at_origin(self):
        d = 1e-5

        def slope(f):
            return (-3.0 * f(0.0, H, NU) + 4.0 * f(d, H, NU) - f(2.0 * d, H, NU)) / (2.0 * d)

        assert abs(slope(w1)) <= 1e-8
        assert abs(slope(w2) - 1.0) <= 1e-8

    @pytest.mark.parametrize("t", [0.3, 1.0, 2.5, 4.0])
    def test_analytic_derivatives(self, t):
        d = 1e-6
        assert w1_prime(t, H, NU) == pytest.approx(
            (w1(t + d, H, NU) - w1(t - d, H, NU)) / (2 * d), abs=1e-7
        )
        assert w2_prime(t, H, NU) == pytest.approx(
            (w2(t + d, H, NU) - w2(t - d, H, NU)) / (2 * d), abs=1e-7
        )

    @pytest.mark.parametrize("t", [0.5, 1.5, 3.0, 5.0])
    def test_ode_residual(self, t):
        d = 1e-5
        q = H - NU * (NU + 1.0) * math.tanh(t) ** 2
        for f, fp in ((w1, w1_prime), (w2, w2_prime)):
            second = (fp(t + d, H, NU) - fp(t - d, H, NU)) / (2 * d)
            assert abs(second + q * f(t, H, NU)) <= 1e-8

    @pytest.mark.parametrize("t", [1.0, 2.0, 5.0, 6.0])
    def test_matches_integrated_solutions(self, t, cfg):
        fm = fundamental_matrix(lambda s: H - NU * (NU + 1.0) * math.tanh(s) ** 2, 0.0, t, cfg)
        assert abs(w1(t, H, NU) - fm.y1) <= 1e-9
        assert abs(w2(t, H, NU) - fm.y2) <= 1e-9
        assert abs(w1_prime(t, H, NU) - fm.y1p) <= 1e-9
        assert abs(w2_prime(t, H, NU) - fm.y2p) <= 1e-9

    @pytest.mark.parametrize("t", [0.7, 2.0, 5.5])
    def test_degree_zero_is_trigonometric(self, t):
        omega = 2.0
        assert w1(t, 4.0, 0.0) == pytest.approx(math.cos(omega * t), abs=1e-12)
        assert w2(t, 4.0, 0.0) == pytest.approx(math.sin(omega * t) / omega, abs=1e-12)
        assert w1_prime(t, 4.0, 0.0) == pytest.approx(-omega * math.sin(omega * t), abs=1e-11)
        assert w2_prime(t, 4.0, 0.0) == pytest.approx(math.cos(omega * t), abs=1e-11)

    def test_domain(self):
        with pytest.raises(PreconditionViolated):
            w1(-0.1, H, NU)
        with pytest.raises(SeriesDivergence):
            w2(6.5, H, NU)
        with pytest.raises(OmegaUndefined):
            w1(1.0, 0.5, 0.5)


class TestConnection:
    @pytest.mark.parametrize("h, nu", [(6.0, 0.5), (10.0, 1.0)])
    def test_identities(self, h, nu):
        c = connection_constants(h, nu)
        ratio = math.sin(nu * math.pi) / math.sinh(c.omega * math.pi)
        assert abs(c.omega * c.A1 * c.A2.conjugate() + ratio - 1j) <= 1e-10
        assert abs(1j * c.omega * c.A1 * c.A2 - asymptotic_constants(h, nu).B) <= 1e-10

    def test_degree_zero(self):
        c = connection_constants(4.0, 0.0)
        assert c.A1 == pytest.approx(1.0, abs=1e-13)
        assert c.A2 == pytest.approx(-0.5j, abs=1e-13)

    @pytest.mark.parametrize("t", [1.0, 3.0, 5.0])
    def test_connection_form_reproduces_solutions(self, t):
        c = connection_constants(H, NU)
        assert v_connection(t, c, 1).real == pytest.approx(w1(t, H, NU), abs=1e-10)
        assert v_connection(t, c, 2).real == pytest.approx(w2(t, H, NU), abs=1e-10)

    def test_connection_form_beyond_direct_range(self):
        c = connection_constants(H, NU)
        t = 15.0
        assert v_connection(t, c, 1).real == pytest.approx(z_osc(t, c, 1), abs=1e-10)
        assert v_connection(t, c, 2).real == pytest.approx(z_osc(t, c, 2), abs=1e-10)

    def test_connection_form_needs_positive_t(self):
        with pytest.raises(PreconditionViolated):
            v_connection(0.0, connection_constants(H, NU), 1)


class TestComparisonWithOscillation:
    @pytest.mark.parametrize("h, nu", [(6.0, 0.5), (10.0, 1.0), (3.0, 0.25), (8.0, 2.0)])
    @pytest.mark.parametrize("t", [0.5, 1.0, 2.0, 3.0, 4.0, 5.0])
    def test_bounds(self, h, nu, t):
        c = connection_constants(h, nu)
        assert abs(w1(t, h, nu) - z_osc(t, c, 1)) <= theorem2_bound(t, h, nu, "w1")
        assert abs(w2_prime(t, h, nu) - z_osc_prime(t, c, 2)) <= theorem2_bound(t, h, nu, "w2p")

    def test_difference_decays(self):
        c = connection_constants(H, NU)
        late = abs(w1(6.0, H, NU) - z_osc(6.0, c, 1))
        early = abs(w1(2.0, H, NU) - z_osc(2.0, c, 1))
        assert late < early

    def test_bound_vanishes_for_degree_zero(self):
        assert theorem2_bound(1.0, 4.0, 0.0, "w1") == 0.0

    def test_bound_value(self):
        omega = math.sqrt(5.25)
        expected = math.sqrt(6.0) / omega / omega * 0.75 * (1.0 - math.tanh(2.0))
        assert theorem2_bound(2.0, H, NU, "w1") == pytest.approx(expected, rel=1e-13)

    def test_bound_rejects_unknown_quantity(self):
        with pytest.raises(PreconditionViolated):
            theorem2_bound(1.0, H, NU, "w2")
