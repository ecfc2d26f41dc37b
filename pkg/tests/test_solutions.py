import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import fd_derivative
from ssps.elliptic import complete_E, complete_K, jacobi_ladder
from ssps.errors import DomainError, NoSolutionError
from ssps.numerics import integrate_gl
from ssps.solutions import (
    THRESHOLD,
    exp_ssps,
    pendulum_orbit,
    sine_ssps,
    solve_exp_modulus,
    solve_sine_modulus,
    wy_solution,
)

# frozen from a 30-digit arbitrary-precision solve
M_SINE_10 = 0.88907990932342057063
K_EXP_10 = 0.94704754142002203781
KPRIME_EXP_10 = 0.32109337316470989834
C_EXP_10 = -3.9971134873515004175
X0_EXP_10 = 1.6061181761047308984

BELOW_THRESHOLD = [4.0, 4.93, THRESHOLD, THRESHOLD - 1e-3]


def exp_rhs(k) -> float:
    return 2.0 * complete_K(k) * (2.0 * complete_E(k) - complete_K(k) * (1.0 - k * k))


class TestSineModulus:
    @pytest.mark.parametrize("r", BELOW_THRESHOLD)
    def test_no_solution_below_threshold(self, r):
        with pytest.raises(NoSolutionError):
            solve_sine_modulus(r)

    def test_barely_above_threshold(self):
        m = solve_sine_modulus(THRESHOLD + 1e-3)
        assert 0.0 < m.k < 0.05

    def test_reference_value(self):
        m = solve_sine_modulus(10.0)
        assert 0.888 < m.k < 0.891  # bracket pinned by K(0.888) < sqrt(5) < K(0.891)
        assert m.k == pytest.approx(M_SINE_10, rel=1e-13)

    @pytest.mark.parametrize("r", [4.94, 5.5, 10.0, 100.0, 300.0])
    def test_roundtrip_residual(self, r):
        m = solve_sine_modulus(r)
        assert abs(complete_K(m) - math.sqrt(2.0 * r) / 2.0) <= 1e-13
        assert abs(2.0 * complete_K(m) / math.sqrt(2.0 * r) - 1.0) <= 1e-12

    def test_large_r_complement(self):
        m = solve_sine_modulus(100.0)
        assert m.k == pytest.approx(0.9999942289479328, rel=1e-13)


class TestSineSSPS:
    def test_fields(self, sine10):
        assert sine10.period == 2.0
        assert sine10.declared_period == 2.0
        assert sine10.a == pytest.approx(sine10.m.k**2, rel=1e-15)
        assert sine10.K == pytest.approx(math.sqrt(20.0) / 2.0, rel=1e-14)
        assert 0.0 < sine10.amplitude < math.pi

    def test_starts_at_zero_and_peaks_at_half(self, sine10):
        assert sine10.x(0.0) == 0.0
        assert sine10.x(0.5) == pytest.approx(2.0 * math.asin(sine10.m.k), rel=1e-13)
        t = np.linspace(0.0, 2.0, 401)
        assert np.max(sine10.x(t)) <= sine10.x(0.5) + 1e-13

    def test_half_shift_antisymmetry(self, sine10):
        t = np.linspace(0.0, 2.0, 101)
        assert np.max(np.abs(sine10.x(t) + sine10.x(t - 1.0))) <= 1e-11

    def test_odd_about_zero_even_about_half(self, sine10):
        t = np.linspace(0.0, 1.0, 101)
        assert np.max(np.abs(sine10.x(-t) + sine10.x(t))) <= 1e-11
        assert np.max(np.abs(sine10.x(0.5 + t) - sine10.x(0.5 - t))) <= 1e-11

    def test_derivative_matches_fd(self, sine10):
        t = np.linspace(0.0, 2.0, 101)
        assert np.max(np.abs(fd_derivative(sine10.x, t) - sine10.dx(t))) <= 1e-6

    def test_matches_quarter_shifted_pendulum(self, sine10):
        p = pendulum_orbit(10.0, sine10.amplitude)
        t = np.linspace(0.0, 2.0, 37)
        assert np.max(np.abs(sine10.x(t + 0.5) - p.x(t))) <= 1e-12
        assert p.period == pytest.approx(2.0, abs=1e-10)


class TestPendulumOrbit:
    def test_initial_amplitude(self):
        for a in (0.2, 1.0, 2.9):
            p = pendulum_orbit(10.0, a)
            assert p.x(0.0) == pytest.approx(a, abs=1e-13)
            assert abs(p.dx(0.0)) <= 1e-12

    def test_small_amplitude_period(self):
        p = pendulum_orbit(10.0, 1e-6)
        assert p.period == pytest.approx(2.0 * math.pi / math.sqrt(20.0), rel=1e-11)

    def test_energy_relation(self):
        r, a = 10.0, 1.7
        p = pendulum_orbit(r, a)
        t = np.linspace(0.0, p.period, 101)
        y = -np.asarray(p.dx(t))
        energy = y**2 + 8.0 * r * np.sin(np.asarray(p.x(t)) / 2.0) ** 2
        assert np.max(np.abs(energy - 8.0 * r * math.sin(a / 2.0) ** 2)) <= 1e-9

    @pytest.mark.parametrize("bad_a", [0.0, -0.3, math.pi, 3.5])
    def test_domain_validation(self, bad_a):
        with pytest.raises(DomainError):
            pendulum_orbit(10.0, bad_a)

    def test_rejects_nonpositive_r(self):
        with pytest.raises(DomainError):
            pendulum_orbit(0.0, 1.0)


class TestExpModulus:
    @pytest.mark.parametrize("r", BELOW_THRESHOLD)
    def test_no_solution_below_threshold(self, r):
        with pytest.raises(NoSolutionError):
            solve_exp_modulus(r)

    def test_barely_above_threshold(self):
        k = solve_exp_modulus(THRESHOLD + 1e-3)
        assert 0.0 < k.k < 0.05

    def test_reference_value(self):
        k = solve_exp_modulus(10.0)
        assert 0.9 < k.k < 0.95  # bracket pinned by RHS(0.9) < 10 < RHS(0.95)
        assert k.k == pytest.approx(K_EXP_10, rel=1e-13)
        assert k.kprime == pytest.approx(KPRIME_EXP_10, rel=1e-13)

    def test_strength_bracket_values(self):
        assert exp_rhs(0.9) < 10.0 < exp_rhs(0.95)
        # edge of the solvable family: the limit at k = 0 is the threshold
        assert exp_rhs(1e-8) == pytest.approx(THRESHOLD, rel=1e-12)

    @pytest.mark.parametrize("r", [4.94, 10.0, 50.0, 100.0, 500.0])
    def test_equation_residual(self, r):
        k = solve_exp_modulus(r)
        big_k = complete_K(k)
        big_e = complete_E(k)
        rhs = 2.0 * big_k * (2.0 * big_e - big_k * k.kprime**2)
        assert abs(rhs - r) <= 1e-10

    def test_large_r_uses_complement(self):
        k = solve_exp_modulus(100.0)
        assert k.k == 1.0  # double precision cannot see 1 - 1.5e-21
        assert k.kprime == pytest.approx(5.555177545985608e-11, rel=1e-11)

    def test_rhs_strictly_increasing(self):
        ks = np.linspace(0.004, 0.996, 200)
        vals = [exp_rhs(float(k)) for k in ks]
        assert all(b > a for a, b in zip(vals, vals[1:]))


class TestExpSSPS:
    def test_fields_and_identities(self, exp10):
        e = exp10
        assert e.period == 2.0
        assert e.beta == pytest.approx(2.0 * e.K, rel=1e-15)
        assert e.c == pytest.approx(C_EXP_10, rel=1e-12)
        assert e.alpha == pytest.approx(e.k.k / e.k.kprime, rel=1e-14)
        assert e.gamma == pytest.approx(e.r * math.exp(e.c / 2.0), rel=1e-12)
        # frequency identity beta k = sqrt(2 gamma) alpha
        assert e.beta * e.k.k == pytest.approx(math.sqrt(2.0 * e.gamma) * e.alpha, rel=1e-12)
        # offset identity e^{c/2} (2E/((1-k^2)K) - 1) = 1
        lhs = math.exp(e.c / 2.0) * (2.0 * e.E / (e.k.kprime**2 * e.K) - 1.0)
        assert lhs == pytest.approx(1.0, abs=1e-10)

    def test_peak_value(self, exp10):
        assert exp10.x(0.0) == pytest.approx(X0_EXP_10, rel=1e-12)

    def test_offset_on_grid(self, exp10):
        t = np.linspace(0.0, 2.0, 101)
        assert np.max(np.abs(exp10.x(t) + exp10.x(t - 1.0) - exp10.c)) <= 1e-10

    def test_zero_mean_of_exponential(self, exp10):
        val = integrate_gl(lambda t: np.expm1(exp10.x(t)), 0.0, 1.0, order=64)
        assert abs(val) <= 1e-9

    def test_period_two_and_not_one(self, exp10):
        t = np.linspace(0.0, 2.0, 101)
        assert np.max(np.abs(exp10.x(t + 2.0) - exp10.x(t))) <= 1e-10
        assert np.max(np.abs(exp10.x(t + 1.0) - exp10.x(t))) > 0.1

    def test_derivative_matches_fd(self, exp10):
        t = np.linspace(0.0, 2.0, 101)
        assert np.max(np.abs(fd_derivative(exp10.x, t) - exp10.dx(t))) <= 1e-6

    def test_matches_literal_log_form(self, exp10):
        # log( K (dn + k cn)^2 / (2E - K(1-k^2)) ) evaluated directly
        e = exp10
        lad = jacobi_ladder(e.k)
        t = np.linspace(0.0, 2.0, 101)
        _, cn, dn = lad(e.beta * t)
        literal = np.log(e.K * (dn + e.k.k * cn) ** 2 / (2.0 * e.E - e.K * e.k.kprime**2))
        assert np.max(np.abs(np.asarray(e.x(t)) - literal)) <= 1e-12

    def test_construction_succeeds_at_large_r(self):
        e = exp_ssps(100.0)
        assert math.isfinite(e.x(0.0)) and math.isfinite(e.x(1.0))
        assert e.x(0.0) == pytest.approx(3.9120230054, rel=1e-9)
        assert e.c == pytest.approx(-89.40336526690392, rel=1e-12)
        t = np.linspace(0.0, 2.0, 101)
        assert np.max(np.abs(e.x(t) + e.x(t - 1.0) - e.c)) <= 1e-10


class TestWySolution:
    def test_initial_condition(self):
        pair = wy_solution(1.3, 2.0)
        assert pair.w(0.0) == pytest.approx(2.0, rel=1e-14)
        assert pair.y(0.0) == 0.0

    def test_sinh_half_matches_cn(self):
        pair = wy_solution(0.9, 1.4)
        t = np.linspace(0.0, 3.0, 101)
        _, cn, _ = jacobi_ladder(pair.k)(pair.beta * t)
        assert np.max(np.abs(np.sinh(np.asarray(pair.w(t)) / 2.0) - pair.alpha * cn)) <= 1e-10

    def test_energy_relation(self):
        gamma, a = 1.7, 2.2
        pair = wy_solution(gamma, a)
        t = np.linspace(0.0, pair.period, 101)
        energy = np.asarray(pair.y(t)) ** 2 + 8.0 * gamma * np.sinh(np.asarray(pair.w(t)) / 2.0) ** 2
        assert np.max(np.abs(energy - 8.0 * gamma * math.sinh(a / 2.0) ** 2)) <= 1e-9

    def test_satisfies_reduced_system(self):
        gamma = 1.2
        pair = wy_solution(gamma, 1.8)
        t = np.linspace(0.1, 2.9, 57)
        assert np.max(np.abs(fd_derivative(pair.w, t) + np.asarray(pair.y(t)))) <= 1e-6
        assert np.max(
            np.abs(fd_derivative(pair.y, t) - 2.0 * gamma * np.sinh(np.asarray(pair.w(t))))
        ) <= 1e-6

    def test_parameter_identities(self):
        gamma, a = 2.4, 1.1
        pair = wy_solution(gamma, a)
        alpha = math.sinh(a / 2.0)
        assert pair.alpha == pytest.approx(alpha, rel=1e-15)
        assert pair.beta == pytest.approx(math.sqrt(2.0 * gamma * (1.0 + alpha**2)), rel=1e-15)
        assert pair.k.k == pytest.approx(alpha / math.sqrt(1.0 + alpha**2), rel=1e-15)
        assert pair.period == pytest.approx(4.0 * complete_K(pair.k) / pair.beta, rel=1e-15)

    def test_period_two_for_ssps_parameters(self, exp10):
        pair = wy_solution(exp10.gamma, 2.0 * math.asinh(exp10.alpha))
        assert pair.beta == pytest.approx(2.0 * exp10.K, rel=1e-12)
        assert pair.period == pytest.approx(2.0, rel=1e-12)

    def test_domain_validation(self):
        with pytest.raises(DomainError):
            wy_solution(0.0, 1.0)
        with pytest.raises(DomainError):
            wy_solution(1.0, -0.5)


@given(r=st.floats(4.95, 300.0, allow_nan=False))
@settings(max_examples=40, deadline=None)
def test_sine_roundtrip_property(r):
    m = solve_sine_modulus(r)
    assert abs(2.0 * complete_K(m) / math.sqrt(2.0 * r) - 1.0) <= 1e-12


@given(r=st.floats(4.95, 300.0, allow_nan=False))
@settings(max_examples=40, deadline=None)
def test_exp_equation_property(r):
    k = solve_exp_modulus(r)
    big_k = complete_K(k)
    rhs = 2.0 * big_k * (2.0 * complete_E(k) - big_k * k.kprime**2)
    assert abs(rhs - r) <= 1e-10


def test_threshold_transition_is_sharp():
    for solver in (solve_sine_modulus, solve_exp_modulus):
        with pytest.raises(NoSolutionError):
            solver(THRESHOLD - 1e-3)
        modulus = solver(THRESHOLD + 1e-3)
        assert 0.0 < modulus.k < 0.05
