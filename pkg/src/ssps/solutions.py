"""Closed-form symmetric period-2 solutions and their building blocks.

Both feedback models admit explicit period-2 solutions built from Jacobi
elliptic functions once a transcendental modulus equation is solved:

* sine model f(x) = r sin x:   x(t) = 2 arcsin(m sn(sqrt(2r) t, m)) with
  K(m) = sqrt(2r)/2;
* exponential model f(x) = r (e^x - 1):   x(t) = c/2 + 2 asinh(alpha cn(2K t, k))
  with r = 2K(k) (2E(k) - K(k)(1 - k^2)), where c is the conserved value of
  x(t) + x(t-1).

Both equations are solved by bisection on guaranteed brackets in the
complementary modulus, which stays accurate arbitrarily close to k = 1 (large
feedback strength drives k exponentially close to 1 in the exponential model).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .elliptic import Modulus, jacobi_ladder, _agm_pair
from .errors import DomainError, MonotonicityWarning, NoSolutionError, SspsError

THRESHOLD = 0.5 * math.pi * math.pi  # existence threshold pi^2/2 for both models

_NO_SOLUTION_MSG = "no SSPS exists: r <= pi^2/2"


@dataclass(frozen=True)
class SineSSPS:
    """Period-2 solution of the sine model.

    ``m`` is the elliptic modulus, ``a = m**2`` the squared-modulus parameter
    some derivations use; the peak amplitude is 2 arcsin(m).
    """

    r: float
    m: Modulus
    a: float
    K: float
    period: float
    x: Callable = field(repr=False, compare=False)
    dx: Callable = field(repr=False, compare=False)

    @property
    def declared_period(self) -> float:
        return self.period

    @property
    def amplitude(self) -> float:
        return 2.0 * math.asin(self.m.k)


@dataclass(frozen=True)
class ExpSSPS:
    """Period-2 solution of the exponential model.

    ``c`` is the conserved sum x(t) + x(t-1); beta = 2K(k) is the elliptic
    frequency, gamma = r e^{c/2} the strength of the reduced sinh system and
    alpha = k / k' its amplitude parameter.
    """

    r: float
    k: Modulus
    c: float
    beta: float
    gamma: float
    alpha: float
    K: float
    E: float
    period: float
    x: Callable = field(repr=False, compare=False)
    dx: Callable = field(repr=False, compare=False)

    @property
    def declared_period(self) -> float:
        return self.period


@dataclass(frozen=True)
class PendulumOrbit:
    """Closed orbit of x'' = -2r sin x from (a, 0), in elliptic closed form.

    x(t) = 2 arcsin(k sn(sqrt(2r) t + K(k), k)) with k = sin(a/2); the period
    is 4K(k)/sqrt(2r).
    """

    r: float
    amplitude: float
    m: Modulus
    K: float
    period: float
    x: Callable = field(repr=False, compare=False)
    dx: Callable = field(repr=False, compare=False)

    @property
    def declared_period(self) -> float:
        return self.period


@dataclass(frozen=True)
class WYPair:
    """Solution (w, y) of w' = -y, y' = 2 gamma sinh w from (a, 0).

    w(t) = 2 asinh(alpha cn(beta t, k)), y(t) = 2 beta k sn(beta t, k) with
    alpha = sinh(a/2), beta = sqrt(2 gamma (1 + alpha^2)),
    k = alpha / sqrt(1 + alpha^2).
    """

    gamma: float
    a: float
    alpha: float
    beta: float
    k: Modulus
    period: float
    w: Callable = field(repr=False, compare=False)
    y: Callable = field(repr=False, compare=False)


def _bisect_kprime(g, lo: float, hi: float, max_iter: int = 240) -> float:
    """Bisection in the complementary modulus for a decreasing g with g(lo)>0>g(hi).

    Runs to floating-point bracket exhaustion; each evaluation is one AGM pass,
    so the fixed budget is cheap.
    """
    glo = g(lo)
    ghi = g(hi)
    if glo == 0.0:
        return lo
    if ghi == 0.0:
        return hi
    if not (glo > 0.0 > ghi):
        raise SspsError("modulus bracket lost its sign change")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        gm = g(mid)
        if gm == 0.0:
            return mid
        if gm > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _expand_bracket(g, start: float) -> float:
    """Shrink a trial kprime by squaring until g becomes positive."""
    kp = start
    while g(kp) <= 0.0:
        kp *= kp
        if kp < 1e-280:
            raise DomainError("feedback strength too large for double-precision moduli")
    return kp


def solve_sine_modulus(r: float) -> Modulus:
    """Modulus m with K(m) = sqrt(2r)/2, unique by strict monotonicity of K.

    Raises NoSolutionError for r <= pi^2/2, where the target falls below
    K(0) = pi/2.
    """
    r = float(r)
    if not math.isfinite(r) or r <= THRESHOLD:
        raise NoSolutionError(_NO_SOLUTION_MSG)
    target = math.sqrt(2.0 * r) / 2.0

    def g(kp):
        k = math.sqrt((1.0 - kp) * (1.0 + kp))
        return _agm_pair(k, kp)[0] - target

    kp_lo = _expand_bracket(g, 0.25)
    kp = _bisect_kprime(g, kp_lo, 1.0)
    return Modulus.from_kprime(kp)


def sine_ssps(r: float) -> SineSSPS:
    """Construct the sine-model period-2 solution for feedback strength r."""
    m = solve_sine_modulus(r)
    omega = math.sqrt(2.0 * r)
    ladder = jacobi_ladder(m)
    big_k = ladder.quarter_period
    mk = m.k

    def x(t):
        sn, _, _ = ladder(omega * np.asarray(t, dtype=float))
        return 2.0 * np.arcsin(mk * sn)

    def dx(t):
        _, cn, _ = ladder(omega * np.asarray(t, dtype=float))
        return 2.0 * mk * omega * cn

    return SineSSPS(float(r), m, mk * mk, big_k, 2.0, x, dx)


def pendulum_orbit(r: float, a: float) -> PendulumOrbit:
    """Closed pendulum orbit of amplitude a in (0, pi); period 4K(k)/sqrt(2r)."""
    r = float(r)
    a = float(a)
    if not math.isfinite(r) or r <= 0.0:
        raise DomainError(f"r must be positive, got {r!r}")
    if not 0.0 < a < math.pi:
        raise DomainError(f"amplitude a={a!r} outside (0, pi)")
    m = Modulus.from_k(math.sin(0.5 * a))
    omega = math.sqrt(2.0 * r)
    ladder = jacobi_ladder(m)
    big_k = ladder.quarter_period
    mk = m.k

    def x(t):
        sn, _, _ = ladder(omega * np.asarray(t, dtype=float) + big_k)
        return 2.0 * np.arcsin(mk * sn)

    def dx(t):
        _, cn, _ = ladder(omega * np.asarray(t, dtype=float) + big_k)
        return 2.0 * mk * omega * cn

    return PendulumOrbit(r, a, m, big_k, 4.0 * big_k / omega, x, dx)


def _exp_rhs(kp: float) -> float:
    """2K(2E - K k'^2), the strength r produced by a modulus with complement kp."""
    k = math.sqrt((1.0 - kp) * (1.0 + kp))
    big_k, big_e = _agm_pair(k, kp)
    return 2.0 * big_k * (2.0 * big_e - big_k * kp * kp)


def solve_exp_modulus(r: float) -> Modulus:
    """Modulus k solving r = 2K(k)(2E(k) - K(k)(1-k^2)).

    The right-hand side grows from pi^2/2 at k=0, strictly increasing in k
    (checked on a sample grid before the solve; a violation would emit
    MonotonicityWarning).  For large r the root sits exponentially close to
    k = 1, which the complementary-modulus bisection resolves without loss.
    """
    r = float(r)
    if not math.isfinite(r) or r <= THRESHOLD:
        raise NoSolutionError(_NO_SOLUTION_MSG)

    def g(kp):
        return _exp_rhs(kp) - r

    kp_lo = _expand_bracket(g, 1e-4)
    grid = np.geomspace(kp_lo, 1.0, 17)
    rhs_grid = [_exp_rhs(float(kp)) for kp in grid]
    if any(b >= a for a, b in zip(rhs_grid, rhs_grid[1:])):
        warnings.warn(
            "strength equation is not strictly monotone on the solve bracket",
            MonotonicityWarning,
            stacklevel=2,
        )
    kp = _bisect_kprime(g, kp_lo, 1.0)
    return Modulus.from_kprime(kp)


def exp_ssps(r: float) -> ExpSSPS:
    """Construct the exponential-model period-2 solution for strength r.

    The offset c is fixed by the zero-mean condition int_0^1 (e^x - 1) dt = 0;
    its two closed-form expressions are cross-checked at construction so a bad
    modulus solve fails loudly instead of producing a plausible-looking orbit.
    """
    r = float(r)
    k = solve_exp_modulus(r)
    big_k, big_e = _agm_pair(k.k, k.kprime)
    kp2 = k.kprime * k.kprime
    beta = 2.0 * big_k
    exp_half_c = 2.0 * big_k * big_k * kp2 / r
    exp_half_c_alt = big_k * kp2 / (2.0 * big_e - big_k * kp2)
    if abs(exp_half_c / exp_half_c_alt - 1.0) > 1e-10:
        raise SspsError("inconsistent offset expressions: modulus solve is suspect")
    c = 2.0 * math.log(exp_half_c)
    alpha = k.k / k.kprime
    gamma = r * exp_half_c
    if abs(beta * k.k - math.sqrt(2.0 * gamma) * alpha) > 1e-12 * max(1.0, beta * k.k):
        raise SspsError("frequency identity beta*k = sqrt(2 gamma)*alpha violated")

    ladder = jacobi_ladder(k)
    half_c = 0.5 * c
    kk = k.k

    def x(t):
        _, cn, _ = ladder(beta * np.asarray(t, dtype=float))
        return half_c + 2.0 * np.arcsinh(alpha * cn)

    def dx(t):
        sn, _, _ = ladder(beta * np.asarray(t, dtype=float))
        return -2.0 * beta * kk * sn

    return ExpSSPS(r, k, c, beta, gamma, alpha, big_k, big_e, 2.0, x, dx)


def wy_solution(gamma: float, a: float) -> WYPair:
    """Solution of w' = -y, y' = 2 gamma sinh w from (w, y)(0) = (a, 0)."""
    gamma = float(gamma)
    a = float(a)
    if not math.isfinite(gamma) or gamma <= 0.0:
        raise DomainError(f"gamma must be positive, got {gamma!r}")
    if not math.isfinite(a) or a <= 0.0:
        raise DomainError(f"initial amplitude a must be positive, got {a!r}")
    alpha = math.sinh(0.5 * a)
    hyp = math.hypot(1.0, alpha)
    k = Modulus(alpha / hyp, 1.0 / hyp)
    beta = math.sqrt(2.0 * gamma) * hyp
    ladder = jacobi_ladder(k)
    big_k = ladder.quarter_period
    kk = k.k

    def w(t):
        _, cn, _ = ladder(beta * np.asarray(t, dtype=float))
        return 2.0 * np.arcsinh(alpha * cn)

    def y(t):
        sn, _, _ = ladder(beta * np.asarray(t, dtype=float))
        return 2.0 * beta * kk * sn

    return WYPair(gamma, a, alpha, beta, k, 4.0 * big_k / beta, w, y)
