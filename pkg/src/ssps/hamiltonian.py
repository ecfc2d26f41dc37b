"""Planar Hamiltonian reduction of the distributed-delay equation.

The system is x' = -y, y' = 2 f(x) with energy y^2 + 4 F(x), where F is the
antiderivative of the feedback function f.  Closed orbits of this system with
minimal period 2 are exactly the symmetric period-2 solutions of the delay
equation, which is what makes the orbit integrator and the period quadrature
useful as independent verification routes.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, OddnessError
from .numerics import bisect, cubic_interp_uniform, gl_nodes


@dataclass(frozen=True)
class Nonlinearity:
    """Feedback function f with its open domain and symmetry metadata.

    ``strength`` is the multiplicative parameter (r for the sine and
    exponential kinds, gamma for sinh, 1 for the linear oscillator).
    Instances are callable on scalars or arrays; evaluation is unchecked,
    domain validation happens in the operations that need it.
    """

    kind: str
    strength: float
    domain: tuple[float, float]
    odd: bool

    def __call__(self, x):
        s = self.strength
        if self.kind == "sine":
            return s * np.sin(x)
        if self.kind == "expm1":
            return s * np.expm1(x)
        if self.kind == "sinh":
            return s * np.sinh(x)
        return s * np.asarray(x, dtype=float)

    def potential(self, x):
        """Antiderivative F(x) = int_0^x f, in closed form per kind."""
        s = self.strength
        if self.kind == "sine":
            return 2.0 * s * np.sin(0.5 * np.asarray(x, dtype=float)) ** 2
        if self.kind == "expm1":
            x = np.asarray(x, dtype=float)
            return s * (np.expm1(x) - x)
        if self.kind == "sinh":
            return 2.0 * s * np.sinh(0.5 * np.asarray(x, dtype=float)) ** 2
        return 0.5 * s * np.asarray(x, dtype=float) ** 2

    def contains(self, x) -> bool:
        lo, hi = self.domain
        return bool(np.all((np.asarray(x) > lo) & (np.asarray(x) < hi)))

    def scalar_fn(self):
        """Plain-float closure for tight integration loops."""
        return _scalar_fn(self.kind, self.strength)


@functools.lru_cache(maxsize=64)
def _scalar_fn(kind: str, s: float):
    if kind == "sine":
        sin = math.sin
        return lambda x: s * sin(x)
    if kind == "expm1":
        expm1 = math.expm1
        return lambda x: s * expm1(x)
    if kind == "sinh":
        sinh = math.sinh
        return lambda x: s * sinh(x)
    return lambda x: s * x


def _positive(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value) or value <= 0.0:
        raise DomainError(f"{name} must be positive and finite, got {value!r}")
    return value


def sine_r(r: float) -> Nonlinearity:
    """f(x) = r sin x on (-pi, pi); odd, sign-matching."""
    return Nonlinearity("sine", _positive("r", r), (-math.pi, math.pi), True)


def exp_m1_r(r: float) -> Nonlinearity:
    """f(x) = r (e^x - 1) on all of R; explicitly not odd."""
    return Nonlinearity("expm1", _positive("r", r), (-math.inf, math.inf), False)


def sinh_gamma(gamma: float) -> Nonlinearity:
    """f(w) = gamma sinh w; the shifted reduction of the exponential model."""
    return Nonlinearity("sinh", _positive("gamma", gamma), (-math.inf, math.inf), True)


def linear_unit() -> Nonlinearity:
    """f(x) = x; the isochronous reference oscillator x'' = -2x."""
    return Nonlinearity("linear", 1.0, (-math.inf, math.inf), True)


@dataclass(frozen=True)
class PhasePoint:
    """State x with conjugate variable y = -x'."""

    x: float
    y: float


def potential_F(f: Nonlinearity, x):
    """F(x) with domain validation."""
    if not f.contains(x):
        raise DomainError(f"x={x!r} outside the domain {f.domain} of {f.kind}")
    val = f.potential(x)
    return float(val) if np.ndim(val) == 0 else val


def hamiltonian_H(f: Nonlinearity, p: PhasePoint) -> float:
    """Energy y^2 + 4 F(x) of a phase point."""
    return p.y * p.y + 4.0 * potential_F(f, p.x)


@dataclass(frozen=True)
class Orbit:
    """Fixed-step RK4 trajectory of the planar system from (a, 0).

    ``period`` is the measured first-return time (None if the run is too
    short); ``energy_drift`` is max |H - H0| / |H0| over the run and
    ``drift_constant`` reports drift / dt^4.
    """

    f: Nonlinearity
    a: float
    dt: float
    ts: np.ndarray = field(repr=False)
    xs: np.ndarray = field(repr=False)
    ys: np.ndarray = field(repr=False)
    period: float | None
    energy0: float
    energy_drift: float
    drift_constant: float


def _rk4_step(fn, x: float, y: float, dt: float) -> tuple[float, float]:
    k1x = -y
    k1y = 2.0 * fn(x)
    k2x = -(y + 0.5 * dt * k1y)
    k2y = 2.0 * fn(x + 0.5 * dt * k1x)
    k3x = -(y + 0.5 * dt * k2y)
    k3y = 2.0 * fn(x + 0.5 * dt * k2x)
    k4x = -(y + dt * k3y)
    k4y = 2.0 * fn(x + dt * k3x)
    return (
        dt * (k1x + 2.0 * (k2x + k3x) + k4x) / 6.0,
        dt * (k1y + 2.0 * (k2y + k3y) + k4y) / 6.0,
    )


def integrate_orbit(f: Nonlinearity, a: float, dt: float, steps: int) -> Orbit:
    """Classical RK4 trajectory of x' = -y, y' = 2 f(x) from (a, 0).

    State accumulation is compensated (Kahan) so the measured energy drift
    reflects truncation error rather than summation roundoff.  The period is
    located as the first return of y to 0 on the starting side of the well,
    refined by bisection to 1e-12 in t.
    """
    a = float(a)
    dt = float(dt)
    if not f.contains(a) or a == 0.0:
        raise DomainError(f"initial amplitude a={a!r} must be nonzero and inside {f.domain}")
    if dt <= 0.0 or steps < 1:
        raise DomainError("dt must be positive and steps >= 1")
    fn = f.scalar_fn()
    lo, hi = f.domain
    xs = np.empty(steps + 1)
    ys = np.empty(steps + 1)
    x, y = a, 0.0
    cx = cy = 0.0
    xs[0] = x
    ys[0] = y
    for i in range(1, steps + 1):
        incx, incy = _rk4_step(fn, x, y, dt)
        tx = incx - cx
        sx = x + tx
        cx = (sx - x) - tx
        x = sx
        ty = incy - cy
        sy = y + ty
        cy = (sy - y) - ty
        y = sy
        if not lo < x < hi:
            raise DomainError(f"trajectory left the domain {f.domain} at t={i * dt:.6g}")
        xs[i] = x
        ys[i] = y
    ts = dt * np.arange(steps + 1)

    period = _first_return(fn, xs, ys, dt, math.copysign(1.0, a))

    energy = ys**2 + 4.0 * f.potential(xs)
    energy0 = float(energy[0])
    drift = float(np.max(np.abs(energy - energy0)) / abs(energy0))
    return Orbit(f, a, dt, ts, xs, ys, period, energy0, drift, drift / dt**4)


def _first_return(fn, xs, ys, dt, a_sign) -> float | None:
    """First time y crosses 0 with x on the starting side of the well."""
    for i in range(2, len(ys)):
        y0, y1 = ys[i - 1], ys[i]
        if y0 == 0.0:
            t_cross, x_cross = dt * (i - 1), xs[i - 1]
        elif y0 * y1 < 0.0:
            x_base, y_base = xs[i - 1], ys[i - 1]

            def y_after(h, xb=x_base, yb=y_base):
                if h == 0.0:
                    return yb
                dxh, dyh = _rk4_step(fn, xb, yb, h)
                return yb + dyh

            h_root = bisect(y_after, 0.0, dt, xtol=1e-12)
            dxh, _ = _rk4_step(fn, x_base, y_base, h_root)
            t_cross, x_cross = dt * (i - 1) + h_root, x_base + dxh
        else:
            continue
        if x_cross * a_sign > 0.0:
            return t_cross
    return None


def period_by_quadrature(f: Nonlinearity, a: float, order: int = 64) -> float:
    """Orbit period T = 2 int_0^a dx / sqrt(F(a) - F(x)) for a symmetric well.

    The substitution x = a sin(theta) removes the inverse-square-root endpoint
    singularity, after which a single 64-point Gauss-Legendre panel resolves
    the smooth integrand to ~1e-13 relative.
    """
    if not f.odd:
        raise OddnessError(f"period quadrature needs an odd feedback function, got {f.kind}")
    a = float(a)
    if a <= 0.0 or not f.contains(a):
        raise DomainError(f"amplitude a={a!r} must be positive and inside {f.domain}")
    theta, w = gl_nodes(0.0, 0.5 * math.pi, order)
    f_a = float(f.potential(a))
    integrand = a * np.cos(theta) / np.sqrt(f_a - f.potential(a * np.sin(theta)))
    return 2.0 * float(np.dot(w, integrand))


@dataclass(frozen=True)
class SymmetryReport:
    """Measured symmetry defects of an integrated orbit.

    ``reflection_defects`` holds the ODE residuals of the three reflected
    trajectories (-x, -y), (x(-t), -y(-t)) and (-x(-t), y(-t)), which are
    themselves solutions whenever f is odd.
    """

    evenness_defect: float
    oddness_defect: float
    quarter_defect: float
    reflection_defects: tuple[float, float, float]
    tol: float
    passed: bool


def _ode_residual(f: Nonlinearity, X: np.ndarray, Y: np.ndarray, dt: float) -> float:
    """Sup-norm residual of x' = -y, y' = 2 f(x) by 5-point finite differences."""
    dX = (X[:-4] - 8.0 * X[1:-3] + 8.0 * X[3:-1] - X[4:]) / (12.0 * dt)
    dY = (Y[:-4] - 8.0 * Y[1:-3] + 8.0 * Y[3:-1] - Y[4:]) / (12.0 * dt)
    r1 = np.max(np.abs(dX + Y[2:-2]))
    r2 = np.max(np.abs(dY - 2.0 * f(X[2:-2])))
    return float(max(r1, r2))


def check_orbit_symmetries(orbit: Orbit, n_check: int = 512, tol: float = 1e-6) -> SymmetryReport:
    """Measure the time symmetries a well-formed orbit from (a, 0) must have.

    Checks evenness of x about t=0 (via x(t) vs x(T-t)), oddness of y,
    odd symmetry of x about the quarter period, and that the three sign/time
    reflections still satisfy the system.  Pure measurement: failures are
    reported, never raised.
    """
    if not orbit.f.odd:
        raise OddnessError("symmetry checks presume an odd feedback function")
    if orbit.period is None:
        raise DomainError("orbit is too short: no measured period")
    T = orbit.period
    if orbit.ts[-1] < T:
        raise DomainError("orbit must cover at least one full period")
    dt = orbit.dt

    def x_at(q):
        return cubic_interp_uniform(orbit.xs, 0.0, dt, q)

    def y_at(q):
        return cubic_interp_uniform(orbit.ys, 0.0, dt, q)

    q = np.linspace(0.0, T, n_check)
    evenness = float(np.max(np.abs(x_at(q) - x_at(T - q))))
    oddness = float(np.max(np.abs(y_at(q) + y_at(T - q))))
    q4 = np.linspace(0.0, 0.25 * T, n_check)
    quarter = float(np.max(np.abs(x_at(0.25 * T + q4) + x_at(0.25 * T - q4))))

    xs, ys = orbit.xs, orbit.ys
    reflections = (
        _ode_residual(orbit.f, -xs, -ys, dt),
        _ode_residual(orbit.f, xs[::-1], -ys[::-1], dt),
        _ode_residual(orbit.f, -xs[::-1], ys[::-1], dt),
    )
    defects = (evenness, oddness, quarter, *reflections)
    return SymmetryReport(
        evenness, oddness, quarter, reflections, tol, all(d <= tol for d in defects)
    )
