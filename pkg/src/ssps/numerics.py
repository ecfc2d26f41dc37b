"""Shared numerical kernels: quadrature rules, uniform-grid interpolation, bisection.

Everything here is deterministic and allocation-light; these routines back the
higher-level solvers and verifiers.
"""

from __future__ import annotations

import functools
import math

import numpy as np


@functools.lru_cache(maxsize=None)
def gauss_legendre(order: int):
    """Gauss-Legendre nodes and weights on [-1, 1], cached per order."""
    if not 2 <= order <= 512:
        raise ValueError(f"quadrature order {order} outside [2, 512]")
    nodes, weights = np.polynomial.legendre.leggauss(order)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def gl_nodes(a: float, b: float, order: int):
    """Nodes/weights of the order-point Gauss-Legendre rule mapped to [a, b]."""
    x, w = gauss_legendre(order)
    half = 0.5 * (b - a)
    return 0.5 * (a + b) + half * x, half * w


def integrate_gl(fn, a: float, b: float, order: int = 64) -> float:
    """Integrate a vectorized callable over [a, b] with one Gauss-Legendre panel."""
    nodes, weights = gl_nodes(a, b, order)
    return float(np.dot(weights, fn(nodes)))


def simpson_weights(n_intervals: int, h: float) -> np.ndarray:
    """Composite Simpson weights for n_intervals uniform steps of width h.

    Odd interval counts are handled by closing with a 3/8 panel, keeping the
    rule fourth order throughout.  Requires n_intervals >= 4.
    """
    n = n_intervals
    if n < 4:
        raise ValueError("need at least 4 intervals for composite Simpson")
    w = np.zeros(n + 1)
    if n % 2 == 0:
        w[0] = w[-1] = 1.0
        w[1:-1:2] = 4.0
        w[2:-1:2] = 2.0
        w *= h / 3.0
    else:
        head = simpson_weights(n - 3, h)
        w[: n - 2] += head
        w[n - 3 :] += (3.0 * h / 8.0) * np.array([1.0, 3.0, 3.0, 1.0])
    return w


def composite_simpson(values: np.ndarray, h: float) -> float:
    """Composite Simpson integral of uniformly sampled values with spacing h."""
    return float(np.dot(simpson_weights(len(values) - 1, h), values))


def cubic_interp_uniform(values: np.ndarray, t0: float, h: float, tq) -> np.ndarray:
    """Cubic (4-point Lagrange) interpolation of uniform samples.

    values[i] is the sample at t0 + i*h; tq may be a scalar or array of query
    times inside the sampled span.  Near the ends the stencil shifts one-sided,
    preserving O(h^4) accuracy.
    """
    values = np.asarray(values, dtype=float)
    n = len(values)
    if n < 4:
        raise ValueError("need at least 4 samples for cubic interpolation")
    p = (np.asarray(tq, dtype=float) - t0) / h
    if np.any(p < -1e-9) or np.any(p > n - 1 + 1e-9):
        raise ValueError("interpolation query outside the sampled span")
    j = np.clip(np.floor(p).astype(int), 1, n - 3)
    xi = p - j
    vm1 = values[j - 1]
    v0 = values[j]
    v1 = values[j + 1]
    v2 = values[j + 2]
    wm1 = -xi * (xi - 1.0) * (xi - 2.0) / 6.0
    w0 = (xi + 1.0) * (xi - 1.0) * (xi - 2.0) / 2.0
    w1 = -(xi + 1.0) * xi * (xi - 2.0) / 2.0
    w2 = (xi + 1.0) * xi * (xi - 1.0) / 6.0
    return wm1 * vm1 + w0 * v0 + w1 * v1 + w2 * v2


def hermite_interp_uniform(values: np.ndarray, t0: float, h: float, tq) -> np.ndarray:
    """C^1 piecewise-cubic Hermite interpolation of uniform samples.

    Node slopes come from 4th-order centered differences (3rd-order one-sided
    at the two ends), so the interpolant is globally C^1 and O(h^4) accurate.
    """
    values = np.asarray(values, dtype=float)
    n = len(values)
    if n < 4:
        raise ValueError("need at least 4 samples for cubic interpolation")
    d = np.empty(n)
    d[2:-2] = (values[:-4] - 8.0 * values[1:-3] + 8.0 * values[3:-1] - values[4:]) / (12.0 * h)
    d[0] = (-11.0 * values[0] + 18.0 * values[1] - 9.0 * values[2] + 2.0 * values[3]) / (6.0 * h)
    d[1] = (-2.0 * values[0] - 3.0 * values[1] + 6.0 * values[2] - values[3]) / (6.0 * h)
    d[-2] = (values[-4] - 6.0 * values[-3] + 3.0 * values[-2] + 2.0 * values[-1]) / (6.0 * h)
    d[-1] = (-2.0 * values[-4] + 9.0 * values[-3] - 18.0 * values[-2] + 11.0 * values[-1]) / (6.0 * h)
    p = (np.asarray(tq, dtype=float) - t0) / h
    if np.any(p < -1e-9) or np.any(p > n - 1 + 1e-9):
        raise ValueError("interpolation query outside the sampled span")
    j = np.clip(np.floor(p).astype(int), 0, n - 2)
    xi = p - j
    xi2 = xi * xi
    xi3 = xi2 * xi
    h00 = 2.0 * xi3 - 3.0 * xi2 + 1.0
    h10 = xi3 - 2.0 * xi2 + xi
    h01 = -2.0 * xi3 + 3.0 * xi2
    h11 = xi3 - xi2
    return h00 * values[j] + h * h10 * d[j] + h01 * values[j + 1] + h * h11 * d[j + 1]


def bisect(fn, lo: float, hi: float, *, xtol: float = 1e-15, max_iter: int = 200) -> float:
    """Bisection for a sign change of fn on [lo, hi].

    Assumes fn(lo) and fn(hi) have opposite signs (zero endpoints accepted).
    Returns the midpoint once the bracket width drops below xtol (absolute)
    or max_iter halvings have been spent.
    """
    flo = fn(lo)
    fhi = fn(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if math.copysign(1.0, flo) == math.copysign(1.0, fhi):
        raise ValueError("bisection bracket does not straddle a sign change")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if hi - lo <= xtol or mid == lo or mid == hi:
            return mid
        fmid = fn(mid)
        if fmid == 0.0:
            return mid
        if math.copysign(1.0, fmid) == math.copysign(1.0, flo):
            lo, flo = mid, fmid
        else:
            hi = mid
    return 0.5 * (lo + hi)
