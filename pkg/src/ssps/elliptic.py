"""Complete elliptic integrals and Jacobi elliptic functions.

Self-contained double-precision implementations: K and E come from the
arithmetic-geometric mean (AGM) iteration, sn/cn/dn from a descending Landen
ladder finished in closed circular form once the residual modulus is
negligible.  The modulus convention is k throughout, never the parameter
m = k**2.

A :class:`Modulus` carries both k and its complement k' = sqrt(1 - k**2).
All kernels consume k' where it matters, so moduli exponentially close to 1
(built via :meth:`Modulus.from_kprime`) stay fully accurate even when k
itself rounds to 1.0 in double precision.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

# Moduli within 1e-12 of 1 are rejected on the plain-k path: K diverges there
# and a silent loss of (1 - k) is worse than an error.
_K_NEAR_ONE = 1.0 - 1e-12
_AGM_RTOL = 1e-16
_AGM_MAX_ITER = 40
# Descend the Landen ladder until the residual modulus is below this; the
# circular closure then carries an O(1e-16) relative error.
_LANDEN_FLOOR = 1e-8


@dataclass(frozen=True)
class Modulus:
    """Elliptic modulus k together with its complement k' = sqrt(1 - k^2)."""

    k: float
    kprime: float

    @classmethod
    def from_k(cls, k: float) -> "Modulus":
        k = float(k)
        if not math.isfinite(k) or k < 0.0:
            raise DomainError(f"modulus k={k!r} must be finite and >= 0")
        if k > _K_NEAR_ONE:
            raise DomainError(f"modulus k={k!r} within 1e-12 of 1 is rejected (K diverges)")
        return cls(k, _complement(k))

    @classmethod
    def from_kprime(cls, kprime: float) -> "Modulus":
        kprime = float(kprime)
        if not math.isfinite(kprime) or not 0.0 < kprime <= 1.0:
            raise DomainError(f"complementary modulus {kprime!r} outside (0, 1]")
        return cls(_complement(kprime), kprime)


def _complement(v: float) -> float:
    """sqrt(1 - v^2), rounded consistently at both ends of [0, 1].

    The factored form (1-v)(1+v) is exact as v -> 1 but can misround by an
    ulp for tiny v (where the direct form is itself exact), and vice versa.
    """
    if v < 1e-4:
        return math.sqrt(1.0 - v * v)
    return math.sqrt((1.0 - v) * (1.0 + v))


def as_modulus(k) -> Modulus:
    """Coerce a float (or pass through a Modulus) to a validated Modulus."""
    return k if isinstance(k, Modulus) else Modulus.from_k(k)


@dataclass(frozen=True)
class CompletePair:
    """Simultaneous complete integrals K(k) and E(k) at one modulus."""

    K: float
    E: float
    k: Modulus


@dataclass(frozen=True)
class EllipticTriple:
    """Simultaneous Jacobi function values (sn, cn, dn) at argument u, modulus k.

    Fields hold floats for scalar u and ndarrays for array u.
    """

    sn: float
    cn: float
    dn: float
    u: float
    k: Modulus


def _agm_pair(k: float, kprime: float) -> tuple[float, float]:
    """One AGM sweep computing (K, E) from the complementary modulus.

    Uses AGM(1, k') for K and the companion sum E = K * (1 - sum 2^(n-1) c_n^2)
    with c_0 = k.  Quadratic convergence makes the 40-iteration cap generous.
    """
    a, b = 1.0, kprime
    csum = 0.5 * k * k
    weight = 0.5
    for _ in range(_AGM_MAX_ITER):
        if abs(a - b) <= _AGM_RTOL * a:
            break
        c = 0.5 * (a - b)
        weight *= 2.0
        csum += weight * c * c
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    agm = 0.5 * (a + b)
    big_k = math.pi / (2.0 * agm)
    return big_k, big_k * (1.0 - csum)


def complete_pair(k) -> CompletePair:
    """K(k) and E(k) in a single AGM pass."""
    m = as_modulus(k)
    big_k, big_e = _agm_pair(m.k, m.kprime)
    return CompletePair(big_k, big_e, m)


def complete_K(k) -> float:
    """Complete elliptic integral of the first kind, modulus convention.

    Accepts a float in [0, 1 - 1e-12] or a Modulus (which may carry a k'
    arbitrarily close to 0).
    """
    m = as_modulus(k)
    return _agm_pair(m.k, m.kprime)[0]


def complete_E(k) -> float:
    """Complete elliptic integral of the second kind, modulus convention.

    The degenerate endpoint k = 1 (E = 1 exactly) is accepted as a float;
    moduli strictly inside the 1e-12 guard band around 1 are rejected like
    they are for K.
    """
    if isinstance(k, float | int) and float(k) == 1.0:
        return 1.0
    m = as_modulus(k)
    return _agm_pair(m.k, m.kprime)[1]


class JacobiLadder:
    """Reusable sn/cn/dn evaluator at a fixed modulus.

    Builds the descending Landen modulus ladder once; each call reduces the
    argument modulo 4K, evaluates circular functions at the bottom of the
    ladder and ascends back.  Vectorized over the argument.
    """

    def __init__(self, k):
        m = as_modulus(k)
        ladder = []
        kk, kp = m.k, m.kprime
        while kk > _LANDEN_FLOOR:
            kk = (1.0 - kp) / (1.0 + kp)
            kp = 2.0 * math.sqrt(kp) / (1.0 + kp)
            ladder.append(kk)
            if len(ladder) > 60:
                raise DomainError(f"Landen ladder failed to converge for k'={m.kprime!r}")
        self.modulus = m
        self._ladder = ladder
        scale = 1.0
        for ki in ladder:
            scale *= 1.0 + ki
        self._scale = scale
        self.quarter_period = _agm_pair(m.k, m.kprime)[0]

    def __call__(self, u):
        """Return (sn, cn, dn) at argument u (scalar or ndarray)."""
        u_arr = np.asarray(u, dtype=float)
        four_k = 4.0 * self.quarter_period
        phi = np.mod(u_arr, four_k) / self._scale
        s = np.sin(phi)
        c = np.cos(phi)
        d = np.ones_like(s)
        for k1 in reversed(self._ladder):
            s2 = s * s
            denom = 1.0 + k1 * s2
            s, c, d = (1.0 + k1) * s / denom, c * d / denom, (1.0 - k1 * s2) / denom
        if u_arr.ndim == 0:
            return float(s), float(c), float(d)
        return s, c, d


@functools.lru_cache(maxsize=128)
def _cached_ladder(m: Modulus) -> JacobiLadder:
    return JacobiLadder(m)


def jacobi_ladder(k) -> JacobiLadder:
    """Shared (cached) ladder for a modulus; cheap to request repeatedly."""
    return _cached_ladder(as_modulus(k))


def jacobi_snk(u, k) -> EllipticTriple:
    """Jacobi elliptic functions sn, cn, dn at argument u and modulus k.

    u may be any finite real (reduced modulo 4K internally) or an ndarray.
    """
    m = as_modulus(k)
    u_arr = np.asarray(u, dtype=float)
    if not np.all(np.isfinite(u_arr)):
        raise DomainError("argument u must be finite")
    sn, cn, dn = _cached_ladder(m)(u)
    return EllipticTriple(sn, cn, dn, u, m)
