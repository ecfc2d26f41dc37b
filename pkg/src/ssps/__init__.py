"""Symmetric period-2 solutions of distributed delay differential equations.

The library constructs closed-form period-2 solutions of
x'(t) = -int_0^1 f(x(t-s)) ds for the feedback functions f(x) = r sin x and
f(x) = r (e^x - 1), and verifies them independently through elliptic-function
identities, Hamiltonian-orbit integration, quadrature residuals and a
method-of-steps delay simulator.
"""

from .elliptic import (
    CompletePair,
    EllipticTriple,
    JacobiLadder,
    Modulus,
    complete_E,
    complete_K,
    complete_pair,
    jacobi_ladder,
    jacobi_snk,
)
from .errors import (
    DomainError,
    MonotonicityWarning,
    NoSolutionError,
    OddnessError,
    SspsError,
    StabilityError,
)
from .hamiltonian import (
    Nonlinearity,
    Orbit,
    PhasePoint,
    SymmetryReport,
    check_orbit_symmetries,
    exp_m1_r,
    hamiltonian_H,
    integrate_orbit,
    linear_unit,
    period_by_quadrature,
    potential_F,
    sine_r,
    sinh_gamma,
)
from .solutions import (
    THRESHOLD,
    ExpSSPS,
    PendulumOrbit,
    SineSSPS,
    WYPair,
    exp_ssps,
    pendulum_orbit,
    sine_ssps,
    solve_exp_modulus,
    solve_sine_modulus,
    wy_solution,
)
from .dde import (
    HistorySegment,
    RescaledSolution,
    ResidualReport,
    SimulationResult,
    SolutionWithDerivative,
    VerifyTolerances,
    VFunction,
    build_v_function,
    delay_integral,
    integrated_form_check,
    rescaled_solution,
    residual,
    simulate_method_of_steps,
    symmetry_axis,
    verify_ssps,
)

__version__ = "0.1.0"

__all__ = [
    "CompletePair",
    "DomainError",
    "EllipticTriple",
    "ExpSSPS",
    "HistorySegment",
    "JacobiLadder",
    "Modulus",
    "MonotonicityWarning",
    "NoSolutionError",
    "Nonlinearity",
    "OddnessError",
    "Orbit",
    "PendulumOrbit",
    "PhasePoint",
    "RescaledSolution",
    "ResidualReport",
    "SimulationResult",
    "SineSSPS",
    "SolutionWithDerivative",
    "SspsError",
    "StabilityError",
    "SymmetryReport",
    "THRESHOLD",
    "VFunction",
    "VerifyTolerances",
    "WYPair",
    "build_v_function",
    "check_orbit_symmetries",
    "complete_E",
    "complete_K",
    "complete_pair",
    "delay_integral",
    "exp_m1_r",
    "exp_ssps",
    "hamiltonian_H",
    "integrate_orbit",
    "integrated_form_check",
    "jacobi_ladder",
    "jacobi_snk",
    "linear_unit",
    "pendulum_orbit",
    "period_by_quadrature",
    "potential_F",
    "rescaled_solution",
    "residual",
    "simulate_method_of_steps",
    "sine_r",
    "sine_ssps",
    "sinh_gamma",
    "solve_exp_modulus",
    "solve_sine_modulus",
    "symmetry_axis",
    "verify_ssps",
    "wy_solution",
]
