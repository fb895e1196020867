from dataclasses import dataclass
import math
from typing import List

from .system import SystemSpec


@dataclass(frozen=True)
class ConsistencyReport:
    """
    How well a system obeys c_theta(n) m_n = gamma and c_eta(n) / m_n = alpha
    for a single pair of constants shared by all particles.
    """

    gamma: float
    """gamma inferred from particle 0."""
    alpha: float
    """alpha inferred from particle 0."""
    gamma_deviation: float
    alpha_deviation: float
    tolerance: float
    passed: bool

    @property
    def max_deviation(self) -> float:
        return max(self.gamma_deviation, self.alpha_deviation)


def _max_relative_deviation(reference: float, values: List[float]) -> float:
    deviation = 0.0
    for v in values:
        if reference == 0:
            # zero and nonzero constants cannot share one ratio
            if v != 0:
                return math.inf
            continue
        deviation = max(deviation, abs(v - reference) / abs(reference))
    return deviation


def validate_constraints(
    spec: SystemSpec,
    tolerance: float = 1e-9,
) -> ConsistencyReport:
    """
    Advisory check only; the closed forms accept arbitrary per-particle
    constants.
    """
    gammas = [p.nc.c_theta * p.mass for p in spec.particles]
    alphas = [p.nc.c_eta / p.mass for p in spec.particles]
    gamma = gammas[0]
    alpha = alphas[0]

    gamma_deviation = _max_relative_deviation(gamma, gammas)
    alpha_deviation = _max_relative_deviation(alpha, alphas)
    passed = max(gamma_deviation, alpha_deviation) <= tolerance
    return ConsistencyReport(
        gamma=gamma,
        alpha=alpha,
        gamma_deviation=gamma_deviation,
        alpha_deviation=alpha_deviation,
        tolerance=tolerance,
        passed=passed,
    )
