from dataclasses import dataclass
import math

from .moments import NCMoments


@dataclass(frozen=True)
class EffectiveParams:
    m_eff: float
    omega_eff: float

    @property
    def stiffness(self) -> float:
        """m_eff * omega_eff^2, the diagonal of the potential form."""
        return self.m_eff * self.omega_eff * self.omega_eff


def effective_params(
    mass: float,
    omega: float,
    moments: NCMoments,
    index: int = 0,
) -> EffectiveParams:
    """
    Absorb the averaged noncommutative corrections of a single oscillator
    into a renormalised mass and frequency:
    m_eff = m / (1 + m^2 w^2 <theta^2> / 6),
    w_eff = sqrt(w^2 + <eta^2> / 6m^2) * sqrt(1 + m^2 w^2 <theta^2> / 6).
    `index` picks the particle's entry in `moments`.
    """
    assert mass > 0, "Mass must be positive."
    assert omega >= 0, "Frequency must be non-negative."
    theta2, eta2 = moments.species(index)

    factor = 1.0 + mass * mass * omega * omega * theta2 / 6.0
    m_eff = mass / factor
    omega_eff = math.sqrt(omega * omega + eta2 / (6.0 * mass * mass)) \
        * math.sqrt(factor)
    return EffectiveParams(m_eff=m_eff, omega_eff=omega_eff)
