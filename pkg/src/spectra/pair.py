import math

from ..errors import FieldShiftUndefined
from ..model.constants import Constants
from ..model.effective import EffectiveParams, effective_params
from ..model.moments import NCMoments
from .result import SpectrumResult, build_spectrum, frequency_from_square


def _pair_field_shift(
    kappa: float,
    k: float,
    eff1: EffectiveParams,
    eff2: EffectiveParams,
) -> float:
    if kappa == 0:
        return 0.0
    b1 = eff1.stiffness + 2.0 * k
    b2 = eff2.stiffness + 2.0 * k
    det = b1 * b2 - 4.0 * k * k
    if det <= 0:
        raise FieldShiftUndefined("the potential form is singular")
    return -0.5 * kappa * kappa * (b1 + b2 + 4.0 * k) / det


def spectrum_two(
    m1: float,
    m2: float,
    omega1: float,
    omega2: float,
    k: float,
    moments: NCMoments,
    constants: Constants,
    kappa: float = 0.0,
) -> SpectrumResult:
    """
    Two coupled oscillators with their own masses, frequencies and
    noncommutativity. `moments` has one entry per oscillator.
    The lower frequency w- is reported as the centre-of-mass family,
    since it is w_eff for equal particles.
    """
    theta1, _eta1 = moments.species(0)
    theta2, _eta2 = moments.species(1)
    theta12 = moments.cross(0, 1)
    eff1 = effective_params(m1, omega1, moments, 0)
    eff2 = effective_params(m2, omega2, moments, 1)

    def diagonal(
        eff: EffectiveParams,
        theta_own: float,
    ) -> float:
        w2 = eff.omega_eff * eff.omega_eff
        return w2 + 2.0 * k / eff.m_eff \
            + k * eff.m_eff * w2 * theta_own / 3.0 \
            + 2.0 * k * k * (theta_own + theta12) / 3.0

    def coupling(
        eff_near: EffectiveParams,
        eff_far: EffectiveParams,
        theta_far: float,
    ) -> float:
        w2 = eff_near.omega_eff * eff_near.omega_eff
        return 2.0 * k / eff_far.m_eff \
            + k * eff_near.m_eff * w2 * theta12 / 3.0 \
            + 2.0 * k * k * (theta_far + theta12) / 3.0

    d1 = diagonal(eff1, theta1)
    d2 = diagonal(eff2, theta2)
    trace = d1 + d2
    discriminant = trace * trace - 4.0 * d1 * d2 \
        + 4.0 * coupling(eff1, eff2, theta2) * coupling(eff2, eff1, theta1)
    root = math.sqrt(max(discriminant, 0.0))

    omega_plus = frequency_from_square(
        (trace + root) / 2.0, trace, "omega_plus"
    )
    omega_minus = frequency_from_square(
        (trace - root) / 2.0, trace, "omega_minus"
    )

    return build_spectrum(
        com=[omega_minus],
        relative=[omega_plus],
        field_shift=_pair_field_shift(kappa, k, eff1, eff2),
        offset=constants.offset,
        hbar=constants.hbar,
    )
