from dataclasses import dataclass
import math
from typing import Tuple

from ..errors import FieldShiftUndefined, InvalidFamilyInput
from ..model.constants import Constants
from ..model.effective import EffectiveParams, effective_params
from ..model.moments import NCMoments
from .result import SpectrumResult, build_spectrum, frequency_from_square


@dataclass(frozen=True)
class _TripleTerms:
    """Correction terms of the 1+2 discriminant."""

    a1: float
    a2: float
    a3: float
    a4: float
    a5: float
    a6: float


def _terms(
    k: float,
    eff1: EffectiveParams,
    eff: EffectiveParams,
    theta1: float,
    theta: float,
    cross: float,
) -> _TripleTerms:
    me_w2 = eff.m_eff * eff.omega_eff * eff.omega_eff
    m1_w2 = eff1.m_eff * eff1.omega_eff * eff1.omega_eff
    kk = k * k
    return _TripleTerms(
        a1=(k * me_w2 / 3.0 + 2.0 * kk / 3.0) * theta
        + (2.0 * k * m1_w2 / 3.0 + 8.0 * kk / 3.0) * theta1
        + 8.0 * kk / 3.0 * cross,
        a2=(2.0 * k * me_w2 / 3.0 + 10.0 * kk / 3.0) * theta
        - (2.0 * k * m1_w2 / 3.0 + 8.0 * kk / 3.0) * theta1
        - 2.0 * kk / 3.0 * cross,
        a3=(8.0 * kk / 3.0 + k * me_w2 / 3.0) * theta
        - 2.0 * kk / 3.0 * cross,
        a4=(k * m1_w2 / 3.0 + 4.0 * kk / 3.0) * cross
        + 2.0 * kk / 3.0 * theta,
        a5=(k * me_w2 / 3.0 + 2.0 * kk / 3.0) * cross
        + 4.0 * kk / 3.0 * theta1,
        a6=-(k * me_w2 + 4.0 * kk) * theta
        + (4.0 * k * m1_w2 / 3.0 + 16.0 * kk / 3.0) * theta1
        + 2.0 * kk / 3.0 * cross,
    )


def _squared_frequencies(
    k: float,
    eff1: EffectiveParams,
    eff: EffectiveParams,
    theta1: float,
    theta: float,
    cross: float,
) -> Tuple[float, float, float]:
    """
    Squared frequencies of the symmetric pair (w1, w2) and of the
    antisymmetric motion of particles 2 and 3 (w3).
    Masses inside the discriminant are the effective ones.
    """
    t = _terms(k, eff1, eff, theta1, theta, cross)
    w2 = eff.omega_eff * eff.omega_eff
    w1_2 = eff1.omega_eff * eff1.omega_eff
    inv_m = 1.0 / eff.m_eff
    inv_m1 = 1.0 / eff1.m_eff

    trace = w2 + w1_2 + 2.0 * k * inv_m + 4.0 * k * inv_m1 + t.a1
    split = w2 - w1_2 + 4.0 * k * inv_m - 4.0 * k * inv_m1 + t.a2
    q = 2.0 * k * inv_m + t.a3
    f = 2.0 * w1_2 - 2.0 * w2 - 6.0 * k * inv_m + 8.0 * k * inv_m1
    # q * (8 x y / q) written out so that k = 0 stays finite
    discriminant = split * split + q * (f + t.a6) \
        + 8.0 * (2.0 * k * inv_m + t.a4) * (2.0 * k * inv_m1 + t.a5)
    root = math.sqrt(max(discriminant, 0.0))

    omega1_2 = (trace - root) / 2.0
    omega2_2 = (trace + root) / 2.0
    omega3_2 = (w2 + 6.0 * k * inv_m) * (1.0 + k * eff.m_eff * theta)
    return omega1_2, omega2_2, omega3_2


def _triple_field_shift(
    kappa: float,
    k: float,
    eff1: EffectiveParams,
    eff: EffectiveParams,
) -> float:
    if kappa == 0:
        return 0.0
    b1 = eff1.stiffness + 4.0 * k
    b = eff.stiffness + 4.0 * k
    det = b1 * (b - 2.0 * k) - 8.0 * k * k
    if det <= 0:
        raise FieldShiftUndefined("the potential form is singular")
    return -0.5 * kappa * kappa * (2.0 * b1 + b + 6.0 * k) / det


def spectrum_three(
    m1: float,
    m: float,
    omega1: float,
    omega: float,
    k: float,
    moments: NCMoments,
    constants: Constants,
    kappa: float = 0.0,
) -> SpectrumResult:
    """
    Three coupled oscillators, particle 1 distinct and particles 2 and 3
    identical. `moments` entry 0 is particle 1, entry 1 is particles 2/3.
    With w1 = w = 0 this is the harmonic confinement model of three quarks.
    """
    theta1, _eta1 = moments.species(0)
    theta, _eta = moments.species(1)
    cross = moments.cross(0, 1)
    eff1 = effective_params(m1, omega1, moments, 0)
    eff = effective_params(m, omega, moments, 1)

    omega1_2, omega2_2, omega3_2 = _squared_frequencies(
        k, eff1, eff, theta1, theta, cross
    )
    scale = omega2_2
    return build_spectrum(
        com=[frequency_from_square(omega1_2, scale, "omega_1")],
        relative=[
            frequency_from_square(omega2_2, scale, "omega_2"),
            frequency_from_square(omega3_2, scale, "omega_3"),
        ],
        field_shift=_triple_field_shift(kappa, k, eff1, eff),
        offset=constants.offset,
        hbar=constants.hbar,
    )


def spectrum_three_coordinate_nc(
    m1: float,
    m: float,
    k: float,
    moments: NCMoments,
    constants: Constants,
    kappa: float = 0.0,
) -> SpectrumResult:
    """
    Quark-model triple when only coordinates fail to commute. The centre
    of mass stays free (frequency exactly 0); the relative frequencies
    pick up <theta^2> corrections.
    """
    if moments.has_eta:
        raise InvalidFamilyInput(
            'Coordinate-only noncommutativity requires zero eta moments.'
        )
    theta1, _eta1 = moments.species(0)
    theta, _eta = moments.species(1)
    cross = moments.cross(0, 1)
    eff1 = EffectiveParams(m_eff=m1, omega_eff=0.0)
    eff = EffectiveParams(m_eff=m, omega_eff=0.0)

    _omega1_2, omega2_2, _omega3_2 = _squared_frequencies(
        k, eff1, eff, theta1, theta, cross
    )
    omega3_2 = 6.0 * k / m + 6.0 * k * k * theta
    return build_spectrum(
        com=[0.0],
        relative=[
            frequency_from_square(omega2_2, omega2_2, "omega_2"),
            frequency_from_square(omega3_2, omega3_2, "omega_3"),
        ],
        field_shift=_triple_field_shift(kappa, k, eff1, eff),
        offset=constants.offset,
        hbar=constants.hbar,
    )
