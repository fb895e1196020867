import math

from ..errors import FieldShiftUndefined, InvalidFamilyInput
from ..model.constants import Constants
from ..model.effective import effective_params
from ..model.moments import NCMoments
from .result import SpectrumResult, build_spectrum


def _field_shift(n: int, kappa: float, m_eff: float, omega_eff: float) -> float:
    if kappa == 0:
        return 0.0
    if omega_eff == 0:
        raise FieldShiftUndefined(
            "a free centre of mass in a uniform field is unbounded below"
        )
    return -(n * kappa * kappa) / (2.0 * m_eff * omega_eff * omega_eff)


def spectrum_identical(
    n: int,
    mass: float,
    omega: float,
    k: float,
    kappa: float,
    moments: NCMoments,
    constants: Constants,
) -> SpectrumResult:
    """
    N identical oscillators with all-pairs coupling. The centre of mass
    oscillates at w_eff; the N-1 relative modes share
    sqrt(w_eff^2 + 2kN/m_eff + kN<theta^2> m_eff w_eff^2 / 3
         + 2k^2 <theta^2> N^2 / 3).
    `moments` entry 0 describes the particle species.
    """
    if n < 1:
        raise InvalidFamilyInput('Value for `N` must be positive.')
    theta2, _eta2 = moments.species(0)
    eff = effective_params(mass, omega, moments)
    m_eff = eff.m_eff
    omega_eff = eff.omega_eff

    relative = []
    if n > 1:
        omega_rel2 = omega_eff * omega_eff \
            + 2.0 * k * n / m_eff \
            + k * n * theta2 * m_eff * omega_eff * omega_eff / 3.0 \
            + 2.0 * k * k * theta2 * n * n / 3.0
        relative = [math.sqrt(omega_rel2)] * (n - 1)

    return build_spectrum(
        com=[omega_eff],
        relative=relative,
        field_shift=_field_shift(n, kappa, m_eff, omega_eff),
        offset=constants.offset,
        hbar=constants.hbar,
    )


def spectrum_free_particles(
    n: int,
    mass: float,
    kappa: float,
    moments: NCMoments,
    constants: Constants,
) -> SpectrumResult:
    """
    Free particles: only momentum noncommutativity survives, and every
    mode oscillates at sqrt(<eta^2> / 6m^2). The field shift becomes
    -3 N kappa^2 m / <eta^2>.
    """
    _theta2, eta2 = moments.species(0)
    if kappa != 0 and eta2 == 0:
        raise FieldShiftUndefined(
            "free particles in a field need momentum noncommutativity"
        )
    return spectrum_identical(n, mass, 0.0, 0.0, kappa, moments, constants)


def spectrum_ho_interaction(
    n: int,
    mass: float,
    k: float,
    kappa: float,
    moments: NCMoments,
    constants: Constants,
) -> SpectrumResult:
    """Particles bound only by the pairwise harmonic interaction."""
    if n < 2:
        raise InvalidFamilyInput(
            'Harmonic interaction needs at least two particles.'
        )
    if not k > 0:
        raise InvalidFamilyInput(
            'Harmonic interaction needs a positive coupling `k`.'
        )
    _theta2, eta2 = moments.species(0)
    if kappa != 0 and eta2 == 0:
        raise FieldShiftUndefined(
            "the centre of mass is free without momentum noncommutativity"
        )
    return spectrum_identical(n, mass, 0.0, k, kappa, moments, constants)


def spectrum_commutative(
    n: int,
    mass: float,
    omega: float,
    k: float,
    kappa: float,
    constants: Constants,
) -> SpectrumResult:
    """The ordinary phase space reference spectrum."""
    relative = [math.sqrt(omega * omega + 2.0 * k * n / mass)] * (n - 1)
    return build_spectrum(
        com=[omega],
        relative=relative,
        field_shift=_field_shift(n, kappa, mass, omega),
        offset=constants.offset,
        hbar=constants.hbar,
    )
