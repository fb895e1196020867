from dataclasses import dataclass, replace
from enum import Enum
import math
from typing import Callable, List

from ..errors import DomainError
from ..model.constants import Constants
from ..model.effective import effective_params
from ..model.moments import NCMoments, compute_moments
from ..model.system import Particle, SystemSpec
from ..oracle.scaling import max_relative_deviation, relative_deviation
from ..spectra import identical, pair, triple
from ..spectra.dispatch import closed_form_spectrum
from ..spectra.result import SpectrumResult

FIELD_STRENGTHS = [0.0, 0.5, 2.0]


class CheckStatus(Enum):
    PASSED = "passed"
    FAILED = "failed"
    REJECTED = "rejected"
    """The family refused the input; nothing to compare."""


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    deviation: float | None
    status: CheckStatus
    detail: str = ""


@dataclass(frozen=True)
class LimitsReport:
    checks: List[IdentityCheck]
    tolerance: float

    @property
    def passed(self) -> bool:
        return all(c.status != CheckStatus.FAILED for c in self.checks)


@dataclass(frozen=True)
class _Setup:
    """Parameters every identity check draws from."""

    first: Particle
    second: Particle
    n: int
    k: float
    kappa: float
    constants: Constants
    keep_eta: bool

    def moments(self, particles: List[Particle]) -> NCMoments:
        return compute_moments([p.nc for p in particles], self.constants)

    def species_moments(self) -> NCMoments:
        return self.moments([self.first])


def _spectrum_deviation(a: SpectrumResult, b: SpectrumResult) -> float:
    return max(
        max_relative_deviation(a.sorted_frequencies(), b.sorted_frequencies()),
        relative_deviation(a.field_shift, b.field_shift),
    )


def _commutative_collapse(s: _Setup) -> float:
    p = s.first
    closed = identical.spectrum_identical(
        s.n, p.mass, p.omega, s.k, s.kappa,
        s.species_moments().zeroed(), s.constants,
    )
    reference = identical.spectrum_commutative(
        s.n, p.mass, p.omega, s.k, s.kappa, s.constants,
    )
    eff = effective_params(p.mass, p.omega, s.species_moments().zeroed())
    return max(
        _spectrum_deviation(closed, reference),
        relative_deviation(eff.m_eff, p.mass),
        relative_deviation(eff.omega_eff, p.omega),
    )


def _pair_equal_reduction(s: _Setup) -> float:
    p = s.first
    reduced = pair.spectrum_two(
        p.mass, p.mass, p.omega, p.omega, s.k,
        s.moments([p, p]), s.constants, kappa=s.kappa,
    )
    reference = identical.spectrum_identical(
        2, p.mass, p.omega, s.k, s.kappa, s.species_moments(), s.constants,
    )
    return _spectrum_deviation(reduced, reference)


def _triple_equal_reduction(s: _Setup) -> float:
    p = s.first
    reduced = triple.spectrum_three(
        p.mass, p.mass, p.omega, p.omega, s.k,
        s.moments([p, p]), s.constants, kappa=s.kappa,
    )
    reference = identical.spectrum_identical(
        3, p.mass, p.omega, s.k, s.kappa, s.species_moments(), s.constants,
    )
    return _spectrum_deviation(reduced, reference)


def _pair_decoupled(s: _Setup) -> float:
    a, b = s.first, s.second
    moments = s.moments([a, b])
    decoupled = pair.spectrum_two(
        a.mass, b.mass, a.omega, b.omega, 0.0, moments, s.constants,
    )
    single = [
        effective_params(p.mass, p.omega, moments, i).omega_eff
        for i, p in enumerate((a, b))
    ]
    return max_relative_deviation(decoupled.sorted_frequencies(), single)


def _ho_interaction(s: _Setup) -> float:
    """
    Without a trap the relative block factorises into kinetic and
    potential parts, (1/m + kN<theta^2>/3)(<eta^2>/6m + 2kN). The theta-eta
    cross term kN<theta^2><eta^2>/18m is part of it.
    """
    p = s.first
    theta2, eta2 = s.species_moments().species(0)
    closed = identical.spectrum_ho_interaction(
        s.n, p.mass, s.k, 0.0, s.species_moments(), s.constants,
    )
    com = math.sqrt(eta2 / (6.0 * p.mass * p.mass))
    rel = math.sqrt(
        (1.0 / p.mass + s.k * s.n * theta2 / 3.0)
        * (eta2 / (6.0 * p.mass) + 2.0 * s.k * s.n)
    )
    return max_relative_deviation(
        closed.sorted_frequencies(), [com] + [rel] * (s.n - 1),
    )


def _free_particles(s: _Setup) -> float:
    p = s.first
    _theta2, eta2 = s.species_moments().species(0)
    closed = identical.spectrum_free_particles(
        s.n, p.mass, s.kappa, s.species_moments(), s.constants,
    )
    expected = math.sqrt(eta2 / (6.0 * p.mass * p.mass))
    deviation = max_relative_deviation(
        closed.sorted_frequencies(), [expected] * s.n,
    )
    if s.kappa != 0:
        shift = -3.0 * s.n * s.kappa * s.kappa * p.mass / eta2
        deviation = max(
            deviation, relative_deviation(closed.field_shift, shift),
        )
    return deviation


def _coordinate_only(s: _Setup) -> float:
    """
    With coordinate noncommutativity only, the centre of mass is free and
    the symmetric relative frequency squares to the trace of the reduced
    problem.
    """
    a, b = s.first, s.second
    moments = s.moments([a, b])
    if not s.keep_eta:
        moments = moments.theta_only()
    closed = triple.spectrum_three_coordinate_nc(
        a.mass, b.mass, s.k, moments, s.constants,
    )
    theta1, _ = moments.species(0)
    theta, _ = moments.species(1)
    cross = moments.cross(0, 1)
    k = s.k
    trace = 2.0 * k / b.mass + 4.0 * k / a.mass \
        + 2.0 * k * k * theta / 3.0 \
        + 8.0 * k * k * theta1 / 3.0 \
        + 8.0 * k * k * cross / 3.0
    antisymmetric = (6.0 * k / b.mass) * (1.0 + k * b.mass * theta)

    com = closed.com_frequency()
    assert com is not None, "Expect a centre-of-mass family."
    frequencies = closed.sorted_frequencies()
    expected = sorted([0.0, math.sqrt(trace), math.sqrt(antisymmetric)])
    return max(abs(com), max_relative_deviation(frequencies, expected))


def _field_decoupling(spec: SystemSpec) -> float:
    reference = closed_form_spectrum(spec).sorted_frequencies()
    deviation = 0.0
    for kappa in FIELD_STRENGTHS + [spec.kappa]:
        frequencies = closed_form_spectrum(
            replace(spec, kappa=kappa)
        ).sorted_frequencies()
        if frequencies != reference:
            deviation = max(
                deviation, max_relative_deviation(frequencies, reference),
            )
    return deviation


def _energy_offset(spec: SystemSpec) -> float:
    with_offset = closed_form_spectrum(spec)
    bare = closed_form_spectrum(
        replace(spec, constants=replace(spec.constants, omega_osc=0.0))
    )
    c = spec.constants
    return max(
        max_relative_deviation(
            with_offset.sorted_frequencies(), bare.sorted_frequencies(),
        ),
        relative_deviation(
            with_offset.ground_energy - bare.ground_energy,
            3.0 * c.hbar * c.omega_osc,
        ),
    )


def _run_check(
    name: str,
    check: Callable[[], float],
    tolerance: float,
) -> IdentityCheck:
    try:
        deviation = check()
    except DomainError as e:
        return IdentityCheck(
            name=name,
            deviation=None,
            status=CheckStatus.REJECTED,
            detail=str(e),
        )
    status = CheckStatus.PASSED if deviation <= tolerance \
        else CheckStatus.FAILED
    return IdentityCheck(name=name, deviation=deviation, status=status)


def run_limits(
    spec: SystemSpec,
    tolerance: float = 1e-12,
    coordinate_keep_eta: bool = False,
) -> LimitsReport:
    """
    Every reduction identity between the families, evaluated on the
    configured species. Checks whose family rejects the input are
    reported as rejected and do not fail the run.
    """
    species = spec.species()
    setup = _Setup(
        first=species[0],
        second=species[1] if len(species) > 1 else species[0],
        n=spec.n,
        k=spec.k,
        kappa=spec.kappa,
        constants=spec.constants,
        keep_eta=coordinate_keep_eta,
    )
    checks = [
        ("commutative-collapse", lambda: _commutative_collapse(setup)),
        ("pair-equal-reduction", lambda: _pair_equal_reduction(setup)),
        ("triple-equal-reduction", lambda: _triple_equal_reduction(setup)),
        ("pair-decoupled", lambda: _pair_decoupled(setup)),
        ("ho-interaction", lambda: _ho_interaction(setup)),
        ("free-particles", lambda: _free_particles(setup)),
        ("coordinate-only-triple", lambda: _coordinate_only(setup)),
        ("field-decoupling", lambda: _field_decoupling(spec)),
        ("energy-offset", lambda: _energy_offset(spec)),
    ]
    return LimitsReport(
        checks=[_run_check(name, fn, tolerance) for name, fn in checks],
        tolerance=tolerance,
    )
