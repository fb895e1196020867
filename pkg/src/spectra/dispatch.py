from ..model.moments import NCMoments
from ..model.system import SystemSpec, Topology
from .result import SpectrumResult
from . import identical, pair, triple


def closed_form_spectrum(
    spec: SystemSpec,
    moments: NCMoments | None = None,
) -> SpectrumResult:
    """
    Evaluate the closed-form family named by `spec.topology`.
    `moments` defaults to the ones implied by the particles' constants and
    always has one entry per particle.
    """
    if moments is None:
        moments = spec.moments()
    assert len(moments) == spec.n, "Expect one moment entry per particle."

    topology = spec.topology
    first = spec.particles[0]
    constants = spec.constants

    # functions are looked up on their modules at call time
    if topology == Topology.IDENTICAL:
        return identical.spectrum_identical(
            spec.n, first.mass, first.omega, spec.k, spec.kappa,
            moments, constants,
        )
    if topology == Topology.FREE:
        return identical.spectrum_free_particles(
            spec.n, first.mass, spec.kappa, moments, constants,
        )
    if topology == Topology.HO_INTERACTION:
        return identical.spectrum_ho_interaction(
            spec.n, first.mass, spec.k, spec.kappa, moments, constants,
        )

    second = spec.particles[1]
    species_moments = moments.take([0, 1])
    if topology == Topology.PAIR:
        return pair.spectrum_two(
            first.mass, second.mass, first.omega, second.omega, spec.k,
            species_moments, constants, kappa=spec.kappa,
        )
    if topology == Topology.TRIPLE:
        return triple.spectrum_three(
            first.mass, second.mass, first.omega, second.omega, spec.k,
            species_moments, constants, kappa=spec.kappa,
        )
    if topology == Topology.COORDINATE_NC_TRIPLE:
        return triple.spectrum_three_coordinate_nc(
            first.mass, second.mass, spec.k,
            species_moments, constants, kappa=spec.kappa,
        )
    raise ValueError(f'Unknown topology: {topology}')
