from dataclasses import dataclass, field, replace
from enum import Enum
from typing import List, Tuple

from ..errors import ConfigError
from .constants import Constants
from .moments import NCMoments, NCParams, compute_moments


class Topology(Enum):
    """Which closed-form family describes the system."""

    IDENTICAL = "identical-N"
    PAIR = "pair"
    TRIPLE = "triple-1+2"
    FREE = "free"
    HO_INTERACTION = "ho-interaction"
    COORDINATE_NC_TRIPLE = "coordinate-nc-triple"

    @property
    def species_count(self) -> int:
        if self in (Topology.PAIR, Topology.TRIPLE,
                    Topology.COORDINATE_NC_TRIPLE):
            return 2
        return 1

    @property
    def fixed_size(self) -> int | None:
        if self == Topology.PAIR:
            return 2
        if self in (Topology.TRIPLE, Topology.COORDINATE_NC_TRIPLE):
            return 3
        return None


@dataclass(frozen=True)
class Particle:
    mass: float
    omega: float = 0.0
    nc: NCParams = field(default_factory=NCParams)


@dataclass(frozen=True)
class SystemSpec:
    """
    N oscillators with all-pairs harmonic coupling `k` in a uniform field
    `kappa` along the first axis. `particles` holds one entry per particle.
    """

    particles: Tuple[Particle, ...]
    k: float = 0.0
    kappa: float = 0.0
    constants: Constants = field(default_factory=Constants)
    topology: Topology = Topology.IDENTICAL

    def __post_init__(self) -> None:
        if len(self.particles) < 1:
            raise ConfigError('A system needs at least one particle.')
        for i, p in enumerate(self.particles):
            if not p.mass > 0:
                raise ConfigError(
                    f'Value for `mass` of particle {i} must be positive.'
                )
            if not p.omega >= 0:
                raise ConfigError(
                    f'Value for `omega` of particle {i} must be non-negative.'
                )
        if not self.k >= 0:
            raise ConfigError('Value for `k` must be non-negative.')

    @property
    def n(self) -> int:
        return len(self.particles)

    @property
    def masses(self) -> List[float]:
        return [p.mass for p in self.particles]

    @property
    def omegas(self) -> List[float]:
        return [p.omega for p in self.particles]

    def moments(self) -> NCMoments:
        return compute_moments(
            [p.nc for p in self.particles],
            self.constants,
        )

    def species(self) -> List[Particle]:
        """
        The distinct entries the topology is parametrised by:
        particle 0 alone, or particle 0 and particle 1.
        """
        return list(self.particles[:self.topology.species_count])

    def with_particles(self, particles: List[Particle]) -> 'SystemSpec':
        return replace(self, particles=tuple(particles))

    @staticmethod
    def from_species(
        topology: Topology,
        species: List[Particle],
        n: int | None = None,
        k: float = 0.0,
        kappa: float = 0.0,
        constants: Constants | None = None,
    ) -> 'SystemSpec':
        """
        Expand one entry per species into one entry per particle:
        N copies for the single-species families, (a, b) for a pair,
        (a, b, b) for the 1+2 triples.
        """
        if len(species) != topology.species_count:
            raise ConfigError(
                f'Topology `{topology.value}` expects '
                f'{topology.species_count} particle species, '
                f'got {len(species)}.'
            )

        fixed = topology.fixed_size
        if fixed is not None:
            if n is not None and n != fixed:
                raise ConfigError(
                    f'Topology `{topology.value}` has N={fixed}, got N={n}.'
                )
            n = fixed
        elif n is None:
            raise ConfigError(f'Topology `{topology.value}` requires `N`.')
        if n < 1:
            raise ConfigError('Value for `N` must be positive.')

        if topology.species_count == 1:
            particles = [species[0]] * n
        else:
            particles = [species[0]] + [species[1]] * (n - 1)

        return SystemSpec(
            particles=tuple(particles),
            k=k,
            kappa=kappa,
            constants=constants if constants is not None else Constants(),
            topology=topology,
        )
