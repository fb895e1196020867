from dataclasses import dataclass

from ..errors import ConfigError


@dataclass(frozen=True)
class Constants:
    """
    Unit system. Defaults put everything in Planck-like units,
    `hbar = l_P = 1`, with the auxiliary oscillator offset excluded.
    """

    hbar: float = 1.0
    """Reduced Planck constant."""
    l_P: float = 1.0
    """Planck length, fixes the scale of the noncommutativity tensors."""
    omega_osc: float = 0.0
    """
    Frequency of the auxiliary oscillators.
    Every energy carries `3 * hbar * omega_osc`; 0 leaves that offset out.
    """

    def __post_init__(self) -> None:
        if not self.hbar > 0:
            raise ConfigError('Value for `hbar` must be positive.')
        if not self.l_P > 0:
            raise ConfigError('Value for `l_P` must be positive.')
        if not self.omega_osc >= 0:
            raise ConfigError('Value for `omega_osc` must be non-negative.')

    @property
    def offset(self) -> float:
        return 3.0 * self.hbar * self.omega_osc
