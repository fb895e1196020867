from dataclasses import dataclass
import math
from typing import List, Sequence, Tuple

import numpy as np

from ..errors import ConfigError
from .constants import Constants


@dataclass(frozen=True)
class NCParams:
    """
    Dimensionless noncommutativity constants of one particle species.
    Both zero means the particle lives in ordinary phase space.
    """

    c_theta: float = 0.0
    c_eta: float = 0.0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.c_theta) and math.isfinite(self.c_eta)):
            raise ConfigError('Noncommutativity constants must be finite.')

    @property
    def is_commutative(self) -> bool:
        return self.c_theta == 0 and self.c_eta == 0


@dataclass(frozen=True, eq=False)
class NCMoments:
    """
    Ground-state moments of the noncommutativity tensors, one entry per
    particle. `theta_cross` is the full matrix of cross moments; its
    diagonal equals `theta2`.
    """

    theta2: np.ndarray
    eta2: np.ndarray
    theta_cross: np.ndarray

    def __post_init__(self) -> None:
        n = len(self.theta2)
        assert len(self.eta2) == n, "Expect one eta moment per particle."
        assert self.theta_cross.shape == (n, n), \
            "Expect square cross-moment matrix."
        if np.any(self.theta2 < 0) or np.any(self.eta2 < 0):
            raise ConfigError('Moments must be non-negative.')

    def __len__(self) -> int:
        return len(self.theta2)

    def species(self, n: int) -> Tuple[float, float]:
        return float(self.theta2[n]), float(self.eta2[n])

    def cross(self, n: int, m: int) -> float:
        return float(self.theta_cross[n, m])

    @property
    def is_commutative(self) -> bool:
        return not (np.any(self.theta2) or np.any(self.eta2))

    @property
    def has_eta(self) -> bool:
        return bool(np.any(self.eta2))

    def scaled(self, lam: float) -> 'NCMoments':
        """Scale every moment, theta and eta alike, by `lam`."""
        return NCMoments(
            theta2=self.theta2 * lam,
            eta2=self.eta2 * lam,
            theta_cross=self.theta_cross * lam,
        )

    def theta_only(self) -> 'NCMoments':
        return NCMoments(
            theta2=self.theta2.copy(),
            eta2=np.zeros_like(self.eta2),
            theta_cross=self.theta_cross.copy(),
        )

    def zeroed(self) -> 'NCMoments':
        return self.scaled(0.0)

    def take(self, indices: Sequence[int]) -> 'NCMoments':
        idx = np.asarray(indices, dtype=int)
        return NCMoments(
            theta2=self.theta2[idx],
            eta2=self.eta2[idx],
            theta_cross=self.theta_cross[np.ix_(idx, idx)],
        )


def compute_moments(
    nc_list: List[NCParams],
    constants: Constants,
) -> NCMoments:
    """
    Average the noncommutativity tensors over the auxiliary oscillators'
    ground states:
    <theta^2> = 3 c_theta^2 l_P^4 / (2 hbar^2),
    <eta^2> = 3 hbar^2 c_eta^2 / (2 l_P^4),
    <theta(n) theta(m)> = 3 c_theta(n) c_theta(m) l_P^4 / (2 hbar^2).
    All particles share the same auxiliary oscillator, so the cross
    moments have rank one.
    """
    hbar = constants.hbar
    l4 = constants.l_P ** 4
    theta_scale = 3.0 * l4 / (2.0 * hbar * hbar)
    eta_scale = 3.0 * hbar * hbar / (2.0 * l4)

    c_theta = np.array([nc.c_theta for nc in nc_list], dtype=float)
    theta_cross = np.outer(c_theta, c_theta) * theta_scale

    eta2 = np.array([nc.c_eta * nc.c_eta * eta_scale for nc in nc_list])
    return NCMoments(
        theta2=np.diag(theta_cross).copy(),
        eta2=eta2,
        theta_cross=theta_cross,
    )


def nc_from_moments(
    theta2: float,
    eta2: float,
    constants: Constants,
) -> NCParams:
    """Constants that reproduce directly supplied moments."""
    if theta2 < 0 or eta2 < 0:
        raise ConfigError('Moments must be non-negative.')
    l2 = constants.l_P ** 2
    c_theta = math.sqrt(2.0 * theta2 / 3.0) * constants.hbar / l2
    c_eta = math.sqrt(2.0 * eta2 / 3.0) * l2 / constants.hbar
    return NCParams(c_theta=c_theta, c_eta=c_eta)


def nc_from_constraints(mass: float, gamma: float, alpha: float) -> NCParams:
    """
    Constants of a particle of `mass` obeying
    c_theta * m = gamma and c_eta / m = alpha.
    """
    if not mass > 0:
        raise ConfigError('Value for `mass` must be positive.')
    return NCParams(c_theta=gamma / mass, c_eta=alpha * mass)

