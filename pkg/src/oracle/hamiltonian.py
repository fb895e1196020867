from dataclasses import dataclass

import numpy as np
from scipy import linalg

from ..errors import NonPositiveDefiniteKineticForm
from ..model.moments import NCMoments
from ..model.system import SystemSpec


@dataclass(frozen=True, eq=False)
class QuadraticHamiltonian:
    """
    One Cartesian block of the averaged Hamiltonian,
    H = 1/2 p^T A p + 1/2 x^T B x + f^T x (+ offset).
    The three axes carry identical blocks; only the first one sees `f`.
    """

    A: np.ndarray
    B: np.ndarray
    f: np.ndarray
    offset: float = 0.0
    hbar: float = 1.0

    @property
    def n(self) -> int:
        return self.A.shape[0]


def build_hamiltonian(
    spec: SystemSpec,
    moments: NCMoments | None = None,
) -> QuadraticHamiltonian:
    """
    Assemble the kinetic and potential forms from
    sum_n p^2 (1/2m_n + <theta_n^2> m_n w_n^2 / 12)
    + (k/12) sum_{m!=n} [<theta_n^2> p_n^2 + <theta_m^2> p_m^2
                         - 2 <theta_n theta_m> p_n p_m]
    and
    sum_n x^2 (m_n w_n^2 / 2 + <eta_n^2> / 12 m_n)
    + (k/2) sum_{m!=n} (x_n - x_m)^2.
    """
    if moments is None:
        moments = spec.moments()
    n = spec.n
    assert len(moments) == n, "Expect one moment entry per particle."

    masses = np.array(spec.masses, dtype=float)
    omegas = np.array(spec.omegas, dtype=float)
    k = spec.k
    theta2 = moments.theta2
    eta2 = moments.eta2

    A = -(k / 3.0) * moments.theta_cross
    np.fill_diagonal(
        A,
        1.0 / masses
        + theta2 * masses * omegas ** 2 / 6.0
        + (k / 3.0) * (n - 1) * theta2,
    )

    B = np.full((n, n), -2.0 * k)
    np.fill_diagonal(
        B,
        masses * omegas ** 2
        + eta2 / (6.0 * masses)
        + 2.0 * k * (n - 1),
    )

    kinetic = linalg.eigvalsh(A)
    if kinetic[0] <= 0:
        raise NonPositiveDefiniteKineticForm(
            f"smallest eigenvalue {kinetic[0]!r}"
        )

    return QuadraticHamiltonian(
        A=A,
        B=B,
        f=np.full(n, float(spec.kappa)),
        offset=spec.constants.offset,
        hbar=spec.constants.hbar,
    )
