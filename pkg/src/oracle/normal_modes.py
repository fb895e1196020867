from dataclasses import dataclass
from typing import List

import numpy as np
from scipy import linalg

from ..errors import (
    FieldShiftUndefined,
    NonPositiveDefiniteKineticForm,
    UnstableConfiguration,
)
from ..spectra.result import NOISE_TOLERANCE
from .hamiltonian import QuadraticHamiltonian

# Relative tolerance for "all particles are the same".
IDENTICAL_TOLERANCE = 1.0e-12


@dataclass(frozen=True)
class GroundState:
    ground: float
    shift: float


@dataclass(frozen=True)
class COMSplit:
    com_frequency: float
    relative_frequencies: List[float]


def _clamped_roots(squares: np.ndarray) -> np.ndarray:
    scale = float(np.max(np.abs(squares))) if squares.size else 0.0
    threshold = NOISE_TOLERANCE * scale
    if squares.size and squares.min() < -threshold:
        raise UnstableConfiguration(
            f"normal mode with omega^2 = {squares.min()!r}"
        )
    squares = np.where(np.abs(squares) <= threshold, 0.0, squares)
    return np.sqrt(squares)


def _principal_sqrt(A: np.ndarray) -> np.ndarray:
    w, V = linalg.eigh(A)
    if w[0] <= 0:
        raise NonPositiveDefiniteKineticForm(
            f"smallest eigenvalue {w[0]!r}"
        )
    return (V * np.sqrt(w)) @ V.T


def normal_modes(h: QuadraticHamiltonian) -> np.ndarray:
    """
    Normal-mode frequencies, ascending. With canonical brackets the
    squared frequencies are the eigenvalues of A B; they are taken from
    the symmetric similar matrix L B L, L = A^(1/2), so they come out real.
    """
    L = _principal_sqrt(h.A)
    M = L @ h.B @ L
    M = 0.5 * (M + M.T)
    return _clamped_roots(linalg.eigvalsh(M))


def field_shift(h: QuadraticHamiltonian) -> float:
    """Completing the square: -1/2 f^T B^-1 f."""
    if not np.any(h.f):
        return 0.0
    stiffness = linalg.eigvalsh(h.B)
    if stiffness[0] <= NOISE_TOLERANCE * abs(stiffness[-1]):
        raise FieldShiftUndefined("the potential form is singular")
    displacement = linalg.solve(h.B, h.f, assume_a='pos')
    return -0.5 * float(h.f @ displacement)


def ground_energy_and_shift(h: QuadraticHamiltonian) -> GroundState:
    frequencies = normal_modes(h)
    shift = field_shift(h)
    zero_point = float(np.sum(1.5 * h.hbar * frequencies))
    return GroundState(ground=zero_point + shift + h.offset, shift=shift)


def _all_close(values: np.ndarray) -> bool:
    if values.size == 0:
        return True
    reference = values.flat[0]
    scale = max(float(np.max(np.abs(values))), np.finfo(float).tiny)
    return bool(np.all(np.abs(values - reference) <= IDENTICAL_TOLERANCE * scale))


def _is_identical(M: np.ndarray) -> bool:
    off = M[~np.eye(M.shape[0], dtype=bool)]
    return _all_close(np.diag(M)) and _all_close(off)


def com_relative_split(h: QuadraticHamiltonian) -> COMSplit | None:
    """
    For identical particles the uniform displacement is an exact normal
    mode: the centre of mass. Returns None when the particles differ and
    no exact split exists.
    """
    if not (_is_identical(h.A) and _is_identical(h.B)):
        return None

    n = h.n
    # Rayleigh quotients of the uniform vector
    com2 = float(h.A.sum() / n) * float(h.B.sum() / n)
    relative: List[float] = []
    if n > 1:
        rel2 = (h.A[0, 0] - h.A[0, 1]) * (h.B[0, 0] - h.B[0, 1])
        relative = [float(r) for r in _clamped_roots(np.full(n - 1, rel2))]
    com = float(_clamped_roots(np.array([com2]))[0])
    return COMSplit(com_frequency=com, relative_frequencies=relative)
