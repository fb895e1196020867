from dataclasses import dataclass
import math
from typing import Callable, List, Sequence

import numpy as np

from ..errors import ConfigError
from ..model.moments import NCMoments
from ..model.system import SystemSpec
from ..spectra.dispatch import closed_form_spectrum
from ..spectra.result import SpectrumResult
from .hamiltonian import build_hamiltonian
from .normal_modes import normal_modes

# Below this the two sides agree to rounding and carry no slope.
DEVIATION_FLOOR = 1.0e-14
# Frequencies smaller than this are compared absolutely.
ABSOLUTE_BELOW = 1.0e-12

ClosedForm = Callable[[SystemSpec, NCMoments], SpectrumResult]


@dataclass(frozen=True)
class ScalingPoint:
    lam: float
    max_relative_deviation: float


@dataclass(frozen=True)
class ScalingReport:
    points: List[ScalingPoint]
    slope: float | None
    """Least-squares log-log slope of deviation against lambda."""

    def pairwise_slopes(self) -> List[float | None]:
        slopes: List[float | None] = []
        for prev, cur in zip(self.points, self.points[1:]):
            if min(prev.max_relative_deviation,
                   cur.max_relative_deviation) <= DEVIATION_FLOOR:
                slopes.append(None)
                continue
            slopes.append(
                math.log(prev.max_relative_deviation
                         / cur.max_relative_deviation)
                / math.log(prev.lam / cur.lam)
            )
        return slopes


def relative_deviation(a: float, b: float) -> float:
    scale = max(abs(a), abs(b))
    if scale < ABSOLUTE_BELOW:
        return abs(a - b)
    return abs(a - b) / scale


def max_relative_deviation(
    closed: Sequence[float],
    oracle: Sequence[float],
) -> float:
    assert len(closed) == len(oracle), \
        "Expect the same number of frequencies on both sides."
    deviation = 0.0
    for a, b in zip(sorted(closed), sorted(oracle)):
        deviation = max(deviation, relative_deviation(a, b))
    return deviation


def compare_with_oracle(
    spec: SystemSpec,
    moments: NCMoments,
    closed_form: ClosedForm = closed_form_spectrum,
) -> float:
    closed = closed_form(spec, moments).sorted_frequencies()
    oracle = normal_modes(build_hamiltonian(spec, moments))
    return max_relative_deviation(closed, oracle.tolist())


def _fit_slope(points: List[ScalingPoint]) -> float | None:
    usable = [p for p in points if p.max_relative_deviation > DEVIATION_FLOOR]
    if len(usable) < 2:
        return None
    fit = np.polyfit(
        np.log([p.lam for p in usable]),
        np.log([p.max_relative_deviation for p in usable]),
        1,
    )
    return float(fit[0])


def scaling_test(
    spec: SystemSpec,
    lambda_sequence: Sequence[float],
    closed_form: ClosedForm = closed_form_spectrum,
) -> ScalingReport:
    """
    Scale every noncommutativity moment of `spec` by each lambda and
    measure how far the closed form drifts from the normal-mode oracle.
    A closed form exact for the averaged Hamiltonian stays at rounding
    level; one correct to second order shows a slope near 2 or more.
    """
    lambdas = list(lambda_sequence)
    if any(not lam > 0 for lam in lambdas):
        raise ConfigError('Scaling factors must be positive.')
    if any(b >= a for a, b in zip(lambdas, lambdas[1:])):
        raise ConfigError('Scaling factors must be strictly descending.')

    base = spec.moments()
    points = [
        ScalingPoint(
            lam=lam,
            max_relative_deviation=compare_with_oracle(
                spec, base.scaled(lam), closed_form
            ),
        )
        for lam in lambdas
    ]
    return ScalingReport(points=points, slope=_fit_slope(points))
