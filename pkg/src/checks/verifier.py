from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

import click
import numpy as np

from ..model.constants import Constants
from ..model.moments import nc_from_moments
from ..model.system import Particle, SystemSpec, Topology
from ..oracle.hamiltonian import build_hamiltonian
from ..oracle.normal_modes import com_relative_split, ground_energy_and_shift
from ..oracle.scaling import (
    ScalingPoint,
    compare_with_oracle,
    relative_deviation,
    scaling_test,
)
from ..spectra.dispatch import closed_form_spectrum
from ..utils.pool import PointPool

DEFAULT_LAMBDAS = [0.1, 0.05, 0.025, 0.0125]

# Families whose frequencies come from momentum noncommutativity alone.
_NO_TRAP = (
    Topology.FREE,
    Topology.HO_INTERACTION,
    Topology.COORDINATE_NC_TRIPLE,
)


@dataclass
class VerifyParams:
    draws: int = 25
    """Random systems drawn in addition to the configured one."""
    seed: int = 0
    tolerance: float = 1e-10
    """Maximum relative deviation for the exact branch."""
    lambdas: List[float] = field(
        default_factory=lambda: list(DEFAULT_LAMBDAS)
    )
    """Strictly descending moment scale factors for the scaling test."""
    min_slope: float = 1.7
    """Least log-log slope accepted as second-order agreement."""
    workers: int = 1
    """Worker processes; 0 uses every CPU."""
    show_progress: bool = True


@dataclass(frozen=True)
class VerifyReport:
    topology: Topology
    n: int
    frequency_deviation: float
    """Configured system, closed form against oracle."""
    shift_deviation: float
    ground_deviation: float
    """Gates `passed` on the exact branch only."""
    com_deviation: float | None
    """None when the particles are not identical."""
    max_deviation: float
    """Worst deviation over the configured system and every draw."""
    branch: str
    """`exact`, `second-order` or `failed`."""
    slope: float | None
    pairwise_slopes: List[float | None]
    """Slope between each pair of neighbouring scale factors."""
    scaling: List[ScalingPoint]
    passed: bool


def _uniform(rng: np.random.Generator, low: float, high: float) -> float:
    return float(rng.uniform(low, high))


def _draw_particle(
    rng: np.random.Generator,
    constants: Constants,
    trapped: bool,
    with_eta: bool,
) -> Particle:
    if trapped:
        mass = _uniform(rng, 0.1, 5.0)
        omega = _uniform(rng, 0.1, 5.0)
        # keeps m^2 w^2 <theta^2> / 6 <= 0.25
        theta2 = _uniform(rng, 0.0, 1.0) \
            * min(1.0, 1.5 / (mass * omega) ** 2)
        eta2 = _uniform(rng, 0.0, 1.0)
    else:
        # eta alone sets the trap, so keep it well away from zero
        mass = _uniform(rng, 0.5, 2.0)
        omega = 0.0
        theta2 = _uniform(rng, 0.0, 0.2)
        eta2 = _uniform(rng, 0.5, 2.0)
    if not with_eta:
        eta2 = 0.0
    return Particle(
        mass=mass,
        omega=omega,
        nc=nc_from_moments(theta2, eta2, constants),
    )


def draw_system(
    topology: Topology,
    n: int,
    rng: np.random.Generator,
    constants: Constants,
) -> SystemSpec:
    """
    A random system of the given family. One in four 1+2 triples is the
    untrapped quark-model case.
    """
    quark = topology == Topology.TRIPLE and rng.random() < 0.25
    trapped = topology not in _NO_TRAP and not quark
    with_eta = topology != Topology.COORDINATE_NC_TRIPLE

    species = [
        _draw_particle(rng, constants, trapped, with_eta)
        for _ in range(topology.species_count)
    ]
    if topology == Topology.FREE:
        k = 0.0
    elif topology == Topology.HO_INTERACTION:
        k = _uniform(rng, 0.1, 5.0)
    else:
        k = _uniform(rng, 0.0, 5.0)

    return SystemSpec.from_species(
        topology,
        species,
        n=None if topology.fixed_size is not None else n,
        k=k,
        constants=constants,
    )


def _oracle_deviation(spec: SystemSpec) -> float:
    return compare_with_oracle(spec, spec.moments())


def _energy_deviations(spec: SystemSpec) -> Tuple[float, float]:
    """Field shift and ground energy, closed form against oracle."""
    closed = closed_form_spectrum(spec)
    oracle = ground_energy_and_shift(build_hamiltonian(spec))
    return (
        relative_deviation(closed.field_shift, oracle.shift),
        relative_deviation(closed.ground_energy, oracle.ground),
    )


def _com_deviation(spec: SystemSpec) -> float | None:
    split = com_relative_split(build_hamiltonian(spec))
    if split is None:
        return None
    closed = closed_form_spectrum(spec).com_frequency()
    assert closed is not None, "Expect a centre-of-mass family."
    return relative_deviation(closed, split.com_frequency)


def verify(spec: SystemSpec, params: VerifyParams) -> VerifyReport:
    """
    Compare the closed form of `spec.topology` with the normal-mode oracle
    on the configured system and on `params.draws` random systems of the
    same family. If any deviation exceeds the tolerance, the worst system
    goes through the scaling test and must show second-order agreement.
    """
    rng = np.random.default_rng(params.seed)
    systems: List[SystemSpec] = [spec] + [
        draw_system(spec.topology, spec.n, rng, spec.constants)
        for _ in range(params.draws)
    ]

    pool = PointPool(
        step="verify",
        process_point=_oracle_deviation,
        num_processes=params.workers,
        show_progress=params.show_progress,
    )
    deviations: Sequence[float] = pool.process(systems)

    worst = int(np.argmax(deviations))
    max_deviation = float(deviations[worst])
    slope = None
    pairwise_slopes: List[float | None] = []
    scaling: List[ScalingPoint] = []
    if max_deviation <= params.tolerance:
        branch = "exact"
    else:
        click.echo(
            f"[verify] deviation {max_deviation:.3e} exceeds "
            f"{params.tolerance:.3e}, running scaling test",
            err=True,
        )
        report = scaling_test(systems[worst], params.lambdas)
        slope = report.slope
        pairwise_slopes = report.pairwise_slopes()
        scaling = report.points
        passed_slope = slope is not None and slope >= params.min_slope
        branch = "second-order" if passed_slope else "failed"

    shift_deviation, ground_deviation = _energy_deviations(spec)
    com_deviation = _com_deviation(spec)
    passed = branch != "failed" \
        and shift_deviation <= params.tolerance \
        and (branch != "exact" or ground_deviation <= params.tolerance) \
        and (com_deviation is None or com_deviation <= params.tolerance)

    return VerifyReport(
        topology=spec.topology,
        n=spec.n,
        frequency_deviation=float(deviations[0]),
        shift_deviation=shift_deviation,
        ground_deviation=ground_deviation,
        com_deviation=com_deviation,
        max_deviation=max_deviation,
        branch=branch,
        slope=slope,
        pairwise_slopes=pairwise_slopes,
        scaling=scaling,
        passed=passed,
    )
