from dataclasses import dataclass
import math
from typing import Iterator, List, Tuple

from sortedcontainers import SortedDict

from ..errors import ConfigError
from .result import DEGENERACY_TOLERANCE, QuantumNumbers, SpectrumResult


@dataclass(frozen=True)
class Level:
    energy: float
    degeneracy: int


def energy_level(spectrum: SpectrumResult, q: QuantumNumbers) -> float:
    """
    E = sum_a hbar w_a (n1 + n2 + n3 + 3/2) + field shift + offset,
    with one row of `q` per particle mode in `spectrum.frequencies()` order.
    """
    frequencies = spectrum.frequencies()
    if len(q.n) != len(frequencies):
        raise ConfigError(
            f'Quantum numbers have {len(q.n)} rows, '
            f'spectrum has {len(frequencies)} modes.'
        )
    energy = 0.0
    for frequency, total in zip(frequencies, q.totals()):
        energy += spectrum.hbar * frequency * (total + 1.5)
    return energy + spectrum.field_shift + spectrum.offset


def _distributions(
    families: List[Tuple[float, int]],
    budget: int,
) -> Iterator[Tuple[float, int]]:
    """
    Yield (excitation energy / hbar, degeneracy) for every way of handing
    at most `budget` quanta to the mode families.
    """
    if not families:
        yield 0.0, 1
        return
    (frequency, multiplicity), rest = families[0], families[1:]
    # oscillators in a family: 3 axes per particle mode
    dims = 3 * multiplicity
    for n in range(budget + 1):
        ways = math.comb(n + dims - 1, dims - 1)
        for excitation, degeneracy in _distributions(rest, budget - n):
            yield frequency * n + excitation, ways * degeneracy


def enumerate_levels(
    spectrum: SpectrumResult,
    max_total_quanta: int,
) -> List[Level]:
    """
    Distinct energies with at most `max_total_quanta` quanta in total,
    ascending, with exact integer degeneracies.
    """
    if max_total_quanta < 0:
        raise ConfigError('Value for `max_total_quanta` must be non-negative.')

    families = [(mode.frequency, mode.multiplicity) for mode in spectrum.modes]
    ground = spectrum.ground_energy
    levels = SortedDict()
    for excitation, degeneracy in _distributions(families, max_total_quanta):
        energy = ground + spectrum.hbar * excitation
        key = _matching_key(levels, energy)
        if key is None:
            levels[energy] = degeneracy
        else:
            levels[key] += degeneracy

    return [Level(energy=e, degeneracy=d) for e, d in levels.items()]


def _matching_key(levels: SortedDict, energy: float) -> float | None:
    tolerance = DEGENERACY_TOLERANCE * max(abs(energy), 1.0)
    idx = levels.bisect_left(energy)
    for i in (idx - 1, idx):
        if 0 <= i < len(levels):
            key = levels.keys()[i]
            if abs(key - energy) <= tolerance:
                return key
    return None
