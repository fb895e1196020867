from dataclasses import dataclass, field
from enum import Enum
import math
from typing import List, Sequence, Tuple

from ..errors import UnstableConfiguration

# Frequencies closer than this (relative) are one degenerate family.
DEGENERACY_TOLERANCE = 1.0e-9
# Squared frequencies within this of zero (relative) are rounding noise.
NOISE_TOLERANCE = 1.0e-13


class ModeLabel(Enum):
    CENTER_OF_MASS = "center-of-mass"
    RELATIVE = "relative"


@dataclass(frozen=True)
class Mode:
    """A 3D oscillator family: `multiplicity` copies of one frequency."""

    frequency: float
    multiplicity: int
    label: ModeLabel


@dataclass(frozen=True)
class SpectrumResult:
    modes: Tuple[Mode, ...]
    field_shift: float
    offset: float
    hbar: float = 1.0

    def __post_init__(self) -> None:
        for mode in self.modes:
            assert mode.frequency >= 0, "Frequencies must be non-negative."
            assert mode.multiplicity >= 1, "Multiplicity must be positive."

    @property
    def n(self) -> int:
        return sum(mode.multiplicity for mode in self.modes)

    @property
    def ground_energy(self) -> float:
        zero_point = sum(
            1.5 * self.hbar * mode.frequency * mode.multiplicity
            for mode in self.modes
        )
        return zero_point + self.field_shift + self.offset

    def frequencies(self) -> List[float]:
        """One frequency per particle, in mode order."""
        return [
            mode.frequency
            for mode in self.modes
            for _ in range(mode.multiplicity)
        ]

    def sorted_frequencies(self) -> List[float]:
        return sorted(self.frequencies())

    def com_frequency(self) -> float | None:
        for mode in self.modes:
            if mode.label == ModeLabel.CENTER_OF_MASS:
                return mode.frequency
        return None


@dataclass(frozen=True)
class QuantumNumbers:
    """`n[a][i]`: quanta of particle mode a along axis i."""

    n: Tuple[Tuple[int, int, int], ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        for row in self.n:
            assert len(row) == 3, "Expect three quantum numbers per mode."
            for q in row:
                if q < 0:
                    raise ValueError('Quantum numbers must be non-negative.')

    @staticmethod
    def ground(n_modes: int) -> 'QuantumNumbers':
        return QuantumNumbers(tuple((0, 0, 0) for _ in range(n_modes)))

    @staticmethod
    def from_lists(rows: Sequence[Sequence[int]]) -> 'QuantumNumbers':
        return QuantumNumbers(tuple(tuple(int(q) for q in r) for r in rows))

    def totals(self) -> List[int]:
        return [sum(row) for row in self.n]


def frequency_from_square(
    omega2: float,
    scale: float,
    name: str = "frequency",
) -> float:
    """
    Square root of a squared frequency, treating values within rounding
    noise of zero as zero.
    """
    threshold = NOISE_TOLERANCE * max(1.0, abs(scale))
    if omega2 < -threshold:
        raise UnstableConfiguration(f"{name}^2 = {omega2!r}")
    if omega2 <= threshold:
        return 0.0
    return math.sqrt(omega2)


def _same_frequency(a: float, b: float) -> bool:
    return abs(a - b) <= DEGENERACY_TOLERANCE * max(abs(a), abs(b))


def build_spectrum(
    com: List[float],
    relative: List[float],
    field_shift: float,
    offset: float,
    hbar: float,
) -> SpectrumResult:
    """
    Centre-of-mass families first, then relative families ascending, with
    degenerate relative frequencies merged.
    """
    modes = [Mode(f, 1, ModeLabel.CENTER_OF_MASS) for f in com]

    merged: List[Tuple[float, int]] = []
    for f in sorted(relative):
        if merged and _same_frequency(merged[-1][0], f):
            merged[-1] = (merged[-1][0], merged[-1][1] + 1)
        else:
            merged.append((f, 1))
    modes.extend(Mode(f, count, ModeLabel.RELATIVE) for f, count in merged)

    return SpectrumResult(
        modes=tuple(modes),
        field_shift=field_shift,
        offset=offset,
        hbar=hbar,
    )
