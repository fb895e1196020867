from dataclasses import dataclass, field, replace
from enum import Enum
import json
import math
from typing import Any, Dict, List

import numpy as np

from .checks.verifier import DEFAULT_LAMBDAS, VerifyParams
from .errors import ConfigError
from .model.constants import Constants
from .model.moments import NCParams, nc_from_moments
from .model.system import Particle, SystemSpec, Topology
from .spectra.result import QuantumNumbers

SWEEP_AXES = ("c_theta", "c_eta", "k", "kappa", "N", "mass", "omega")
COMMANDS = ("spectrum", "verify", "sweep", "limits")

_TOP_LEVEL_KEYS = {
    "constants", "topology", "particles", "N", "k", "kappa", "command",
    "output",
}
_PARTICLE_KEYS = {"mass", "omega", "c_theta", "c_eta", "theta2", "eta2"}


class OutputFormat(Enum):
    JSON = "json"
    CSV = "csv"


@dataclass
class OutputParams:
    format: OutputFormat = OutputFormat.JSON
    path: str | None = None
    """Output file path; `None` writes to standard output."""


@dataclass
class SpectrumCommand:
    max_total_quanta: int | None = None
    """Append the level table up to this many quanta in total."""
    quantum_numbers: QuantumNumbers | None = None
    """Append the energy of this state, one row of three per mode."""


@dataclass
class SweepCommand:
    axis: str
    """One of `SWEEP_AXES`."""
    values: List[float]
    """Axis values, in order of output."""
    workers: int = 1


@dataclass
class LimitsCommand:
    tolerance: float = 1e-12
    coordinate_keep_eta: bool = False
    """
    Keep the configured eta moments in the coordinate-only check, which
    then reports a rejected input instead of a deviation.
    """


def _check_is_positive(name: str, value: float) -> None:
    if not value > 0:
        raise ConfigError(f'Value for `{name}` must be positive.')


def _check_is_non_negative(name: str, value: float) -> None:
    if not value >= 0:
        raise ConfigError(f'Value for `{name}` must be non-negative.')


def _check_keys(block: Dict[str, Any], allowed: set, where: str) -> None:
    unknown = sorted(set(block) - allowed)
    if unknown:
        raise ConfigError(f'Unknown keys in {where}: {", ".join(unknown)}')


def _as_dict(value: Any, where: str) -> Dict[str, Any]:
    if not isinstance(value, dict):
        raise ConfigError(f'Expected an object for {where}.')
    return value


def _get_float(
    block: Dict[str, Any],
    key: str,
    default: float | None = None,
) -> float:
    value = block.get(key, default)
    if value is None:
        raise ConfigError(f'Missing value for `{key}`.')
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f'Value for `{key}` must be a number.')
    value = float(value)
    if not math.isfinite(value):
        raise ConfigError(f'Value for `{key}` must be finite.')
    return value


def _get_int(
    block: Dict[str, Any],
    key: str,
    default: int | None = None,
) -> int | None:
    value = block.get(key, default)
    if value is None:
        return None
    if isinstance(value, float) and value.is_integer():
        value = int(value)
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f'Value for `{key}` must be an integer.')
    return value


def _parse_particle(entry: Any, index: int, constants: Constants) -> Particle:
    entry = _as_dict(entry, f'particle {index}')
    _check_keys(entry, _PARTICLE_KEYS, f'particle {index}')

    mass = _get_float(entry, "mass")
    _check_is_positive("mass", mass)
    omega = _get_float(entry, "omega", 0.0)
    _check_is_non_negative("omega", omega)

    direct = "theta2" in entry or "eta2" in entry
    if direct and ("c_theta" in entry or "c_eta" in entry):
        raise ConfigError(
            f'Particle {index} mixes constants and moments; '
            'give either `c_theta`/`c_eta` or `theta2`/`eta2`.'
        )
    if direct:
        theta2 = _get_float(entry, "theta2", 0.0)
        eta2 = _get_float(entry, "eta2", 0.0)
        _check_is_non_negative("theta2", theta2)
        _check_is_non_negative("eta2", eta2)
        nc = nc_from_moments(theta2, eta2, constants)
    else:
        nc = NCParams(
            c_theta=_get_float(entry, "c_theta", 0.0),
            c_eta=_get_float(entry, "c_eta", 0.0),
        )
    return Particle(mass=mass, omega=omega, nc=nc)


def _parse_constants(block: Any) -> Constants:
    block = _as_dict(block, '`constants`')
    _check_keys(block, {"hbar", "l_P", "omega_osc"}, '`constants`')
    return Constants(
        hbar=_get_float(block, "hbar", 1.0),
        l_P=_get_float(block, "l_P", 1.0),
        omega_osc=_get_float(block, "omega_osc", 0.0),
    )


def _parse_output(block: Any) -> OutputParams:
    block = _as_dict(block, '`output`')
    _check_keys(block, {"format", "path"}, '`output`')
    try:
        fmt = OutputFormat(block.get("format", "json"))
    except ValueError:
        raise ConfigError('Value for `format` must be `json` or `csv`.')
    path = block.get("path")
    if path is not None and not isinstance(path, str):
        raise ConfigError('Value for `path` must be a string.')
    return OutputParams(format=fmt, path=path)


def check_topology_rules(
    topology: Topology,
    species: List[Particle],
    k: float,
) -> None:
    """Raise `ConfigError` when the species cannot belong to `topology`."""
    if len(species) != topology.species_count:
        raise ConfigError(
            f'Topology `{topology.value}` expects '
            f'{topology.species_count} particle species, got {len(species)}.'
        )
    if topology == Topology.FREE and k != 0:
        raise ConfigError('Topology `free` requires `k` = 0.')
    if topology in (
        Topology.FREE,
        Topology.HO_INTERACTION,
        Topology.COORDINATE_NC_TRIPLE,
    ):
        if any(p.omega != 0 for p in species):
            raise ConfigError(
                f'Topology `{topology.value}` requires `omega` = 0.'
            )
    if topology == Topology.COORDINATE_NC_TRIPLE:
        if any(p.nc.c_eta != 0 for p in species):
            raise ConfigError(
                'Topology `coordinate-nc-triple` requires zero `c_eta`.'
            )


@dataclass
class RunConfig:
    """
    One parsed config document. The system is rebuilt from its parts on
    demand so sweeps can vary any of them.
    """

    topology: Topology
    species: List[Particle]
    """One entry per particle species."""
    n: int | None = None
    k: float = 0.0
    kappa: float = 0.0
    constants: Constants = field(default_factory=Constants)
    commands: Dict[str, Dict[str, Any]] = field(default_factory=dict)
    """Raw per-subcommand blocks, parsed when the subcommand runs."""
    output: OutputParams = field(default_factory=OutputParams)

    def __post_init__(self) -> None:
        _check_is_non_negative("k", self.k)
        check_topology_rules(self.topology, self.species, self.k)

    def system(self) -> SystemSpec:
        return SystemSpec.from_species(
            self.topology,
            self.species,
            n=self.n,
            k=self.k,
            kappa=self.kappa,
            constants=self.constants,
        )

    def with_value(self, axis: str, value: float) -> 'RunConfig':
        """The same config with one sweep axis set to `value`."""
        if axis == "N":
            if self.topology.fixed_size is not None:
                raise ConfigError(
                    f'Topology `{self.topology.value}` has a fixed `N`.'
                )
            return replace(self, n=int(value))
        if axis == "k":
            return replace(self, k=value)
        if axis == "kappa":
            return replace(self, kappa=value)
        if axis in ("mass", "omega"):
            species = [replace(p, **{axis: value}) for p in self.species]
        elif axis in ("c_theta", "c_eta"):
            species = [
                replace(p, nc=replace(p.nc, **{axis: value}))
                for p in self.species
            ]
        else:
            raise ConfigError(
                f'Unknown sweep axis `{axis}`; expected one of '
                f'{", ".join(SWEEP_AXES)}.'
            )
        return replace(self, species=species)

    def _command_block(self, name: str, allowed: set) -> Dict[str, Any]:
        block = self.commands.get(name, {})
        _check_keys(block, allowed, f'`command.{name}`')
        return block

    def spectrum_command(self) -> SpectrumCommand:
        block = self._command_block(
            "spectrum", {"max_total_quanta", "quantum_numbers"},
        )
        max_total_quanta = _get_int(block, "max_total_quanta")
        if max_total_quanta is not None:
            _check_is_non_negative("max_total_quanta", max_total_quanta)

        quantum_numbers = None
        rows = block.get("quantum_numbers")
        if rows is not None:
            if not isinstance(rows, list) or any(
                not isinstance(r, list) or len(r) != 3 for r in rows
            ):
                raise ConfigError(
                    'Value for `quantum_numbers` must be a list of '
                    'three-entry lists.'
                )
            for row in rows:
                for q in row:
                    if isinstance(q, bool) or not isinstance(q, int):
                        raise ConfigError(
                            'Quantum numbers must be integers.'
                        )
            try:
                quantum_numbers = QuantumNumbers.from_lists(rows)
            except ValueError as e:
                raise ConfigError(str(e))
        return SpectrumCommand(
            max_total_quanta=max_total_quanta,
            quantum_numbers=quantum_numbers,
        )

    def verify_command(self) -> VerifyParams:
        block = self._command_block(
            "verify",
            {"draws", "seed", "tolerance", "lambdas", "min_slope", "workers"},
        )
        draws = _get_int(block, "draws", 25)
        _check_is_non_negative("draws", draws)
        seed = _get_int(block, "seed", 0)
        _check_is_non_negative("seed", seed)
        workers = _get_int(block, "workers", 1)
        _check_is_non_negative("workers", workers)
        tolerance = _get_float(block, "tolerance", 1e-10)
        _check_is_positive("tolerance", tolerance)

        lambdas = block.get("lambdas", list(DEFAULT_LAMBDAS))
        if not isinstance(lambdas, list) or len(lambdas) < 2:
            raise ConfigError(
                'Value for `lambdas` must be a list of at least two numbers.'
            )
        lambdas = [
            _get_float({"lambdas": lam}, "lambdas") for lam in lambdas
        ]
        for lam in lambdas:
            _check_is_positive("lambdas", lam)
        if any(b >= a for a, b in zip(lambdas, lambdas[1:])):
            raise ConfigError(
                'Value for `lambdas` must be strictly descending.'
            )

        return VerifyParams(
            draws=draws,
            seed=seed,
            tolerance=tolerance,
            lambdas=lambdas,
            min_slope=_get_float(block, "min_slope", 1.7),
            workers=workers,
        )

    def sweep_command(self) -> SweepCommand:
        block = self._command_block(
            "sweep", {"axis", "values", "start", "stop", "steps", "workers"},
        )
        axis = block.get("axis")
        if axis not in SWEEP_AXES:
            raise ConfigError(
                f'Value for `axis` must be one of {", ".join(SWEEP_AXES)}.'
            )
        workers = _get_int(block, "workers", 1)
        _check_is_non_negative("workers", workers)

        if "values" in block:
            if any(key in block for key in ("start", "stop", "steps")):
                raise ConfigError(
                    'Give either `values` or `start`/`stop`/`steps`.'
                )
            raw = block["values"]
            if not isinstance(raw, list):
                raise ConfigError('Value for `values` must be a list.')
            values = [_get_float({"values": v}, "values") for v in raw]
        else:
            start = _get_float(block, "start")
            stop = _get_float(block, "stop")
            steps = _get_int(block, "steps")
            if steps is None:
                raise ConfigError('Missing value for `steps`.')
            values = [float(v) for v in np.linspace(start, stop, max(steps, 0))]
        if len(values) < 2:
            raise ConfigError('A sweep needs at least two steps.')

        if axis == "N":
            if any(not v.is_integer() or v < 1 for v in values):
                raise ConfigError(
                    'Values for axis `N` must be positive integers.'
                )
        elif axis == "mass":
            for v in values:
                _check_is_positive(axis, v)
        elif axis in ("k", "omega"):
            for v in values:
                _check_is_non_negative(axis, v)
        return SweepCommand(axis=axis, values=values, workers=workers)

    def limits_command(self) -> LimitsCommand:
        block = self._command_block(
            "limits", {"tolerance", "coordinate_keep_eta"},
        )
        tolerance = _get_float(block, "tolerance", 1e-12)
        _check_is_positive("tolerance", tolerance)
        keep_eta = block.get("coordinate_keep_eta", False)
        if not isinstance(keep_eta, bool):
            raise ConfigError(
                'Value for `coordinate_keep_eta` must be true or false.'
            )
        return LimitsCommand(
            tolerance=tolerance,
            coordinate_keep_eta=keep_eta,
        )


def parse_config(document: Any) -> RunConfig:
    document = _as_dict(document, 'the config document')
    _check_keys(document, _TOP_LEVEL_KEYS, 'the config document')

    constants = _parse_constants(document.get("constants", {}))

    try:
        topology = Topology(document.get("topology", "identical-N"))
    except ValueError:
        raise ConfigError(
            'Value for `topology` must be one of '
            f'{", ".join(t.value for t in Topology)}.'
        )

    particles = document.get("particles")
    if not isinstance(particles, list) or not particles:
        raise ConfigError('Value for `particles` must be a non-empty list.')
    species = [
        _parse_particle(entry, i, constants)
        for i, entry in enumerate(particles)
    ]

    n = _get_int(document, "N")
    if n is not None:
        _check_is_positive("N", n)

    commands = _as_dict(document.get("command", {}), '`command`')
    _check_keys(commands, set(COMMANDS), '`command`')
    for name, block in commands.items():
        _as_dict(block, f'`command.{name}`')

    config = RunConfig(
        topology=topology,
        species=species,
        n=n,
        k=_get_float(document, "k", 0.0),
        kappa=_get_float(document, "kappa", 0.0),
        constants=constants,
        commands=commands,
        output=_parse_output(document.get("output", {})),
    )
    # surfaces N and species-count problems before any command runs
    config.system()
    return config


def load_config(path: str) -> RunConfig:
    try:
        with open(path) as file:
            document = json.load(file)
    except OSError as e:
        raise ConfigError(f'Cannot read config file: {e}')
    except json.JSONDecodeError as e:
        raise ConfigError(f'Config file is not valid JSON: {e}')
    return parse_config(document)
