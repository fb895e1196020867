from dataclasses import dataclass, field
from typing import Any, Dict, List, Tuple

import click

from .checks.limits import LimitsReport, run_limits
from .checks.verifier import VerifyReport, verify
from .model.constraints import validate_constraints
from .run_config import OutputFormat, RunConfig
from .spectra.dispatch import closed_form_spectrum
from .spectra.levels import energy_level, enumerate_levels
from .spectra.result import SpectrumResult
from .utils.output import CSV_HEADER, dump_csv, dump_json
from .utils.pool import PointPool

CHECK_HEADER = ["name", "deviation", "passed"]


@dataclass
class CommandOutput:
    """A finished command: its JSON report, its CSV rows and its verdict."""

    report: Dict[str, Any]
    header: List[str]
    rows: List[List[Any]] = field(default_factory=list)
    passed: bool = True

    def render(self, fmt: OutputFormat) -> str:
        if fmt == OutputFormat.CSV:
            return dump_csv(self.header, self.rows)
        return dump_json(self.report)


def _spectrum_rows(
    axis: str,
    value: Any,
    spectrum: SpectrumResult,
) -> List[List[Any]]:
    ground = spectrum.ground_energy
    return [
        [axis, value, i, frequency, spectrum.field_shift, ground]
        for i, frequency in enumerate(spectrum.frequencies())
    ]


def _sweep_point(args: Tuple[RunConfig, str, float]) -> List[List[Any]]:
    config, axis, value = args
    system = config.with_value(axis, value).system()
    label = int(value) if axis == "N" else value
    return _spectrum_rows(axis, label, closed_form_spectrum(system))


def _verify_dict(report: VerifyReport, draws: int) -> Dict[str, Any]:
    return {
        "command": "verify",
        "topology": report.topology.value,
        "N": report.n,
        "draws": draws,
        "frequency_deviation": report.frequency_deviation,
        "shift_deviation": report.shift_deviation,
        "ground_deviation": report.ground_deviation,
        "com_deviation": report.com_deviation,
        "max_deviation": report.max_deviation,
        "branch": report.branch,
        "slope": report.slope,
        "pairwise_slopes": report.pairwise_slopes,
        "scaling": [
            {
                "lambda": point.lam,
                "max_relative_deviation": point.max_relative_deviation,
            }
            for point in report.scaling
        ],
        "passed": report.passed,
    }


def _limits_dict(report: LimitsReport, config: RunConfig) -> Dict[str, Any]:
    return {
        "command": "limits",
        "topology": config.topology.value,
        "N": config.system().n,
        "checks": [
            {
                "name": check.name,
                "deviation": check.deviation,
                "status": check.status.value,
                "detail": check.detail,
            }
            for check in report.checks
        ],
        "passed": report.passed,
    }


class SpectraRunner:
    """
    `SpectraRunner` runs one subcommand on a parsed config and hands back
    the result for formatting.
    """

    def __init__(
        self,
        config: RunConfig,
        show_progress: bool = True,
    ) -> None:
        self._config = config
        self._show_progress = show_progress

    def run(self, command: str) -> CommandOutput:
        commands = {
            "spectrum": self.cmd_spectrum,
            "verify": self.cmd_verify,
            "sweep": self.cmd_sweep,
            "limits": self.cmd_limits,
        }
        assert command in commands, f"Unknown command: {command}"
        return commands[command]()

    def cmd_spectrum(self) -> CommandOutput:
        params = self._config.spectrum_command()
        system = self._config.system()
        spectrum = closed_form_spectrum(system)
        constraints = validate_constraints(system)

        report: Dict[str, Any] = {
            "command": "spectrum",
            "topology": system.topology.value,
            "N": system.n,
            "frequencies": spectrum.sorted_frequencies(),
            "modes": [
                {
                    "label": mode.label.value,
                    "frequency": mode.frequency,
                    "multiplicity": mode.multiplicity,
                }
                for mode in spectrum.modes
            ],
            "field_shift": spectrum.field_shift,
            "offset": spectrum.offset,
            "ground_energy": spectrum.ground_energy,
            "constraints": {
                "gamma": constraints.gamma,
                "alpha": constraints.alpha,
                "gamma_deviation": constraints.gamma_deviation,
                "alpha_deviation": constraints.alpha_deviation,
                "passed": constraints.passed,
            },
        }
        if not constraints.passed:
            click.echo(
                "[spectrum] particles do not share one (gamma, alpha) pair",
                err=True,
            )
        if params.quantum_numbers is not None:
            report["energy"] = energy_level(spectrum, params.quantum_numbers)
        if params.max_total_quanta is not None:
            report["levels"] = [
                {"energy": level.energy, "degeneracy": level.degeneracy}
                for level in enumerate_levels(
                    spectrum, params.max_total_quanta
                )
            ]

        return CommandOutput(
            report=report,
            header=CSV_HEADER,
            rows=_spectrum_rows("none", 0, spectrum),
        )

    def cmd_verify(self) -> CommandOutput:
        params = self._config.verify_command()
        params.show_progress = self._show_progress
        report = verify(self._config.system(), params)
        click.echo(
            f"[verify] {report.topology.value}: branch {report.branch}, "
            f"max deviation {report.max_deviation:.3e}",
            err=True,
        )

        rows: List[List[Any]] = [
            ["frequency_deviation", report.frequency_deviation,
             report.frequency_deviation <= params.tolerance],
            ["shift_deviation", report.shift_deviation,
             report.shift_deviation <= params.tolerance],
            ["ground_deviation", report.ground_deviation,
             report.branch != "exact"
             or report.ground_deviation <= params.tolerance],
        ]
        if report.com_deviation is not None:
            rows.append(["com_deviation", report.com_deviation,
                         report.com_deviation <= params.tolerance])
        rows.append(["max_deviation", report.max_deviation,
                     report.branch != "failed"])

        return CommandOutput(
            report=_verify_dict(report, params.draws),
            header=CHECK_HEADER,
            rows=rows,
            passed=report.passed,
        )

    def cmd_sweep(self) -> CommandOutput:
        """
        Every point is evaluated before anything is returned, so a domain
        error at one point leaves no partial output.
        """
        params = self._config.sweep_command()
        pool = PointPool(
            step="sweep",
            process_point=_sweep_point,
            num_processes=params.workers,
            show_progress=self._show_progress,
        )
        points = pool.process([
            (self._config, params.axis, value) for value in params.values
        ])

        rows = [row for point in points for row in point]
        report = {
            "command": "sweep",
            "axis": params.axis,
            "points": [
                {
                    "value": point[0][1],
                    "frequencies": [row[3] for row in point],
                    "field_shift": point[0][4],
                    "ground_energy": point[0][5],
                }
                for point in points
            ],
        }
        return CommandOutput(report=report, header=CSV_HEADER, rows=rows)

    def cmd_limits(self) -> CommandOutput:
        params = self._config.limits_command()
        report = run_limits(
            self._config.system(),
            tolerance=params.tolerance,
            coordinate_keep_eta=params.coordinate_keep_eta,
        )
        for check in report.checks:
            if check.detail:
                click.echo(
                    f"[limits] {check.name} rejected: {check.detail}",
                    err=True,
                )

        rows = [
            [check.name, check.deviation, check.status.value != "failed"]
            for check in report.checks
        ]
        return CommandOutput(
            report=_limits_dict(report, self._config),
            header=CHECK_HEADER,
            rows=rows,
            passed=report.passed,
        )
