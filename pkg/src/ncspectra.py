import sys

import click

from .errors import ConfigError, DomainError
from .run_config import OutputFormat, load_config
from .runner import SpectraRunner
from .utils.clean_exit import CleanExit, kill_children, set_clean_exit
from .utils.output import write_output

EXIT_VERIFICATION_FAILED = 1
EXIT_CONFIG_ERROR = 2
EXIT_DOMAIN_ERROR = 3
EXIT_INTERRUPTED = 130


def _common_options(command):
    command = click.option(
        '--output',
        default=None,
        type=click.Path(file_okay=True, dir_okay=False),
        help="Output file path. Defaults to the config's `output.path`, "
             "or standard output.",
    )(command)
    command = click.option(
        '--format',
        'fmt',
        default=None,
        type=click.Choice([f.value for f in OutputFormat]),
        help="Output format. Overrides the config's `output.format`.",
    )(command)
    command = click.option(
        '--config',
        type=click.Path(file_okay=True, dir_okay=False),
        help="JSON config file path",
        required=True,
    )(command)
    return command


def _run(command: str, config: str, fmt: str | None, output: str | None):
    set_clean_exit()
    try:
        run_config = load_config(config)
        if fmt is not None:
            run_config.output.format = OutputFormat(fmt)
        if output is not None:
            run_config.output.path = output
        result = SpectraRunner(run_config).run(command)
        write_output(
            result.render(run_config.output.format),
            run_config.output.path,
        )
    except ConfigError as e:
        click.echo(f"nc-spectra config error: {e}", err=True)
        sys.exit(EXIT_CONFIG_ERROR)
    except OSError as e:
        click.echo(f"nc-spectra cannot write output: {e}", err=True)
        sys.exit(EXIT_CONFIG_ERROR)
    except DomainError as e:
        click.echo(f"nc-spectra domain error: {e}", err=True)
        sys.exit(EXIT_DOMAIN_ERROR)
    except CleanExit as e:
        kill_children()
        click.echo(f"nc-spectra {e}", err=True)
        sys.exit(EXIT_INTERRUPTED)

    if not result.passed:
        click.echo(f"nc-spectra {command} failed", err=True)
        sys.exit(EXIT_VERIFICATION_FAILED)


@click.group(
    name="nc-spectra",
    help="Energy spectra of coupled oscillators in noncommutative "
         "phase space, with a normal-mode cross-check.",
)
def cli():
    pass


@cli.command(
    name="spectrum",
    help="Closed-form frequencies, field shift and ground energy.",
)
@_common_options
def spectrum(config, fmt, output):
    _run("spectrum", config, fmt, output)


@cli.command(
    name="verify",
    help="Compare the closed form with the normal-mode oracle.",
)
@_common_options
def verify(config, fmt, output):
    _run("verify", config, fmt, output)


@cli.command(
    name="sweep",
    help="Spectrum along one parameter axis.",
)
@_common_options
def sweep(config, fmt, output):
    _run("sweep", config, fmt, output)


@cli.command(
    name="limits",
    help="Check every reduction identity between the families.",
)
@_common_options
def limits(config, fmt, output):
    _run("limits", config, fmt, output)


if __name__ == '__main__':
    cli()
