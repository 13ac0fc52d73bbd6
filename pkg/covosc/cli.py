import functools
import logging
import pathlib
import sys

import click

from . import scan as scans
from .errors import (
    AccuracyError,
    ConfigError,
    DomainError,
    NonFiniteValueError,
    QuadratureError,
)
from .verify import DEFAULT_TOLERANCE, FAULTS, SUITES, OracleVerifier, formula_ledger

EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_ACCURACY = 3

# ScanConfig field -> command-line flag
_FLAGS = {
    "eta_min": "--eta-min",
    "eta_max": "--eta-max",
    "steps": "--steps",
    "n": "--n",
    "output_format": "--format",
    "emit_plot": "--emit-plot",
}


def _setup_logging(verbose: bool) -> logging.Logger:
    """Setup logging configuration"""
    level = logging.DEBUG if verbose else logging.WARNING
    logging.basicConfig(
        level=level,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
        force=True,
    )
    return logging.getLogger(__name__)


def _exit_on_errors(command):
    """Map package errors to exit codes: 2 for bad settings, 3 for failed numerics."""

    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        ctx = click.get_current_context()
        try:
            return command(*args, **kwargs)
        except ConfigError as e:
            flag = _FLAGS.get(e.field, e.field)
            click.echo(f"❌ Invalid {flag}: {e}", err=True)
            ctx.exit(EXIT_USAGE)
        except DomainError as e:
            click.echo(f"❌ {e}", err=True)
            ctx.exit(EXIT_USAGE)
        except (AccuracyError, NonFiniteValueError, QuadratureError) as e:
            click.echo(f"❌ Numerical accuracy error: {e}", err=True)
            ctx.exit(EXIT_ACCURACY)

    return wrapper


def _scan_options(command):
    options = [
        click.option("--eta-min", default=0.0, show_default=True, help="Lowest rapidity"),
        click.option("--eta-max", default=3.0, show_default=True, help="Highest rapidity"),
        click.option("--steps", default=61, show_default=True, help="Grid points from eta-min to eta-max"),
        click.option("--n", "n", default=0, show_default=True, help="Oscillator excitation index"),
        click.option(
            "--format",
            "output_format",
            default="csv",
            show_default=True,
            help="Output format: csv or json",
        ),
        click.option("--emit-plot", is_flag=True, help="Also write a gnuplot script next to --out"),
        click.option(
            "--out",
            type=click.Path(dir_okay=False, path_type=pathlib.Path),
            help="Output file (default: stdout)",
        ),
    ]
    for option in reversed(options):
        command = option(command)
    return command


def _run_scan(name, eta_min, eta_max, steps, n, output_format, emit_plot, out):
    cfg = scans.ScanConfig(
        eta_min=eta_min,
        eta_max=eta_max,
        steps=steps,
        n=n,
        output_format=output_format,
        emit_plot=emit_plot,
    )
    if emit_plot and out is None:
        raise ConfigError("emit_plot", "needs --out so the script can reference the data file")

    table = scans.SCANS[name](cfg)
    if out is None:
        click.echo(table.render(output_format), nl=False)
        return
    for path in table.write(out, output_format, emit_plot):
        click.echo(f"📊 Wrote {path}", err=True)
    click.echo(f"✅ {name}: {len(table.rows)} rows", err=True)


@click.group()
@click.option("--verbose", "-v", is_flag=True, help="Enable debug logging")
def main(verbose):
    """Lorentz-covariant harmonic oscillator scans and oracle checks."""
    _setup_logging(verbose)


@main.command("scan-temperature")
@_scan_options
@_exit_on_errors
def scan_temperature(**options):
    """Hadronic temperature against speed: eta, beta, beta^2, T."""
    _run_scan("scan-temperature", **options)


@main.command("scan-phase-transition")
@_scan_options
@_exit_on_errors
def scan_phase_transition(**options):
    """beta^2 against temperature on a uniform T grid."""
    _run_scan("scan-phase-transition", **options)


@main.command("scan-observables")
@_scan_options
@_exit_on_errors
def scan_observables(**options):
    """Entropy, purity, widths and uncertainty products against rapidity."""
    _run_scan("scan-observables", **options)


@main.command("scan-wigner")
@_scan_options
@_exit_on_errors
def scan_wigner(**options):
    """Wigner phase-space radius against speed and temperature."""
    _run_scan("scan-wigner", **options)


@main.command()
@click.option(
    "--tolerance",
    default=DEFAULT_TOLERANCE,
    show_default=True,
    help="Tolerance for the checks whose contract is 1e-9",
)
@click.option(
    "--inject-fault",
    type=click.Choice(FAULTS),
    help="Swap in a known-wrong formula; the matching suite must fail",
)
@click.option(
    "--suite",
    "suites",
    multiple=True,
    type=click.Choice(SUITES),
    help="Run only this suite (repeatable)",
)
@_exit_on_errors
def verify(tolerance, inject_fault, suites):
    """Run every oracle suite and print the formula ledger."""
    click.echo("🔍 Running oracle suites...")
    verifier = OracleVerifier(tolerance=tolerance, inject_fault=inject_fault)
    if inject_fault:
        click.echo(f"⚠️  Fault injected: {inject_fault}")
    success = verifier.run_all(suites or None)

    click.echo("\n" + "=" * 50)
    click.echo("📋 CHECKS")
    click.echo("=" * 50)
    for result in verifier.results:
        mark = "✅" if result.passed else "❌"
        click.echo(
            f"{mark} {result.suite:<15} {result.name:<48} "
            f"max error {result.max_error:.3e} (tolerance {result.tolerance:.1e})"
        )

    click.echo("\n📖 FORMULA LEDGER")
    for entry in formula_ledger():
        click.echo(f"   • {entry.formula}")
        click.echo(f"       printed:  {entry.printed}")
        click.echo(f"       resolved: {entry.resolved}")
        click.echo(f"       evidence: {entry.evidence}")

    failures = verifier.failures
    if success and not failures:
        click.echo(f"\n✅ All {len(verifier.results)} checks passed!")
        return
    click.echo(f"\n❌ {len(failures)} of {len(verifier.results)} checks failed:", err=True)
    for result in failures:
        click.echo(f"   • {result.suite}/{result.name}: {result.max_error:.3e}", err=True)
    click.get_current_context().exit(EXIT_VERIFY_FAILED)


if __name__ == "__main__":
    main()
