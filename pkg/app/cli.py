"""
oscimin command line.

Results go to stdout (or --out); logs go to stderr. Exit status is 0 when every
requested check passed, 1 when a check failed and 2 on solver or input errors.
"""
import functools
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

import click

from app.formatters import (
    flat_payload,
    format_failed_checks,
    oracle_frame,
    profile_frame,
    sweep_frame,
    sweep_minimum
)
from core.config import OutputFormat, settings
from core.exceptions import BaseOsciminError
from core.logging import get_logger, setup_logging
from models.oracles import OracleReport
from models.run import RunConfig
from services.experiment_runner import experiment_runner
from utils.table_io import render_csv, render_json, write_text

logger = get_logger(__name__)

EXIT_FAILED_CHECKS = 1
EXIT_ERROR = 2

def handle_errors(command: Callable) -> Callable:
    """Map solver and input errors to exit status 2"""
    @functools.wraps(command)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        try:
            return command(*args, **kwargs)
        except BaseOsciminError as e:
            logger.debug("Command failed", exc_info=e, extra={"error_code": e.error_code.value})
            click.echo(f"error [{e.error_code.value}]: {e.message}", err=True)
            sign_changes = e.details.get("sign_changes") if isinstance(e.details, dict) else None
            if sign_changes:
                click.echo(f"sign changes found by scanning: {sign_changes}", err=True)
            raise SystemExit(EXIT_ERROR)
    return wrapper

def solver_options(command: Callable) -> Callable:
    """Integrator and output options shared by the solver commands"""
    options = [
        click.option("--rel-tol", type=float, default=None, help="Relative local-error tolerance."),
        click.option("--abs-tol", type=float, default=None, help="Absolute local-error tolerance."),
        click.option("--x-max", type=float, default=None, help="Integration horizon."),
        click.option("--blowup-threshold", type=float, default=None, help="|u| treated as blow-up."),
        click.option("--root-tol", type=float, default=None, help="Final lambda bracket width."),
        click.option("--bracket", type=(float, float), default=None, metavar="LO HI", help="Lambda bracket."),
        click.option("--format", "output_format", type=click.Choice([f.value for f in OutputFormat]),
                     default=OutputFormat.CSV.value, show_default=True),
        click.option("--out", "output_path", type=click.Path(dir_okay=False, path_type=Path), default=None,
                     help="Write results here instead of stdout.")
    ]
    for option in reversed(options):
        command = option(command)
    return command

def _configure(**overrides: Any) -> RunConfig:
    config = RunConfig.from_settings(**overrides)
    experiment_runner.initialize(config)
    return config

def _emit(config: RunConfig, csv_text: Callable[[], str], json_payload: Callable[[], Any]) -> None:
    text = render_json(json_payload()) if config.output_format == OutputFormat.JSON else csv_text()
    if config.output_path is None:
        click.echo(text, nl=False)
    else:
        write_text(text, config.output_path)

def _finish(reports: List[OracleReport]) -> None:
    failed = format_failed_checks(reports)
    if failed:
        click.echo(f"failed checks:\n{failed}", err=True)
        raise SystemExit(EXIT_FAILED_CHECKS)

@click.group()
@click.option("--log-level", type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False),
              default=None, help="Override OSCIMIN_LOG_LEVEL.")
@click.version_option(settings.VERSION, prog_name=settings.PROJECT_NAME)
def main(log_level: Optional[str]) -> None:
    """Sharp constant of int u''^2 - int u'' u^2 >= I int u^4 by shooting."""
    if log_level:
        setup_logging(log_level.upper())

@main.command("find-infimum")
@solver_options
@click.option("--samples", type=int, default=None, help="Profile samples for the first-integral check.")
@handle_errors
def find_infimum_command(**options: Any) -> None:
    """Solve J_tilde(lambda) + lambda = 0 and check the minimizer."""
    config = _configure(**options)
    _, report = experiment_runner.run_find_infimum()
    summary: Dict[str, Any] = report.model_dump(include={"I", "T", "a", "A", "B", "C"})

    _emit(
        config,
        lambda: render_csv(oracle_frame(report.oracles), comments={**summary, "Q": report.Q}),
        lambda: flat_payload(summary, report.oracles)
    )
    _finish(report.oracles)

@main.command("sweep")
@solver_options
@click.option("--from", "sweep_from", type=float, default=None, help="First lambda.")
@click.option("--to", "sweep_to", type=float, default=None, help="Last lambda.")
@click.option("--step", "sweep_step", type=float, default=None, help="Lambda step.")
@click.option("--threads", type=int, default=None, help="Worker processes (overrides OSCIMIN_THREADS).")
@handle_errors
def sweep_command(**options: Any) -> None:
    """Tabulate J and J_tilde over a lambda grid."""
    config = _configure(**options)
    rows = experiment_runner.run_sweep()
    _emit(
        config,
        lambda: render_csv(sweep_frame(rows), comments={
            "from": config.sweep_from, "to": config.sweep_to, "step": config.sweep_step,
            **sweep_minimum(rows)
        }),
        lambda: [row.model_dump(by_alias=True) for row in rows]
    )

@main.command("profile")
@solver_options
@click.option("--samples", type=int, default=None, help="Samples over one period [-T, T].")
@handle_errors
def profile_command(**options: Any) -> None:
    """Sample one period of the minimizer."""
    config = _configure(**options)
    result, profile = experiment_runner.run_profile()
    header = {"I": result.I_value, "T": profile.T, "a": profile.a}
    frame = profile_frame(profile)
    _emit(
        config,
        lambda: render_csv(frame, comments=header),
        lambda: {**header, "samples": frame.to_dict(orient="records")}
    )

@main.command("verify")
@solver_options
@click.option("--samples", type=int, default=None, help="Profile samples for the first-integral check.")
@click.option("--inject-i", type=float, default=None, help="Check this I instead of the computed one.")
@handle_errors
def verify_command(inject_i: Optional[float], **options: Any) -> None:
    """Run the oracle suite."""
    config = _configure(**options)
    report = experiment_runner.run_verify(inject_i=inject_i)
    summary = {"I": report.I, "injected": report.injected}
    _emit(
        config,
        lambda: render_csv(oracle_frame(report.oracles), comments=summary),
        lambda: flat_payload(summary, report.oracles)
    )
    _finish(report.oracles)

@main.command("q")
@click.argument("file", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--periodic", is_flag=True, help="Samples cover one closed period.")
@click.option("--format", "output_format", type=click.Choice([f.value for f in OutputFormat]),
              default=OutputFormat.CSV.value, show_default=True)
@click.option("--out", "output_path", type=click.Path(dir_okay=False, path_type=Path), default=None)
@handle_errors
def q_command(file: Path, periodic: bool, **options: Any) -> None:
    """Quotient of (x, u) samples read from FILE."""
    config = _configure(**options)
    report = experiment_runner.run_q(file, periodic)
    summary = report.model_dump(exclude={"oracles"})
    _emit(
        config,
        lambda: render_csv(oracle_frame(report.oracles), comments=summary),
        lambda: flat_payload(summary, report.oracles)
    )
    _finish(report.oracles)

if __name__ == "__main__":
    main()
