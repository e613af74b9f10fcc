"""Command line interface for wboxdim."""
from __future__ import annotations

from contextlib import contextmanager
from dataclasses import replace
from pathlib import Path
from typing import Iterator, Optional

import typer

from . import constants
from .bounds import verify_theorem
from .boxcount import estimate_dimension
from .errors import InvalidInput, WboxdimError
from .ifs import build_v_m, polygons, printed_vertex_count
from .logging_utils import configure_logging, get_logger
from .models import ReportEnvelope, RunConfig, load_config_file
from .parameters import (
    box_dimension,
    degenerate_j,
    display_parameters,
    lower_bound_constants,
    scale_factor,
)
from .reports import (
    bounds_payload,
    boxdim_csv,
    envelope_json,
    oscillation_csv,
    polygons_csv,
    polygons_payload,
    summary_line,
    vertices_csv,
    write_text,
    write_with_sidecar,
)
from .series import oscillation
from .settings import Settings, SettingsStore
from .svg import render_plot
from .utils import console, format_real, info_table

app = typer.Typer(help="Prefractal graphs, increment bounds and box dimension of the Weierstrass function")
LOGGER = get_logger(__name__)

LAMBDA_OPTION = typer.Option(None, "--lambda", help="Contraction ratio lambda in (0, 1)")
NB_OPTION = typer.Option(None, "--nb", help="Base N_b >= 3 with lambda * N_b > 1")
M_OPTION = typer.Option(None, "--m", help="Prefractal level")
TOL_OPTION = typer.Option(None, "--tol", help="Series truncation tolerance")
BUDGET_OPTION = typer.Option(None, "--budget", help="Size budget for the construction")
SEED_OPTION = typer.Option(None, "--seed", help="Seed for sampled verification")
OUT_OPTION = typer.Option(None, "--out", help="Output file (stdout when omitted)")
FORMAT_OPTION = typer.Option(None, "--format", help="csv, json or svg")
CONFIG_OPTION = typer.Option(None, "--config", help="key=value file merged under the flags")
VERBOSE_OPTION = typer.Option(False, "--verbose", help="Enable debug logging")


class AppState:
    def __init__(self, assume_yes: bool = False) -> None:
        self.console = console
        self.store = SettingsStore()
        self.settings: Settings = self.store.load()
        self.assume_yes = assume_yes


@app.callback()
def callback(
    ctx: typer.Context,
    verbose: bool = VERBOSE_OPTION,
    yes: bool = typer.Option(False, "--yes", "-y", help="Overwrite existing output files without asking"),
) -> None:
    configure_logging(verbose)
    ctx.obj = AppState(assume_yes=yes)


@contextmanager
def _reported_errors() -> Iterator[None]:
    try:
        yield
    except WboxdimError as exc:
        LOGGER.debug("Command failed", exc_info=True)
        typer.echo(exc.diagnostic(), err=True)
        raise typer.Exit(code=exc.exit_code)


def _raise_verbosity(verbose: bool) -> None:
    if verbose:
        configure_logging(verbose=True)


def _budget(config: RunConfig, default: int) -> int:
    return default if config.budget is None else config.budget


def _run_config(config_path: Optional[Path], **flags: object) -> RunConfig:
    config = RunConfig()
    if config_path is not None:
        config = config.merged(load_config_file(config_path))
    return config.merged(flags)


def _output_format(config: RunConfig, default: str, allowed: tuple) -> str:
    fmt = config.format or default
    if fmt not in allowed:
        raise InvalidInput(f"--format must be one of {', '.join(allowed)} here, got {fmt!r}")
    return fmt


def _emit(state: AppState, config: RunConfig, text: str, fmt: str, payload: object) -> None:
    """CSV goes out with a metadata sidecar; JSON carries its own envelope."""

    if config.out is None:
        typer.echo(text, nl=False)
    elif fmt == "csv":
        write_with_sidecar(Path(config.out), text, ReportEnvelope.wrap(config, payload), state.assume_yes)
    else:
        write_text(Path(config.out), text, state.assume_yes)


@app.command()
def params(
    ctx: typer.Context,
    lam: Optional[float] = LAMBDA_OPTION,
    n_b: Optional[int] = NB_OPTION,
    reading: Optional[str] = typer.Option(None, "--reading", help="printed or non-degenerate"),
    out: Optional[str] = OUT_OPTION,
    fmt: Optional[str] = FORMAT_OPTION,
    config_path: Optional[Path] = CONFIG_OPTION,
    verbose: bool = VERBOSE_OPTION,
) -> None:
    """Show D_W, the bound constants and their signs."""

    state: AppState = ctx.obj
    _raise_verbosity(verbose)
    with _reported_errors():
        config = _run_config(config_path, lam=lam, n_b=n_b, reading=reading, out=out, format=fmt)
        p = config.params()
        bound_constants = lower_bound_constants(p, config.reading_mode)
        output = _output_format(config, "table", ("table", "json"))
        if output == "table":
            display_parameters(p, bound_constants)
            state.console.print(f"L_1 scale: {format_real(scale_factor(p, 1))}")
            return
        payload = {
            "params": p.to_dict(),
            "d_w": box_dimension(p).d_w,
            "constants": bound_constants.to_dict(),
            "degenerate_j": degenerate_j(p),
            "scale_l1": scale_factor(p, 1),
        }
        _emit(state, config, envelope_json(ReportEnvelope.wrap(config, payload)), "json", payload)


@app.command()
def vertices(
    ctx: typer.Context,
    lam: Optional[float] = LAMBDA_OPTION,
    n_b: Optional[int] = NB_OPTION,
    m: Optional[int] = M_OPTION,
    budget: Optional[int] = BUDGET_OPTION,
    out: Optional[str] = OUT_OPTION,
    fmt: Optional[str] = FORMAT_OPTION,
    config_path: Optional[Path] = CONFIG_OPTION,
    verbose: bool = VERBOSE_OPTION,
) -> None:
    """List the vertices of Gamma_{W_m} sorted by abscissa."""

    state: AppState = ctx.obj
    _raise_verbosity(verbose)
    with _reported_errors():
        config = _run_config(config_path, lam=lam, n_b=n_b, m=m, budget=budget, out=out, format=fmt)
        p = config.params()
        level = config.level(constants.DEFAULT_VERTEX_LEVEL)
        vertex_set = build_v_m(p, level, _budget(config, state.settings.vertex_budget))
        LOGGER.info(
            "V_%d has %d vertices; the printed count formula gives %d",
            level,
            len(vertex_set),
            printed_vertex_count(p, level),
        )
        output = _output_format(config, "csv", ("csv", "json"))
        meta = {"level": level, "vertex_count": len(vertex_set)}
        if output == "csv":
            _emit(state, config, vertices_csv(vertex_set), "csv", meta)
            return
        payload = [
            {
                "index": index,
                "x": float(vertex_set.xs[index]),
                "y": float(vertex_set.ys[index]),
                "word": vertex_set.word_at(index).encode(p.n_b),
                "j": int(vertex_set.js[index]),
            }
            for index in range(len(vertex_set))
        ]
        _emit(state, config, envelope_json(ReportEnvelope.wrap(config, payload)), "json", payload)


@app.command("polygons")
def polygons_command(
    ctx: typer.Context,
    lam: Optional[float] = LAMBDA_OPTION,
    n_b: Optional[int] = NB_OPTION,
    m: Optional[int] = M_OPTION,
    budget: Optional[int] = BUDGET_OPTION,
    out: Optional[str] = OUT_OPTION,
    fmt: Optional[str] = FORMAT_OPTION,
    config_path: Optional[Path] = CONFIG_OPTION,
    verbose: bool = VERBOSE_OPTION,
) -> None:
    """List the N_b^m cell polygons in word order."""

    state: AppState = ctx.obj
    _raise_verbosity(verbose)
    with _reported_errors():
        config = _run_config(config_path, lam=lam, n_b=n_b, m=m, budget=budget, out=out, format=fmt)
        p = config.params()
        level = config.level(constants.DEFAULT_POLYGON_LEVEL)
        items = polygons(p, level, _budget(config, state.settings.vertex_budget))
        output = _output_format(config, "csv", ("csv", "json"))
        if output == "csv":
            _emit(state, config, polygons_csv(items, p.n_b), "csv", {"level": level, "polygons": len(items)})
            return
        payload = polygons_payload(items, p.n_b)
        _emit(state, config, envelope_json(ReportEnvelope.wrap(config, payload)), "json", payload)


@app.command("verify-bounds")
def verify_bounds(
    ctx: typer.Context,
    lam: Optional[float] = LAMBDA_OPTION,
    n_b: Optional[int] = NB_OPTION,
    m: Optional[int] = M_OPTION,
    budget: Optional[int] = BUDGET_OPTION,
    seed: Optional[int] = SEED_OPTION,
    reading: Optional[str] = typer.Option(None, "--reading", help="printed or non-degenerate"),
    out: Optional[str] = OUT_OPTION,
    config_path: Optional[Path] = CONFIG_OPTION,
    verbose: bool = VERBOSE_OPTION,
) -> None:
    """Check lower <= |h_(j,m)| <= upper; exit 1 on any violation."""

    state: AppState = ctx.obj
    _raise_verbosity(verbose)
    with _reported_errors():
        config = _run_config(
            config_path, lam=lam, n_b=n_b, m=m, budget=budget, seed=seed, reading=reading, out=out
        )
        p = config.params()
        level = config.level(constants.DEFAULT_VERIFY_LEVEL)
        report = verify_theorem(
            p,
            level,
            budget=_budget(config, state.settings.verify_budget),
            seed=config.seed,
            reading=config.reading_mode,
            settings=state.settings,
        )
        payload = bounds_payload(report, p.n_b)
        _emit(state, config, envelope_json(ReportEnvelope.wrap(config, payload)), "json", payload)
        if config.out is not None:
            info_table(
                f"Increment bounds at m={level}",
                [
                    ("Pairs checked", str(report.pairs_checked)),
                    ("Exhaustive", str(report.exhaustive)),
                    ("Lower violations", str(report.violations_lower)),
                    ("Upper violations", str(report.violations_upper)),
                    ("Lower side skipped", str(report.skipped_nonpositive_lower)),
                    ("Decomposition residual", format_real(report.max_decomposition_residual)),
                ],
            )
    if not report.passed:
        LOGGER.warning(
            "%d lower and %d upper violations at m=%d",
            report.violations_lower,
            report.violations_upper,
            level,
        )
        raise typer.Exit(code=1)


@app.command()
def boxdim(
    ctx: typer.Context,
    lam: Optional[float] = LAMBDA_OPTION,
    n_b: Optional[int] = NB_OPTION,
    m_min: Optional[int] = typer.Option(None, "--m-min", help="Finest-scale range start"),
    m_max: Optional[int] = typer.Option(None, "--m-max", help="Finest-scale range end"),
    tol: Optional[float] = TOL_OPTION,
    budget: Optional[int] = BUDGET_OPTION,
    out: Optional[str] = OUT_OPTION,
    fmt: Optional[str] = FORMAT_OPTION,
    config_path: Optional[Path] = CONFIG_OPTION,
    verbose: bool = VERBOSE_OPTION,
) -> None:
    """Box counts at eps = L_m and the fitted log-log slope."""

    state: AppState = ctx.obj
    _raise_verbosity(verbose)
    with _reported_errors():
        config = _run_config(
            config_path,
            lam=lam,
            n_b=n_b,
            m_min=m_min,
            m_max=m_max,
            tol=tol,
            budget=budget,
            out=out,
            format=fmt,
        )
        p = config.params()
        settings = replace(state.settings, box_tolerance=config.tol)
        if config.budget is not None:
            settings = replace(settings, vertex_budget=config.budget)
        result = estimate_dimension(p, config.m_min, config.m_max, settings=settings)
        d_w = box_dimension(p).d_w
        output = _output_format(config, "csv", ("csv", "json"))
        payload = dict(result.to_dict(), d_w=d_w)
        if output == "csv":
            _emit(state, config, boxdim_csv(result), "csv", payload)
        else:
            _emit(state, config, envelope_json(ReportEnvelope.wrap(config, payload)), "json", payload)
        typer.echo(summary_line(result, d_w))


@app.command()
def plot(
    ctx: typer.Context,
    lam: Optional[float] = LAMBDA_OPTION,
    n_b: Optional[int] = NB_OPTION,
    m: Optional[int] = M_OPTION,
    show_polygons: Optional[bool] = typer.Option(None, "--polygons/--no-polygons", help="Overlay the cell polygons"),
    out: Optional[str] = OUT_OPTION,
    fmt: Optional[str] = FORMAT_OPTION,
    config_path: Optional[Path] = CONFIG_OPTION,
    verbose: bool = VERBOSE_OPTION,
) -> None:
    """SVG of Gamma_{W_0} .. Gamma_{W_m} over a high-level proxy of Gamma_W."""

    state: AppState = ctx.obj
    _raise_verbosity(verbose)
    with _reported_errors():
        config = _run_config(
            config_path, lam=lam, n_b=n_b, m=m, polygons=show_polygons, out=out, format=fmt
        )
        p = config.params()
        _output_format(config, "svg", ("svg",))
        metadata = dict(config.to_dict(), tool_version=constants.TOOL_VERSION)
        text = render_plot(
            p,
            config.level(constants.DEFAULT_PLOT_LEVEL),
            metadata=metadata,
            show_polygons=config.polygons,
            settings=state.settings,
        )
        _emit(state, config, text, "svg", metadata)


@app.command("oscillation")
def oscillation_command(
    ctx: typer.Context,
    lam: Optional[float] = LAMBDA_OPTION,
    n_b: Optional[int] = NB_OPTION,
    x1: Optional[float] = typer.Option(None, "--x1", help="Left end of the interval"),
    x2: Optional[float] = typer.Option(None, "--x2", help="Right end of the interval"),
    samples: Optional[int] = typer.Option(None, "--samples", help="Initial number of samples"),
    tol: Optional[float] = TOL_OPTION,
    out: Optional[str] = OUT_OPTION,
    fmt: Optional[str] = FORMAT_OPTION,
    config_path: Optional[Path] = CONFIG_OPTION,
    verbose: bool = VERBOSE_OPTION,
) -> None:
    """Sampled oscillation of W over [x1, x2]."""

    state: AppState = ctx.obj
    _raise_verbosity(verbose)
    with _reported_errors():
        config = _run_config(
            config_path,
            lam=lam,
            n_b=n_b,
            x1=x1,
            x2=x2,
            samples=samples,
            tol=tol,
            out=out,
            format=fmt,
        )
        p = config.params()
        estimate = oscillation(p, config.x1, config.x2, config.samples, config.tol, settings=state.settings)
        output = _output_format(config, "json", ("csv", "json"))
        payload = estimate.to_dict()
        if output == "csv":
            _emit(state, config, oscillation_csv(estimate), "csv", payload)
        else:
            _emit(state, config, envelope_json(ReportEnvelope.wrap(config, payload)), "json", payload)


@app.command("settings")
def settings_command(
    ctx: typer.Context,
    save: bool = typer.Option(False, "--save", help="Write the settings in effect to the settings file"),
    verbose: bool = VERBOSE_OPTION,
) -> None:
    """Show the budgets and sampling depths in effect."""

    state: AppState = ctx.obj
    _raise_verbosity(verbose)
    info_table(
        f"Settings from {state.store.path}",
        [(key, str(value)) for key, value in state.settings.to_dict().items()],
    )
    if save:
        state.store.save(state.settings)
        LOGGER.info("Saved settings to %s", state.store.path)


def main() -> None:  # pragma: no cover
    app()


if __name__ == "__main__":  # pragma: no cover
    main()
