import dataclasses
import logging
import sys
from pathlib import Path
from typing import Optional

import click
import numpy as np

from . import (
    __version__,
    data,
    entropy as entropy_,
    fitting,
    inequality as inequality_,
)
from .config import CONFIG_ENVVAR, Settings, load_settings
from .distributions.base import UnivariateModel
from .distributions.families import COMPARISON_FAMILIES, build_model
from .exceptions import (
    ConfigurationError,
    DataError,
    MathaiGiniError,
    ParameterError,
)
from .maxent import MaxEntLomax, PathwayModel
from .schemas import (
    ComparisonEngine,
    FitMethod,
    InequalityIndex,
    OutputFormat,
    ProbVector,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_NUMERIC = 3

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")


def exit_code_for(err: MathaiGiniError) -> int:
    if isinstance(err, (ParameterError, ConfigurationError)):
        return EXIT_USAGE
    if isinstance(err, DataError):
        return EXIT_DATA
    return EXIT_NUMERIC


class MathaiGiniGroup(click.Group):
    """Click group that maps usage errors to 1, data errors to 2 and numeric errors to 3."""

    def main(self, args=None, prog_name=None, complete_var=None, standalone_mode=True, **extra):
        if not standalone_mode:
            return super().main(args, prog_name, complete_var, standalone_mode, **extra)
        try:
            super().main(args, prog_name, complete_var, standalone_mode=False, **extra)
        except click.UsageError as err:
            err.show()
            sys.exit(EXIT_USAGE)
        except click.ClickException as err:
            err.show()
            sys.exit(err.exit_code)
        except click.Abort:
            click.echo("Aborted!", err=True)
            sys.exit(EXIT_USAGE)
        except MathaiGiniError as err:
            logger.debug("command failed", exc_info=err)
            click.echo(f"Error: {err}", err=True)
            sys.exit(exit_code_for(err))
        sys.exit(EXIT_OK)


@dataclasses.dataclass(frozen=True)
class CliState:
    settings: Settings
    seed: Optional[int] = None


def _state(ctx: click.Context) -> CliState:
    obj = ctx.find_object(CliState)
    return obj if obj is not None else CliState(settings=Settings())


def _emit(text: str, out: Optional[Path]) -> None:
    if out is None:
        click.echo(text, nl=False)
    else:
        data.atomic_write_text(out, text)
        logger.info(f"wrote {out}")


def _model_from_options(family: str, theta: float, nu: Optional[float]) -> UnivariateModel:
    if family == MaxEntLomax.family:
        return build_model(family, theta, nu)
    if nu is not None:
        raise click.BadParameter(f"{family} takes no --nu", param_hint="--nu")
    return build_model(family, theta)


def _grid_csv(model: UnivariateModel, points: int, xmax: float) -> str:
    if points < 2:
        raise click.BadParameter("need at least 2 grid points", param_hint="--points")
    if not xmax > 0:
        raise click.BadParameter("must be positive", param_hint="--xmax")
    x = np.linspace(0.0, xmax, points)
    density = np.asarray(model.pdf(x), dtype=float)
    distribution = np.asarray(model.cdf(x), dtype=float)
    lines = ["x,pdf,cdf"]
    lines.extend(f"{a!r},{b!r},{c!r}" for a, b, c in zip(x.tolist(), density.tolist(), distribution.tolist()))
    return "\n".join(lines) + "\n"


_family_option = click.option(
    "--family",
    type=click.Choice(COMPARISON_FAMILIES, case_sensitive=False),
    help="Registered distribution family.",
)
_out_option = click.option(
    "--out",
    type=click.Path(dir_okay=False, writable=True, path_type=Path),
    help="Write the result to this file (atomically) instead of stdout.",
)
_format_option = click.option(
    "--format",
    "output_format",
    type=click.Choice([f.value for f in OutputFormat]),
    default=OutputFormat.TEXT.value,
    show_default=True,
)
_data_option = click.option(
    "--data",
    "data_spec",
    default=data.BUILTIN_KEYWORD,
    show_default=True,
    help="CSV file with one numeric column, or 'builtin' for the loss-ratio series.",
)


@click.group(name="mathai-gini", cls=MathaiGiniGroup)
@click.version_option(__version__, prog_name="mathai-gini")
@click.option(
    "-c",
    "--config",
    "config_path",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    envvar=CONFIG_ENVVAR,
    help=f"YAML settings file, also read from ${CONFIG_ENVVAR}.",
)
@click.option("--quad-tol", type=float, help="Absolute and relative quadrature tolerance.")
@click.option("--seed", type=int, help="Seed for Monte Carlo estimates.")
@click.option("--log-level", type=click.Choice(LOG_LEVELS, case_sensitive=False))
@click.pass_context
def root(
    ctx: click.Context,
    config_path: Optional[Path],
    quad_tol: Optional[float],
    seed: Optional[int],
    log_level: Optional[str],
):
    """Mathai entropy, Gini-type inequality indices and maximum entropy fits."""
    settings = load_settings(config_path)
    if quad_tol is not None:
        settings = settings.with_quadrature_tolerance(quad_tol)
    logging.basicConfig(
        level=(log_level or settings.logging.level).upper(),
        format="%(levelname)s %(name)s: %(message)s",
    )
    ctx.obj = CliState(settings=settings, seed=seed)


@root.command()
@click.option("--alpha", type=float, required=True, help="Entropy order, below 2; 1 gives Shannon.")
@click.option("--probs", help="Comma separated probabilities summing to 1.")
@_family_option
@click.option("--theta", type=float)
@click.option("--nu", type=float, help="Gini order of the maxentlomax family.")
@click.pass_context
def entropy(ctx, alpha, probs, family, theta, nu):
    """Print Mathai's entropy of order ALPHA of a probability vector or a density."""
    if (probs is None) == (family is None):
        raise click.UsageError("give exactly one of --probs or --family")
    if probs is not None:
        try:
            weights = [float(p) for p in probs.split(",")]
        except ValueError as err:
            raise click.BadParameter(str(err), param_hint="--probs") from err
        source = ProbVector(tuple(weights))
    else:
        if theta is None:
            raise click.UsageError("--family needs --theta")
        source = _model_from_options(family.lower(), theta, nu)
    value = entropy_.entropy(source, alpha, _state(ctx).settings.quadrature)
    click.echo(repr(value))


@root.command()
@click.option(
    "--index",
    "index_name",
    type=click.Choice([i.value for i in InequalityIndex]),
    required=True,
)
@click.option("--nu", type=float, default=2.0, show_default=True, help="Order of the generalized Gini index.")
@_family_option
@click.option("--theta", type=float)
@click.option("--model-nu", type=float, help="Gini order of the maxentlomax family.")
@click.option("--data", "data_spec", help="CSV file or 'builtin'.")
@click.option("--points", type=int, default=inequality_.DEFAULT_LORENZ_POINTS, show_default=True)
@click.option("--mc-draws", type=int, help="Estimate model indices from this many Monte Carlo draws.")
@_out_option
@click.pass_context
def inequality(ctx, index_name, nu, family, theta, model_nu, data_spec, points, mc_draws, out):
    """Print an inequality index of a model or a sample; 'lorenz' emits CSV."""
    state = _state(ctx)
    quadrature = state.settings.quadrature
    index = InequalityIndex(index_name)
    if (data_spec is None) == (family is None):
        raise click.UsageError("give exactly one of --data or --family")
    if family is not None:
        if theta is None:
            raise click.UsageError("--family needs --theta")
        family = family.lower()
        if family == MaxEntLomax.family and model_nu is None:
            model_nu = state.settings.comparison.nu
        model = _model_from_options(family, theta, model_nu)
    if data_spec is not None or mc_draws is not None:
        if data_spec is not None:
            indices = inequality_.empirical_indices(data.resolve_data(data_spec), nu)
        else:
            indices = inequality_.monte_carlo_indices(
                model, nu, draws=mc_draws, seed=state.seed, lorenz_points=points
            )
        values = {
            InequalityIndex.GINI: indices.gini,
            InequalityIndex.GENERALIZED_GINI: indices.generalized_gini,
            InequalityIndex.GMD: indices.gmd,
        }
        if index == InequalityIndex.LORENZ:
            _emit(inequality_.lorenz_to_csv(indices.lorenz), out)
        else:
            _emit(f"{values[index]!r}\n", out)
        return
    if index == InequalityIndex.LORENZ:
        curve = inequality_.lorenz_curve(model, points, quadrature)
        _emit(inequality_.lorenz_to_csv(curve), out)
        return
    if index == InequalityIndex.GINI:
        value = inequality_.gini_model(model, quadrature)
    elif index == InequalityIndex.GENERALIZED_GINI:
        value = inequality_.generalized_gini_model(model, nu, quadrature)
    else:
        value = inequality_.gmd_model(model, quadrature)
    _emit(f"{value!r}\n", out)


@root.command()
@click.option(
    "--family",
    type=click.Choice(COMPARISON_FAMILIES, case_sensitive=False),
    required=True,
)
@click.option("--nu", type=float, help="Gini order, maxentlomax only.")
@_data_option
@click.option(
    "--method",
    type=click.Choice([m.value for m in FitMethod]),
    default=FitMethod.AUTO.value,
    show_default=True,
    help="'numerical' forces the likelihood search even where a closed form exists.",
)
@_format_option
@_out_option
@click.pass_context
def fit(ctx, family, nu, data_spec, method, output_format, out):
    """Fit one family by maximum likelihood and report its goodness of fit."""
    settings = _state(ctx).settings
    family = family.lower()
    if family == MaxEntLomax.family and nu is None:
        nu = settings.comparison.nu
    sample = data.resolve_data(data_spec)
    report = fitting.fit_mle(
        family, sample, nu, method=FitMethod(method), settings=settings.fitting
    )
    output_format = OutputFormat(output_format)
    if output_format == OutputFormat.JSON:
        _emit(fitting.render_json(report), out)
    elif output_format == OutputFormat.CSV:
        _emit(fitting.render_csv([report]), out)
    else:
        _emit(fitting.render_text([report]), out)


@root.command()
@click.option("--nu", type=float, help="Gini order of the maxentlomax family [default: 3].")
@_data_option
@click.option("--engine", type=click.Choice([e.value for e in ComparisonEngine]))
@_format_option
@_out_option
@click.pass_context
def compare(ctx, nu, data_spec, engine, output_format, out):
    """Fit every family and rank them by AIC."""
    settings = _state(ctx).settings
    nu = settings.comparison.nu if nu is None else nu
    engine = ComparisonEngine(engine) if engine else settings.comparison.engine
    sample = data.resolve_data(data_spec)
    if engine == ComparisonEngine.PREFECT:
        from .flows import compare_families_flow

        reports = compare_families_flow(sample, nu, settings.fitting)
    else:
        reports = fitting.compare_all(sample, nu, settings.fitting)
    output_format = OutputFormat(output_format)
    if output_format == OutputFormat.JSON:
        document = fitting.comparison_report(sample, nu, reports)
        _emit(fitting.render_json(document), out)
    elif output_format == OutputFormat.CSV:
        _emit(fitting.render_csv(reports), out)
    else:
        _emit(fitting.render_text(reports), out)


@root.command()
@click.option("--alpha", type=float, required=True, help="Pathway parameter; 1 gives the gamma limit.")
@click.option("--a", "a", type=float, required=True)
@click.option("--delta", type=float, required=True)
@click.option("--gamma", type=float, required=True)
@click.option("--grid", "points", type=int, default=101, show_default=True)
@click.option("--xmax", type=float, required=True)
@_out_option
@click.pass_context
def pathway(ctx, alpha, a, delta, gamma, points, xmax, out):
    """Emit the pathway density and CDF on a grid of [0, XMAX] as CSV."""
    quadrature = _state(ctx).settings.quadrature
    if alpha == 1:
        model = PathwayModel.gamma_limit(a, delta, gamma, quadrature)
    else:
        model = PathwayModel(a, delta, gamma, alpha, quadrature)
    _emit(_grid_csv(model, points, xmax), out)


@root.command()
@click.option(
    "--family",
    type=click.Choice(COMPARISON_FAMILIES, case_sensitive=False),
    required=True,
)
@click.option("--theta", type=float, required=True)
@click.option("--nu", type=float, help="Gini order, maxentlomax only.")
@click.option("--points", type=int, default=101, show_default=True)
@click.option("--xmax", type=float, required=True)
@_out_option
def grid(family, theta, nu, points, xmax, out):
    """Emit the density and CDF of a registered family on a grid of [0, XMAX] as CSV."""
    model = _model_from_options(family.lower(), theta, nu)
    _emit(_grid_csv(model, points, xmax), out)
