"""Command-line surface: read fields, compute summaries, write text results.

Every command validates its flags into a :class:`RunConfig` first, renders its
whole result in memory and only then writes it, so a failing run leaves no
partial output behind.
"""

import logging
from typing import Callable
from typing import Dict
from typing import List

import click

from src.config import load_settings
from src.error_handlers import ErrorHandlingGroup
from src.models.field import DomainKind
from src.models.field import ScalarField
from src.models.hierarchy import Variant
from src.models.run_config import Command
from src.models.run_config import OutputFormat
from src.models.run_config import RunConfig
from src.models.run_config import build_run_config
from src.models.settings import Settings
from src.modules.analysis import combined_table
from src.modules.analysis import perturbation_experiment
from src.modules.decorators import perf_time
from src.modules.dissimilarity import Measure
from src.modules.dissimilarity import distance_matrix
from src.modules.dissimilarity import to_dense_tsv
from src.modules.dissimilarity import to_triplets
from src.modules.exporters import diagram_tsv
from src.modules.exporters import hierarchy_dot
from src.modules.exporters import hierarchy_json
from src.modules.exporters import table_tsv
from src.modules.field_core import negate
from src.modules.field_core import with_connectivity
from src.modules.field_io import load_field
from src.modules.field_io import write_field_1d
from src.modules.field_io import write_grid_vtk
from src.modules.filtration import compute_pairs
from src.modules.hierarchy import build_hierarchy
from src.modules.logging_helper import LoggingHelper
from src.modules.synthetic import oscillate_series
from src.modules.synthetic import parse_resolution
from src.modules.synthetic import parse_series
from src.modules.synthetic import synth_case

logger = logging.getLogger(__name__)


def _load_fields(cfg: RunConfig) -> List[ScalarField]:
    """Fields in flag order: input files first, then synthetic cases or the series."""
    resolution = parse_resolution(cfg.resolution)
    fields = [load_field(path, cfg.connectivity) for path in cfg.inputs]
    fields.extend(synth_case(name, resolution, cfg.samples) for name in cfg.synth)
    if cfg.series:
        steps, period = parse_series(cfg.series)
        fields.extend(oscillate_series(steps, period, resolution))
    return [with_connectivity(field, cfg.connectivity) for field in fields]


def _oriented(field: ScalarField, cfg: RunConfig) -> ScalarField:
    return negate(field) if cfg.superlevel else field


def _hierarchy(cfg: RunConfig):
    field = _oriented(_load_fields(cfg)[0], cfg)
    _, _, h = build_hierarchy(field, cfg.variant)
    # Superlevel results are reported in the original value range
    return h.negated() if cfg.superlevel else h


def render_diagram(cfg: RunConfig) -> str:
    field = _oriented(_load_fields(cfg)[0], cfg)
    diagram, _ = compute_pairs(field)
    return diagram_tsv(diagram.negated() if cfg.superlevel else diagram)


def render_hierarchy(cfg: RunConfig) -> str:
    h = _hierarchy(cfg)
    if cfg.format is OutputFormat.JSON:
        return hierarchy_json(h)
    return hierarchy_dot(h, name=h.variant.value)


def render_analysis(cfg: RunConfig) -> str:
    return table_tsv(combined_table(_hierarchy(cfg)))


def render_distmat(cfg: RunConfig) -> str:
    matrix = distance_matrix(
        _load_fields(cfg),
        measure=Measure(cfg.measure),
        exponent=cfg.q,
        indel_factor=cfg.indel_factor,
        superlevel=cfg.superlevel,
        workers=cfg.workers,
    )
    if cfg.layout == "triplets":
        return to_triplets(matrix)
    return to_dense_tsv(matrix)


def render_generate(cfg: RunConfig) -> str:
    field = synth_case(cfg.synth[0], parse_resolution(cfg.resolution), cfg.samples)
    fmt = cfg.format
    if fmt is None:
        grid = field.domain_kind is DomainKind.GRID_2D
        fmt = OutputFormat.VTK if grid else OutputFormat.TSV
    if fmt is OutputFormat.VTK:
        return write_grid_vtk(field, name=cfg.synth[0].replace(":", "_"))
    return write_field_1d(field)


def render_perturbation(cfg: RunConfig) -> str:
    results = perturbation_experiment(cfg.seed, cfg.samples)
    return "".join(
        f"{r.case}\t{r.delta!r}\t{r.threshold!r}\t{int(r.changed)}\n" for r in results
    )


RENDERERS: Dict[Command, Callable[[RunConfig], str]] = {
    Command.DIAGRAM: render_diagram,
    Command.HIERARCHY: render_hierarchy,
    Command.ANALYZE: render_analysis,
    Command.DISTMAT: render_distmat,
    Command.GENERATE: render_generate,
    Command.PERTURB: render_perturbation,
}


@perf_time(log_function=logger.info)
def execute(cfg: RunConfig) -> str:
    """Run one validated command and return its output text."""
    return RENDERERS[cfg.command](cfg)


def _settings_defaults(settings: Settings) -> dict:
    return {
        "connectivity": settings.connectivity,
        "q": settings.wasserstein_q,
        "indel_factor": settings.indel_factor,
        "resolution": settings.grid_resolution,
        "samples": settings.chain_samples,
        "seed": settings.seed,
        "workers": settings.workers,
    }


def _run(ctx: click.Context, command: Command, flags: dict) -> None:
    flags["format"] = flags.pop("format_", None)
    given = {key: value for key, value in flags.items() if value is not None}
    cfg = build_run_config(
        command=command, **{**_settings_defaults(ctx.obj), **given}
    )
    text = execute(cfg)
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as f:
            f.write(text)
        logger.info(f"Wrote {command.value} output to {cfg.output}")
    else:
        click.echo(text, nl=False)


def common_options(func):
    """Input, orientation and output flags shared by every command."""
    options = [
        click.option(
            "--input",
            "inputs",
            multiple=True,
            help="Field file: .vtk structured points or 1D text.",
        ),
        click.option("--synth", multiple=True, help="Synthetic case name."),
        click.option(
            "--mode",
            type=click.Choice(["sublevel", "superlevel"]),
            help="Filtration direction (default: sublevel).",
        ),
        click.option("--connectivity", type=int, help="Grid neighborhood, 4 or 8."),
        click.option("--resolution", help="Grid case extents as WxH."),
        click.option("--samples", type=int, help="Samples per segment of 1D cases."),
        click.option("--output", "-o", help="Output file (default: standard output)."),
        click.option(
            "--format",
            "format_",
            type=click.Choice([f.value for f in OutputFormat]),
            help="Output format.",
        ),
    ]
    for option in reversed(options):
        func = option(func)
    return func


variant_option = click.option(
    "--variant",
    type=click.Choice([v.value for v in Variant]),
    help="Hierarchy variant (default: isph).",
)


@click.group(cls=ErrorHandlingGroup)
@click.option("--env-file", help="Settings file (default: $ISPH_ENV_FILE or ./.env).")
@click.pass_context
def cli(ctx: click.Context, env_file):
    """Persistence pairs, hierarchies and distances of scalar fields."""
    settings = load_settings(env_file)
    LoggingHelper(settings)
    ctx.obj = settings


@cli.command()
@common_options
@click.pass_context
def diagram(ctx, **flags):
    """Write the persistence diagram as TSV."""
    _run(ctx, Command.DIAGRAM, flags)


@cli.command()
@common_options
@variant_option
@click.pass_context
def hierarchy(ctx, **flags):
    """Write the regular or interlevel set hierarchy as DOT or JSON."""
    _run(ctx, Command.HIERARCHY, flags)


@cli.command()
@common_options
@variant_option
@click.pass_context
def analyze(ctx, **flags):
    """Write birth, death, rank and stability of every hierarchy node."""
    _run(ctx, Command.ANALYZE, flags)


@cli.command()
@common_options
@click.option("--series", help="Synthetic series, oscillate:<steps>:<period>.")
@click.option(
    "--measure",
    type=click.Choice([m.value for m in Measure]),
    help="Distance measure (default: isph-ted).",
)
@click.option("--q", type=float, help="Wasserstein exponent.")
@click.option("--indel-factor", type=float, help="TED insert/delete cost factor.")
@click.option("--layout", type=click.Choice(["dense", "triplets"]))
@click.option("--workers", type=int, help="Worker threads for matrix cells.")
@click.pass_context
def distmat(ctx, **flags):
    """Write the pairwise distance matrix of several fields."""
    _run(ctx, Command.DISTMAT, flags)


@cli.command()
@common_options
@click.pass_context
def generate(ctx, **flags):
    """Write a synthetic case as 1D text or VTK."""
    _run(ctx, Command.GENERATE, flags)


@cli.command()
@common_options
@click.option("--seed", type=int, help="Seed of the perturbation offset.")
@click.pass_context
def perturb(ctx, **flags):
    """Raise y on the stable and unstable functions and report pairing changes."""
    _run(ctx, Command.PERTURB, flags)


def main():
    cli(prog_name="isph")
