import logging
from contextlib import contextmanager
from enum import Enum
from pathlib import Path
from typing import List, Optional

import click
import typer

from Database.get_reports_db import get_reports_db, store_reports
from utils import constants
from utils.certificates import APEX_FOREST, PatternSpec, verify_minor_model, verify_tree_decomposition
from utils.config import load_settings
from utils.errors import InputError, ProofInvariantError
from utils.formats import (
    emit_minor_model,
    parse_decomposition,
    parse_graph,
    parse_minor_model,
)
from utils.harness import bag_limit, decompose, run_family, serialize_outcome
from utils.logger import configure_logging
from utils.oracles import GraphFamily, exact_minor_test, exact_treewidth, treewidth_branch_and_bound

logger = logging.getLogger(__name__)

FORMAT_HELP = (
    "edgelist: 'n m' header then one 0-indexed 'u v' pair per line; "
    "graph6: standard 6-bit encoding. Written .td files are 1-indexed."
)


class GraphFormat(str, Enum):
    edgelist = "edgelist"
    graph6 = "graph6"


class PatternKind(str, Enum):
    apex_forest = "apex-forest"
    wheel = "wheel"


class FuzzMode(str, Enum):
    exhaustive = "exhaustive"
    gnp = "gnp"


class TreewidthMethod(str, Enum):
    dp = "dp"
    bb = "bb"


# Create the routers
cli_router = typer.Typer(
    name="minorcert",
    help="Certifying tree-decompositions and minor models for apex-forest and wheel patterns.",
    no_args_is_help=True,
    pretty_exceptions_enable=False,
)
verify_router = typer.Typer(help="Check a certificate against a graph.", no_args_is_help=True)
oracle_router = typer.Typer(help="Exact oracles for small graphs.", no_args_is_help=True)
cli_router.add_typer(verify_router, name="verify")
cli_router.add_typer(oracle_router, name="oracle")


@contextmanager
def exit_codes():
    """Map toolkit errors onto the command-line exit codes."""
    try:
        yield
    except InputError as exc:
        typer.echo(f"error: {exc}", err=True)
        raise typer.Exit(constants.EXIT_INPUT_ERROR)
    except ProofInvariantError as exc:
        typer.echo(f"proof invariant failed: {exc}", err=True)
        raise typer.Exit(constants.EXIT_VERIFICATION_FAILED)


def read_graph(path, format):
    return parse_graph(Path(path).read_text(), format.value)


def resolve_pattern(pattern, forest, k):
    if pattern == PatternKind.apex_forest:
        if forest is None:
            raise InputError("--pattern apex-forest needs --forest <file>")
        tree = parse_graph(Path(forest).read_text())
        return PatternSpec.apex_forest(tree.edges(), order=tree.num_vertices)
    return PatternSpec.wheel(k)


def parse_cycle(text):
    if text is None:
        return None
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise InputError(f"--cycle must be comma-separated integers, got {text!r}") from None


def default_out(graph_path, suffix):
    path = Path(graph_path)
    return path.with_name(path.stem + suffix)


def report_verdict(verdict):
    if verdict:
        typer.echo("valid")
        return
    typer.echo(f"invalid: {verdict.rule}: {verdict.message} (witness {verdict.witness})")
    raise typer.Exit(constants.EXIT_VERIFICATION_FAILED)


@cli_router.callback()
def global_options(
    ctx: typer.Context,
    config: Optional[Path] = typer.Option(
        None, "--config", help=f"key=value settings file (default: ${constants.CONFIG_ENV_VAR})"
    ),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Log at DEBUG level."),
):
    with exit_codes():
        settings = load_settings(config)
    configure_logging("DEBUG" if verbose else settings.log_level)
    ctx.obj = settings


@cli_router.command("decompose")
def decompose_command(
    graph: Path = typer.Argument(..., exists=True, dir_okay=False, help=FORMAT_HELP),
    pattern: PatternKind = typer.Option(..., "--pattern"),
    forest: Optional[Path] = typer.Option(None, "--forest", exists=True, dir_okay=False),
    k: int = typer.Option(3, "-k", "--k"),
    cycle: Optional[str] = typer.Option(None, "--cycle", help="Root cycle as v1,v2,... (wheel only)."),
    format: GraphFormat = typer.Option(GraphFormat.edgelist, "--format"),
    out: Optional[Path] = typer.Option(None, "--out"),
):
    """Write a verified tree-decomposition or minor model for GRAPH."""
    with exit_codes():
        host = read_graph(graph, format)
        spec = resolve_pattern(pattern, forest, k)
        root = parse_cycle(cycle)
        if root is not None and spec.kind == APEX_FOREST:
            raise InputError("--cycle only applies to --pattern wheel")
        outcome = decompose(host, spec, cycle=root)
        verdict = outcome.verify(host, pattern=spec.resolved, max_bag=bag_limit(spec))
        if not verdict:
            raise ProofInvariantError(f"certificate rejected ({verdict.rule}): {verdict.message}")

        suffix = constants.TD_SUFFIX if outcome.kind == "decomposition" else constants.MINOR_SUFFIX
        target = out or default_out(graph, suffix)
        target.write_text(serialize_outcome(outcome, host))

    if outcome.kind == "decomposition":
        d = outcome.decomposition
        typer.echo(f"decomposition {spec.describe()}: {len(d)} bags, max bag {d.max_bag} -> {target}")
    else:
        typer.echo(f"minor {spec.describe()} -> {target}")


@verify_router.command("td")
def verify_td(
    graph: Path = typer.Argument(..., exists=True, dir_okay=False),
    decomposition: Path = typer.Argument(..., exists=True, dir_okay=False),
    format: GraphFormat = typer.Option(GraphFormat.edgelist, "--format"),
    max_bag: Optional[int] = typer.Option(None, "--max-bag"),
):
    """Check a .td file against GRAPH."""
    with exit_codes():
        host = read_graph(graph, format)
        td, n = parse_decomposition(decomposition.read_text())
        if n != host.num_vertices:
            raise InputError(f".td declares {n} vertices, graph has {host.num_vertices}")
        verdict = verify_tree_decomposition(host, td, max_bag=max_bag)
    report_verdict(verdict)


@verify_router.command("minor")
def verify_minor(
    graph: Path = typer.Argument(..., exists=True, dir_okay=False),
    model: Path = typer.Argument(..., exists=True, dir_okay=False),
    format: GraphFormat = typer.Option(GraphFormat.edgelist, "--format"),
):
    """Check a JSON minor model against GRAPH."""
    with exit_codes():
        host = read_graph(graph, format)
        verdict = verify_minor_model(host, parse_minor_model(model.read_text()))
    report_verdict(verdict)


@oracle_router.command("treewidth")
def oracle_treewidth(
    graphs: List[Path] = typer.Argument(..., exists=True, dir_okay=False),
    format: GraphFormat = typer.Option(GraphFormat.edgelist, "--format"),
    method: TreewidthMethod = typer.Option(TreewidthMethod.dp, "--method"),
):
    """Exact tree-width of each graph."""
    settings = click.get_current_context().find_root().obj
    with exit_codes():
        for path in graphs:
            graph = read_graph(path, format)
            if method == TreewidthMethod.dp:
                tw = exact_treewidth(graph, limit=settings.treewidth_limit).width
            else:
                tw = treewidth_branch_and_bound(graph, limit=settings.treewidth_limit)
            typer.echo(f"{path}: treewidth {tw}")


@oracle_router.command("minor")
def oracle_minor(
    graph: Path = typer.Argument(..., exists=True, dir_okay=False),
    pattern: Path = typer.Argument(..., exists=True, dir_okay=False, help="Pattern graph as an edge list."),
    format: GraphFormat = typer.Option(GraphFormat.edgelist, "--format"),
    out: Optional[Path] = typer.Option(None, "--out"),
):
    """Decide whether PATTERN is a minor of GRAPH."""
    settings = click.get_current_context().find_root().obj
    with exit_codes():
        host = read_graph(graph, format)
        h = parse_graph(pattern.read_text())
        model = exact_minor_test(host, h, limit=settings.minor_limit)
    if model is None:
        typer.echo(f"{graph}: absent")
        return
    if out is not None:
        out.write_text(emit_minor_model(model))
    typer.echo(f"{graph}: present")


@cli_router.command("fuzz")
def fuzz_command(
    mode: FuzzMode = typer.Option(FuzzMode.exhaustive, "--mode"),
    n: Optional[int] = typer.Option(None, "--n"),
    p: Optional[float] = typer.Option(None, "--p"),
    seeds: Optional[int] = typer.Option(None, "--seeds"),
    pattern: PatternKind = typer.Option(..., "--pattern"),
    k: int = typer.Option(3, "-k", "--k"),
    forest: Optional[Path] = typer.Option(None, "--forest", exists=True, dir_okay=False),
    max_oracle_n: Optional[int] = typer.Option(None, "--max-oracle-n"),
    out: Optional[Path] = typer.Option(None, "--out", help="Write reports as JSON lines."),
    cert_dir: Optional[Path] = typer.Option(None, "--cert-dir", file_okay=False),
    db: Optional[str] = typer.Option(None, "--db", help="SQLAlchemy URL to store reports."),
    quiet: bool = typer.Option(False, "--quiet", "-q"),
):
    """Run the decomposer over every connected graph on n vertices or over seeded G(n, p)."""
    settings = click.get_current_context().find_root().obj
    overrides = {
        key: value
        for key, value in (("fuzz_n", n), ("fuzz_p", p), ("fuzz_seeds", seeds), ("max_oracle_n", max_oracle_n))
        if value is not None
    }
    settings = settings.model_copy(update=overrides)

    with exit_codes():
        spec = resolve_pattern(pattern, forest, k)
        if mode == FuzzMode.exhaustive:
            family = GraphFamily("exhaustive", settings.fuzz_n)
        else:
            family = GraphFamily("gnp", settings.fuzz_n, p=settings.fuzz_p, seeds=tuple(range(settings.fuzz_seeds)))
        reports = run_family(family, spec, settings=settings, out_dir=cert_dir, progress=not quiet)

        if out is not None:
            out.write_text("".join(r.model_dump_json() + "\n" for r in reports))
        url = db or settings.report_db_url
        if url:
            for session in get_reports_db(url):
                store_reports(session, reports)

    failed = [r for r in reports if not r.passed]
    for report in failed:
        typer.echo(f"FAILED {report.instance_id} {report.graph6}: {report.error or 'check failed'}")
    typer.echo(f"{len(reports)} instances, {len(failed)} failed")
    if failed:
        raise typer.Exit(constants.EXIT_VERIFICATION_FAILED)
