"""Command-line interface: corpus indexing and validation, planning,
expansion, and the HTTP server."""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import wire
from .engine import (
    PlannerConfig,
    backward_navigate,
    conceptual_expansion,
    forward_navigate,
    template_instantiate,
)
from .errors import ConceptNavError, ParseError
from .graphs import graph_to_text
from .ontology import Ontology
from .store import ResourceStore, SelectionUnit, has_errors, load_corpus, validate_rd


def _load(directory: str, need_ontology: bool = True) -> tuple[Ontology, ResourceStore]:
    ontology, store = load_corpus(directory)
    if ontology is None and need_ontology:
        raise ParseError(f"no ontology document found under {directory}")
    return ontology, store


def _config(unit: str, max_backtracks: int, backtrack_relaxed: bool, expansion_limit: int) -> PlannerConfig:
    return PlannerConfig(
        max_backtracks=max_backtracks,
        backtrack_relaxed=backtrack_relaxed,
        selection_unit=SelectionUnit(unit),
        expansion_limit=expansion_limit,
    )


@click.group()
def main() -> None:
    """Conceptual navigation over ontology-indexed resources."""


@main.command()
@click.argument("directory", type=click.Path(exists=True, file_okay=False))
def validate(directory: str) -> None:
    """Parse a corpus and check every description against its ontology."""
    try:
        ontology, store = _load(directory)
    except ConceptNavError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    failed = False
    for rd in store.list():
        diags = validate_rd(rd, ontology)
        if not diags:
            click.echo(f"{rd.id}: ok")
            continue
        failed = failed or has_errors(diags)
        for d in diags:
            where = d.csv_name or "-"
            index = "-" if d.entry_index is None else str(d.entry_index)
            click.echo(f"{rd.id}: {d.severity} {d.code} [{where}:{index}] {d.message}")
    click.echo(f"{len(store)} resources checked")
    sys.exit(1 if failed else 0)


@main.command()
@click.argument("directory", type=click.Path(exists=True, file_okay=False))
@click.option("--json", "as_json", is_flag=True, help="machine-readable output")
def index(directory: str, as_json: bool) -> None:
    """Scan a corpus directory and print the resulting index."""
    try:
        ontology, store = _load(directory, need_ontology=False)
    except ConceptNavError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    if as_json:
        payload = {
            "ontology": wire.ontology_to_json(ontology) if ontology else None,
            "resources": [wire.rd_to_json(rd) for rd in store.list()],
        }
        click.echo(json.dumps(payload, indent=2))
        return
    if ontology is not None:
        click.echo(
            f"ontology {ontology.uri}: {len(ontology.types)} types,"
            f" {len(ontology.signatures)} signatures"
        )
    for rd in store.list():
        segs = f", {len(rd.segments)} segments" if rd.segments else ""
        click.echo(
            f"{rd.id}: {rd.title!r} {rd.time_value} min,"
            f" {len(rd.content)} content graphs{segs}"
        )
    click.echo(f"{len(store)} resources indexed")


@main.command()
@click.option("--corpus", required=True, type=click.Path(exists=True, file_okay=False))
@click.option("--profile", "profile_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--strategy", type=click.Choice(["backward", "forward", "template"]), default="backward")
@click.option("--start-id", default=None, help="first resource for the forward strategy")
@click.option("--template", "template_path", default=None, type=click.Path(exists=True, dir_okay=False))
@click.option("--unit", type=click.Choice(["resource", "segment"]), default="resource")
@click.option("--max-backtracks", default=100, show_default=True)
@click.option("--backtrack-relaxed", is_flag=True)
@click.option("--expansion-limit", default=10, show_default=True)
@click.option("--json", "as_json", is_flag=True, help="machine-readable output")
def plan(
    corpus: str,
    profile_path: str,
    strategy: str,
    start_id: str | None,
    template_path: str | None,
    unit: str,
    max_backtracks: int,
    backtrack_relaxed: bool,
    expansion_limit: int,
    as_json: bool,
) -> None:
    """Build a course plan for a learner profile file (JSON)."""
    try:
        ontology, store = _load(corpus)
        profile = wire.profile_from_json(
            json.loads(Path(profile_path).read_text(encoding="utf-8"))
        )
        config = _config(unit, max_backtracks, backtrack_relaxed, expansion_limit)
        if strategy == "backward":
            result = backward_navigate(profile, store, ontology, config)
        elif strategy == "forward":
            if not start_id:
                raise click.UsageError("--start-id is required for the forward strategy")
            if profile.time_budget is None:
                raise click.UsageError("forward strategy needs a bounded time_budget")
            result = forward_navigate(start_id, store, ontology, profile.time_budget, config)
        else:
            if not template_path:
                raise click.UsageError("--template is required for the template strategy")
            data = json.loads(Path(template_path).read_text(encoding="utf-8"))
            segments = data["segments"] if isinstance(data, dict) else data
            template = [wire.vector_from_json(seg) for seg in segments]
            result = template_instantiate(template, profile, store, ontology, config)
    except ConceptNavError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)

    if as_json:
        click.echo(json.dumps(wire.plan_to_json(result, store), indent=2))
        return
    click.echo(f"status: {result.status.value}")
    click.echo(f"total time: {result.total_time} min (within budget: {result.within_budget})")
    for step in result.steps:
        cand = store.resolve(step.candidate_id)
        click.echo(
            f"  {step.candidate_id}: {cand.title!r}"
            f" ({step.time_value} min, cp {step.cp_at_selection:.4f})"
        )
    if not result.residual_objective.is_empty:
        click.echo("uncovered objective:")
        for entry in result.residual_objective:
            click.echo(f"  {graph_to_text(entry.graph)}")
    for warning in result.warnings:
        click.echo(f"warning: {warning}")


@main.command()
@click.argument("candidate_id")
@click.option("--corpus", required=True, type=click.Path(exists=True, file_okay=False))
@click.option("--limit", default=10, show_default=True)
@click.option("--json", "as_json", is_flag=True)
def expand(candidate_id: str, corpus: str, limit: int, as_json: bool) -> None:
    """List resources conceptually related to a candidate."""
    try:
        ontology, store = _load(corpus)
        ranked = conceptual_expansion(candidate_id, store, ontology, limit)
    except ConceptNavError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    if as_json:
        click.echo(
            json.dumps(
                [
                    {"id": r.candidate_id, "cp": r.cp, "time": r.time_value}
                    for r in ranked
                ],
                indent=2,
            )
        )
        return
    for r in ranked:
        cand = store.resolve(r.candidate_id)
        click.echo(f"{r.candidate_id}: {cand.title!r} (cp {r.cp:.4f}, {r.time_value} min)")
    if not ranked:
        click.echo("no related material")


@main.command()
@click.option("--corpus", required=True, type=click.Path(exists=True, file_okay=False))
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True)
@click.option("--sessions-file", default=None, type=click.Path(dir_okay=False))
@click.option("--unit", type=click.Choice(["resource", "segment"]), default="resource")
@click.option("--expansion-limit", default=10, show_default=True)
@click.option(
    "--ui",
    "ui_dir",
    default=None,
    type=click.Path(exists=True, file_okay=False),
    help="serve a built learner UI directory at /ui",
)
def serve(
    corpus: str,
    host: str,
    port: int,
    sessions_file: str | None,
    unit: str,
    expansion_limit: int,
    ui_dir: str | None,
) -> None:
    """Run the session HTTP service."""
    import uvicorn

    from .service import create_app

    try:
        ontology, store = _load(corpus)
    except ConceptNavError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    config = _config(unit, 100, False, expansion_limit)
    app = create_app(ontology, store, config, sessions_file, ui_dir=ui_dir)
    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
