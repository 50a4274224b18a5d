#!/usr/bin/env python3
"""
strata-atlas - boundary points, equatorial nets and component counts of
one-dimensional generalized strata.

Usage:
    python main.py dim "1,1 | -2 | -1,-1"
    python main.py verify --family B --max-pole-sum 10 --jobs 4
"""
import json
import logging
import sys
from pathlib import Path
from typing import Optional

# Add project root to path for imports
PROJECT_ROOT = Path(__file__).parent
sys.path.insert(0, str(PROJECT_ROOT))

import click

from core import (
    AtlasError,
    EventType,
    Family,
    ParseError,
    UnsupportedFamily,
    ValidationError,
    build_net,
    classify_one_dim,
    dimension,
    enumerate_boundaries,
    get_family_manager,
    parse_signature,
    probe_conjecture,
    sweep,
)
from core.event_bus import SweepProgress, event_bus, forward_logs
from core.invariants import all_component_invariants
from core.net import export_dot, export_json
from core.settings import load_settings, save_settings
from core.verify import SweepReport, configure_engine, verify_stratum

log = logging.getLogger("strata_atlas")

EXIT_MISMATCH = 1
EXIT_INPUT_ERROR = 2


class InputError(click.ClickException):
    """Malformed or unsupported command line input."""
    exit_code = EXIT_INPUT_ERROR


def setup_logging(level: str) -> None:
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.INFO),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    for event_type in (EventType.LOG_DEBUG, EventType.LOG_INFO, EventType.LOG_WARNING, EventType.LOG_ERROR):
        event_bus.subscribe(event_type, forward_logs)


def drain_events() -> None:
    """Deliver every queued event to its subscribers."""
    while event_bus.process_queue(max_events=1000):
        pass


def read_signature(text: str):
    try:
        return parse_signature(text)
    except (ParseError, ValidationError) as e:
        raise InputError(f"invalid signature {text!r}: {e}")


def write_text(path: Optional[Path], text: str) -> None:
    if path is None:
        click.echo(text, nl=False)
        return
    try:
        path.write_text(text, encoding="utf-8")
    except OSError as e:
        raise InputError(f"cannot write {path}: {e}")
    log.info("Wrote %s", path)


@click.group(name="strata-atlas")
@click.option("--settings", "settings_path", type=click.Path(path_type=Path), default=None,
              help="JSON settings file (default: strata_atlas.json)")
@click.option("--verbose", "-v", is_flag=True, help="debug logging")
@click.pass_context
def cli(ctx: click.Context, settings_path: Optional[Path], verbose: bool):
    """Boundary points, equatorial nets and component counts of one-dimensional strata."""
    settings = load_settings(settings_path)
    if verbose:
        settings["log_level"] = "DEBUG"
    setup_logging(settings["log_level"])
    configure_engine(settings)
    ctx.obj = {"settings": settings, "settings_path": settings_path}
    ctx.call_on_close(drain_events)


@cli.command()
@click.argument("signature")
def dim(signature: str):
    """Projectivized dimension and family of SIGNATURE."""
    sig = read_signature(signature)
    click.echo(f"dimension: {dimension(sig)}")
    click.echo(f"family: {classify_one_dim(sig).value}")


@cli.command()
@click.argument("signature")
@click.option("--json", "as_json", is_flag=True, help="print JSON instead of text")
@click.pass_obj
def boundaries(obj: dict, signature: str, as_json: bool):
    """Canonical boundary points of a one-dimensional stratum."""
    sig = read_signature(signature)
    try:
        points = enumerate_boundaries(sig)
    except UnsupportedFamily as e:
        raise InputError(str(e))
    if as_json:
        data = {"signature": sig.render(), "boundaries": [b.to_dict() for b in points]}
        click.echo(json.dumps(data, indent=obj["settings"]["report_indent"]))
        return
    for i, b in enumerate(points):
        click.echo(f"{i:4d}  {b.describe()}")
    click.echo(f"{len(points)} boundary point(s)")


@cli.command()
@click.argument("signature")
@click.option("--dot", "dot_path", type=click.Path(dir_okay=False, path_type=Path), help="write DOT to a file")
@click.option("--json", "json_path", type=click.Path(dir_okay=False, path_type=Path), help="write JSON to a file")
@click.pass_obj
def net(obj: dict, signature: str, dot_path: Optional[Path], json_path: Optional[Path]):
    """Build the equatorial net of a one-dimensional stratum."""
    sig = read_signature(signature)
    try:
        graph = build_net(sig, check_involution=obj["settings"]["check_involution"])
    except UnsupportedFamily as e:
        raise InputError(str(e))
    except AtlasError as e:
        raise click.ClickException(f"{type(e).__name__}: {e}")
    click.echo(
        f"{sig.render()}: {len(graph.vertices)} vertices, {len(graph.pairing) // 2} arcs, "
        f"{len(graph.components)} component(s)"
    )
    if dot_path is not None:
        write_text(dot_path, export_dot(graph))
    if json_path is not None:
        write_text(json_path, export_json(graph, indent=obj["settings"]["report_indent"]))


@cli.command()
@click.argument("signature")
@click.option("--json", "as_json", is_flag=True, help="print JSON instead of text")
@click.pass_obj
def components(obj: dict, signature: str, as_json: bool):
    """Connected components of a stratum with their invariants."""
    sig = read_signature(signature)
    try:
        graph = build_net(sig, check_involution=obj["settings"]["check_involution"])
        reports = all_component_invariants(graph)
    except UnsupportedFamily as e:
        raise InputError(str(e))
    except AtlasError as e:
        raise click.ClickException(f"{type(e).__name__}: {e}")

    if as_json:
        data = {"signature": sig.render(), "components": [r.to_dict() for r in reports]}
        click.echo(json.dumps(data, indent=obj["settings"]["report_indent"]))
        return
    for r in reports:
        kind = f"hyperelliptic {r.profile}" if r.hyperelliptic else "non-hyperelliptic"
        extra = []
        if r.index is not None:
            extra.append(f"index {r.index[0]} mod {r.index[1]}")
        if r.spin is not None:
            extra.append(f"spin {r.spin}")
        suffix = f" ({', '.join(extra)})" if extra else ""
        click.echo(f"component {r.id}: {r.size} boundary point(s), {kind}{suffix}")
    click.echo(f"{len(reports)} component(s)")


def log_progress(progress: SweepProgress) -> None:
    log.debug(
        "[%d/%d] %s: %s (%d mismatch(es), %d failed)",
        progress.done, progress.total, progress.signature, progress.verdict,
        progress.mismatches, progress.failed,
    )


def finish_sweep(obj: dict, report: SweepReport, report_path: Optional[Path]) -> None:
    text = json.dumps(report.to_dict(), indent=obj["settings"]["report_indent"]) + "\n"
    if report_path is not None:
        write_text(report_path, text)
    for record in report.records:
        line = f"{record.verdict:9s} {record.signature}"
        if record.verdict == "probe":
            line += f"  components={record.computed.get('components')}"
        click.echo(line)
        for detail in record.details + record.flags:
            click.echo(f"          {detail}")
    click.echo(
        f"{len(report.records)} strata, {len(report.mismatches)} mismatch(es), "
        f"{len(report.flagged)} flagged"
    )
    drain_events()
    if not report.ok:
        sys.exit(EXIT_MISMATCH)


@cli.command()
@click.option("--family", type=click.Choice(["B", "C", "D"]), required=True)
@click.option("--max-pole-sum", type=click.IntRange(min=0), required=True)
@click.option("--jobs", type=click.IntRange(min=1), default=None, help="parallel workers")
@click.option("--report", "report_path", type=click.Path(dir_okay=False, path_type=Path))
@click.pass_obj
def verify(obj: dict, family: str, max_pole_sum: int, jobs: Optional[int], report_path: Optional[Path]):
    """Verify the predicted component counts of a family up to a pole bound."""
    settings = obj["settings"]
    report = sweep(
        Family(family), max_pole_sum, jobs or settings["max_parallel_jobs"], settings,
        on_progress=log_progress,
    )
    finish_sweep(obj, report, report_path)


@cli.command("verify-stratum")
@click.argument("signature")
@click.pass_obj
def verify_one(obj: dict, signature: str):
    """Verify the predicted component counts of a single stratum."""
    sig = read_signature(signature)
    try:
        record = verify_stratum(sig, obj["settings"]["check_involution"])
    except UnsupportedFamily as e:
        raise InputError(str(e))
    except AtlasError as e:
        raise click.ClickException(f"{type(e).__name__}: {e}")
    click.echo(json.dumps(record.to_dict(), indent=obj["settings"]["report_indent"]))
    if not record.ok:
        sys.exit(EXIT_MISMATCH)


@cli.command("probe-conjecture")
@click.option("--max-pole-sum", type=click.IntRange(min=0), required=True)
@click.option("--jobs", type=click.IntRange(min=1), default=None, help="parallel workers")
@click.option("--report", "report_path", type=click.Path(dir_okay=False, path_type=Path))
@click.pass_obj
def probe(obj: dict, max_pole_sum: int, jobs: Optional[int], report_path: Optional[Path]):
    """Count the components of every A stratum up to a pole bound (experimental)."""
    settings = obj["settings"]
    report = probe_conjecture(
        max_pole_sum, jobs or settings["max_parallel_jobs"], settings,
        on_progress=log_progress,
    )
    finish_sweep(obj, report, report_path)


@cli.command()
def families():
    """List the loaded family plugins."""
    manager = get_family_manager()
    for info in manager.get_family_info():
        click.echo(f"{info['family']}  {info['name']} {info['version']}: {', '.join(info['boundary_types'])}")
    for name, error in manager.load_errors.items():
        click.echo(f"failed: {name}: {error.splitlines()[0]}", err=True)


@cli.command("settings")
@click.option("--write", is_flag=True, help="save the effective settings to the settings file")
@click.pass_obj
def show_settings(obj: dict, write: bool):
    """Show the effective settings."""
    click.echo(json.dumps(obj["settings"], indent=2))
    if write:
        save_settings(obj["settings"], obj["settings_path"])


def main():
    """Main entry point."""
    cli(prog_name="strata-atlas")


if __name__ == "__main__":
    main()
