"""Writes the Turtle and Markdown report pair into the output folder."""

import logging
from dataclasses import replace
from pathlib import Path
from typing import Sequence, Tuple, Union

from rdfkit.serializer import serialize_turtle
from suites.outcomes import Assertion
from reports.context import ReportContext, Trigger, report_file_stem
from reports.earl import emit_earl
from reports.markdown import emit_markdown

logger = logging.getLogger(__name__)


def report_paths(ctx: ReportContext, output_dir: Union[str, Path]) -> Tuple[Path, Path]:
    stem = report_file_stem(ctx)
    output_dir = Path(output_dir)
    return output_dir / f"{stem}.ttl", output_dir / f"{stem}.md"


def report_uris(ctx: ReportContext, turtle_path: Path, markdown_path: Path) -> Tuple[str, str]:
    """Host URLs in ci mode, local file URIs otherwise"""
    if ctx.trigger == Trigger.CI:
        root = Path(ctx.root).resolve()
        try:
            return tuple(ctx.host_url(path.resolve().relative_to(root).as_posix())
                         for path in (turtle_path, markdown_path))
        except ValueError:
            pass
    return turtle_path.resolve().as_uri(), markdown_path.resolve().as_uri()


def write_reports(assertions: Sequence[Assertion], ctx: ReportContext,
                  output_dir: Union[str, Path]) -> Tuple[Path, Path]:
    """Serialize both reports; returns the (turtle, markdown) paths"""
    output_dir = Path(output_dir)
    output_dir.mkdir(parents=True, exist_ok=True)
    turtle_path, markdown_path = report_paths(ctx, output_dir)
    ctx = replace(ctx, output_dir=output_dir, report_uris=report_uris(ctx, turtle_path, markdown_path))

    graph = emit_earl(assertions, ctx)
    with open(turtle_path, 'w', encoding='utf-8') as f:
        f.write(serialize_turtle(graph, graph.prefixes))
    with open(markdown_path, 'w', encoding='utf-8') as f:
        f.write(emit_markdown(assertions, ctx))
    logger.info("Reports written to %s and %s", turtle_path, markdown_path)
    return turtle_path, markdown_path
