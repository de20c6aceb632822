# app/commands/drawing_commands.py
from __future__ import annotations

import logging
from typing import Optional

from pydantic import ValidationError

from app.commands import EXIT_CHECK_FAILED, EXIT_INPUT_ERROR, EXIT_OK, EXIT_TARGET_MISSED
from app.errors import DegenerateGeometryError, DomainError, ParseError, SearchError
from app.geometry import count_crossings
from app.layout_search import search_best
from app.layouts import baseline_fixture_drawings, biplanar_fixture_drawings
from app.models import CommandResult, SearchParams
from app.rendering import export_svg, render_png
from app.utils.progress import update_search_progress
from app.utils.storage import component_drawing_path, read_drawing, read_graph, write_drawing, write_text

logger = logging.getLogger(__name__)

INPUT_ERRORS = (ParseError, DomainError, OSError)


# ---------------------------------------------------------
# count
# ---------------------------------------------------------
def cmd_count(drawing: str) -> CommandResult:
    try:
        d = read_drawing(drawing)
    except INPUT_ERRORS as exc:
        logger.error("%s: %s", drawing, exc)
        return CommandResult(exit_code=EXIT_INPUT_ERROR)
    try:
        count = count_crossings(d)
    except DegenerateGeometryError as exc:
        logger.error("%s", exc)
        payload = exc.report.render() if exc.report is not None else ""
        return CommandResult(exit_code=EXIT_CHECK_FAILED, stdout_payload=payload)
    for w in count.goodness_warnings:
        logger.warning("not a good drawing: %s", w)
    return CommandResult(exit_code=EXIT_OK, stdout_payload=f"{count.total}\n")


# ---------------------------------------------------------
# search
# ---------------------------------------------------------
def cmd_search(
    graph: str,
    out: str,
    seed: int = 0,
    restarts: Optional[int] = None,
    budget: Optional[int] = None,
    target: Optional[int] = None,
    max_bends: Optional[int] = None,
    grid_extent: Optional[int] = None,
    temperature: Optional[float] = None,
    cooling: Optional[float] = None,
    workers: Optional[int] = None,
    init: Optional[str] = None,
    progress: Optional[str] = None,
) -> CommandResult:
    overrides = {
        "restarts": restarts,
        "moves_per_restart": budget,
        "max_bends": max_bends,
        "grid_extent": grid_extent,
        "initial_temperature": temperature,
        "cooling_factor": cooling,
        "workers": workers,
    }
    try:
        params = SearchParams(
            seed=seed, target=target, **{k: v for k, v in overrides.items() if v is not None}
        )
    except ValidationError as exc:
        logger.error("invalid search parameters: %s", exc)
        return CommandResult(exit_code=EXIT_INPUT_ERROR)

    try:
        g = read_graph(graph)
        start = read_drawing(init) if init else None
    except INPUT_ERRORS as exc:
        logger.error("%s", exc)
        return CommandResult(exit_code=EXIT_INPUT_ERROR)

    def on_restart(state) -> None:
        update_search_progress(state, progress)

    try:
        outcome = search_best(g, params, init=start, on_restart=on_restart)
        path = write_drawing(out, outcome.drawing)
    except (DomainError, SearchError) as exc:
        logger.error("search failed: %s", exc)
        return CommandResult(exit_code=EXIT_INPUT_ERROR)
    except OSError as exc:
        logger.error("cannot write %s: %s", out, exc)
        return CommandResult(exit_code=EXIT_INPUT_ERROR)

    code = EXIT_OK if outcome.target_met else EXIT_TARGET_MISSED
    if not outcome.target_met:
        logger.warning("target %s missed: best total %d", params.target, outcome.total)
    return CommandResult(exit_code=code, stdout_payload=f"{outcome.total}\n", report_path=str(path))


# ---------------------------------------------------------
# export
# ---------------------------------------------------------
def cmd_export(drawing: str, out: str) -> CommandResult:
    try:
        d = read_drawing(drawing)
        if out.lower().endswith(".png"):
            path = render_png(d, out)
        else:
            path = write_text(out, export_svg(d))
    except INPUT_ERRORS as exc:
        logger.error("%s", exc)
        return CommandResult(exit_code=EXIT_INPUT_ERROR)
    return CommandResult(exit_code=EXIT_OK, stdout_payload=f"wrote {path}\n", report_path=str(path))


# ---------------------------------------------------------
# fixtures [--baseline]
# ---------------------------------------------------------
def cmd_fixtures(out: str, baseline: bool = False) -> CommandResult:
    planes = baseline_fixture_drawings() if baseline else biplanar_fixture_drawings()
    written = 0
    try:
        for i, components in enumerate(planes, start=1):
            for j, d in enumerate(components, start=1):
                write_drawing(component_drawing_path(out, i, j), d)
                written += 1
    except OSError as exc:
        logger.error("cannot write fixtures to %s: %s", out, exc)
        return CommandResult(exit_code=EXIT_INPUT_ERROR)
    return CommandResult(exit_code=EXIT_OK, stdout_payload=f"wrote {written} component drawings to {out}\n")
