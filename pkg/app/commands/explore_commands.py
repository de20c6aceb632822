# app/commands/explore_commands.py
from __future__ import annotations

import logging
from typing import Optional

from pydantic import ValidationError

from app.commands import EXIT_INPUT_ERROR, EXIT_OK
from app.errors import DomainError, ParseError, SearchError
from app.kplanar import explore, render_exploration
from app.models import CommandResult, SearchParams
from app.utils.storage import read_graph

logger = logging.getLogger(__name__)


# ---------------------------------------------------------
# explore
# ---------------------------------------------------------
def cmd_explore(
    graph: str,
    k: int = 2,
    symmetric_only: bool = False,
    limit: Optional[int] = None,
    seed: int = 0,
    restarts: Optional[int] = None,
    budget: Optional[int] = None,
) -> CommandResult:
    try:
        overrides = {"restarts": restarts, "moves_per_restart": budget}
        params = SearchParams(seed=seed, **{key: v for key, v in overrides.items() if v is not None})
        g = read_graph(graph)
        rows = explore(g, k, symmetric_only=symmetric_only, limit=limit, seed=seed, params=params)
    except (ParseError, DomainError, ValidationError, OSError) as exc:
        logger.error("%s", exc)
        return CommandResult(exit_code=EXIT_INPUT_ERROR)
    except SearchError as exc:
        logger.error("part evaluation failed: %s", exc)
        return CommandResult(exit_code=EXIT_INPUT_ERROR)
    return CommandResult(exit_code=EXIT_OK, stdout_payload=render_exploration(rows))
