# app/utils/progress.py
from __future__ import annotations

from pathlib import Path
from typing import Optional, Union

from app.models import SearchProgress
from app.utils.storage import save_json


def update_search_progress(
    progress: SearchProgress, sidecar: Optional[Union[str, Path]] = None
) -> SearchProgress:
    """
    Recompute the derived fraction and persist to the JSON sidecar if one
    was requested.
    """
    if progress.restarts_total > 0:
        progress.progress = progress.restarts_done / progress.restarts_total
    else:
        progress.progress = 0.0
    if sidecar is not None:
        save_json(sidecar, progress.model_dump())
    return progress
