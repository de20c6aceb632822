# app/commands/partition_commands.py
from __future__ import annotations

import logging

from app.commands import EXIT_CHECK_FAILED, EXIT_INPUT_ERROR, EXIT_OK
from app.construction import baseline_partition, build_biplanar_partition, verify_construction
from app.errors import DomainError, ParseError
from app.models import CommandResult
from app.utils.storage import read_partition, write_partition

logger = logging.getLogger(__name__)


# ---------------------------------------------------------
# build [--baseline]
# ---------------------------------------------------------
def cmd_build(out: str, baseline: bool = False) -> CommandResult:
    p = baseline_partition() if baseline else build_biplanar_partition()
    try:
        path = write_partition(out, p)
    except OSError as exc:
        logger.error("cannot write %s: %s", out, exc)
        return CommandResult(exit_code=EXIT_INPUT_ERROR)
    sizes = ", ".join(f"plane {i} edges={len(part)}" for i, part in enumerate(p.parts, start=1))
    kind = "baseline" if baseline else "biplanar"
    return CommandResult(exit_code=EXIT_OK, stdout_payload=f"wrote {kind} partition to {path}: {sizes}\n", report_path=str(path))


# ---------------------------------------------------------
# verify
# ---------------------------------------------------------
def cmd_verify(partition: str) -> CommandResult:
    try:
        p = read_partition(partition)
    except (ParseError, DomainError) as exc:
        logger.error("%s: %s", partition, exc)
        return CommandResult(exit_code=EXIT_INPUT_ERROR)
    except OSError as exc:
        logger.error("cannot read %s: %s", partition, exc)
        return CommandResult(exit_code=EXIT_INPUT_ERROR)

    report = verify_construction(p)
    for check in report.failed():
        logger.warning("check %s failed: %s", check.name, check.detail)
    code = EXIT_OK if report.overall else EXIT_CHECK_FAILED
    return CommandResult(exit_code=code, stdout_payload=report.render())
