# app/commands/certificate_commands.py
from __future__ import annotations

import logging
from pathlib import Path
from typing import List, Optional

from app.certificates import certify_biplanar, certify_plane, format_certificate, read_certificate
from app.commands import EXIT_CHECK_FAILED, EXIT_INPUT_ERROR, EXIT_OK
from app.errors import CertificateError, DomainError, ParseError
from app.geometry import Drawing
from app.graph_core import Graph, connected_components
from app.models import CommandResult
from app.utils.storage import component_drawing_path, read_drawing, read_partition, read_text, write_text

logger = logging.getLogger(__name__)


def _expected_components(part) -> int:
    return len(connected_components(Graph.from_edges(part)))


# ---------------------------------------------------------
# certify
# ---------------------------------------------------------
def cmd_certify(partition: str, drawings: str, out: str) -> CommandResult:
    try:
        p = read_partition(partition)
    except (ParseError, DomainError, OSError) as exc:
        logger.error("%s: %s", partition, exc)
        return CommandResult(exit_code=EXIT_INPUT_ERROR)

    missing: List[Path] = []
    per_plane: List[List[Drawing]] = []
    try:
        for i, part in enumerate(p.parts, start=1):
            components: List[Drawing] = []
            for j in range(1, _expected_components(part) + 1):
                path = component_drawing_path(drawings, i, j)
                if not path.is_file():
                    missing.append(path)
                    continue
                components.append(read_drawing(path))
            per_plane.append(components)
    except (ParseError, OSError) as exc:
        logger.error("%s", exc)
        return CommandResult(exit_code=EXIT_INPUT_ERROR)
    if missing:
        for path in missing:
            logger.error("missing component drawing %s", path)
        names = ", ".join(path.name for path in missing)
        return CommandResult(exit_code=EXIT_CHECK_FAILED, stdout_payload=f"missing component drawings: {names}\n")

    try:
        planes = [certify_plane(part, comps, i) for i, (part, comps) in enumerate(zip(p.parts, per_plane), start=1)]
        cert = certify_biplanar(p, planes)
    except CertificateError as exc:
        logger.error("%s", exc)
        return CommandResult(exit_code=EXIT_CHECK_FAILED, stdout_payload=f"certification failed: {exc}\n")

    for plane in cert.planes:
        logger.info("plane %d: %d crossings over %d components", plane.plane_index, plane.total, len(plane.component_drawings))
    try:
        path = write_text(out, format_certificate(cert))
    except OSError as exc:
        logger.error("cannot write %s: %s", out, exc)
        return CommandResult(exit_code=EXIT_INPUT_ERROR)
    return CommandResult(exit_code=EXIT_OK, stdout_payload=f"{cert.grand_total}\n", report_path=str(path))


# ---------------------------------------------------------
# check (re-verify a written certificate)
# ---------------------------------------------------------
def cmd_check(certificate: str, partition: Optional[str] = None) -> CommandResult:
    try:
        text = read_text(certificate)
        p = read_partition(partition) if partition else None
    except (ParseError, DomainError, OSError) as exc:
        logger.error("%s", exc)
        return CommandResult(exit_code=EXIT_INPUT_ERROR)
    try:
        cert = read_certificate(text, p)
    except ParseError as exc:
        logger.error("%s: %s", certificate, exc)
        return CommandResult(exit_code=EXIT_INPUT_ERROR)
    except CertificateError as exc:
        logger.error("%s", exc)
        return CommandResult(exit_code=EXIT_CHECK_FAILED, stdout_payload=f"certificate rejected: {exc}\n")
    return CommandResult(exit_code=EXIT_OK, stdout_payload=f"{cert.grand_total}\n")
