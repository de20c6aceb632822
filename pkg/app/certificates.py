# app/certificates.py
"""Crossing certificates: per-plane assemblies of component drawings whose
totals are always recomputed from the raw coordinates."""
from __future__ import annotations

import hashlib
import logging
import re
from dataclasses import dataclass, field
from typing import FrozenSet, Iterable, List, Optional, Sequence

from app.construction import EdgePartition
from app.errors import CertificateError, DomainError, ParseError
from app.geometry import Drawing, count_crossings, disjoint_union_layout
from app.graph_core import Edge, format_edge, hypercube
from app.utils.formats import format_drawing, numbered_lines, parse_drawing_lines, split_blocks

logger = logging.getLogger(__name__)

MAX_LISTED_EDGES = 8

_CERT_HEADER = re.compile(r"^certificate planes=(\d+) total=(\d+)$")
_PLANE_LINE = re.compile(r"^plane (\d+) total=(\d+) components=(\d+)$")
_COMPONENT_LINE = re.compile(r"^component (\d+) total=(\d+) bends=(\d+)$")


@dataclass(frozen=True)
class PlaneCertificate:
    plane_index: int
    component_drawings: List[Drawing]
    assembled: Drawing
    total: int
    component_totals: List[int] = field(default_factory=list)


@dataclass(frozen=True)
class CrossingCertificate:
    partition: EdgePartition
    planes: List[PlaneCertificate]
    grand_total: int


def _listing(edges: Iterable[Edge]) -> str:
    ordered = sorted(edges)
    shown = ", ".join(format_edge(e) for e in ordered[:MAX_LISTED_EDGES])
    if len(ordered) > MAX_LISTED_EDGES:
        shown += f", ... ({len(ordered) - MAX_LISTED_EDGES} more)"
    return shown


# ============================================================
#   CERTIFICATION
# ============================================================

def certify_plane(
    part_edges: Iterable[Edge], component_drawings: Sequence[Drawing], plane_index: int = 1
) -> PlaneCertificate:
    part: FrozenSet[Edge] = frozenset(part_edges)
    drawn: set = set()
    for d in component_drawings:
        drawn |= d.graph.edges
    missing, extra = part - drawn, drawn - part
    if missing or extra:
        parts = []
        if missing:
            parts.append(f"{len(missing)} part edges missing from the component drawings ({_listing(missing)})")
        if extra:
            parts.append(f"{len(extra)} drawn edges not in the part ({_listing(extra)})")
        raise CertificateError(f"plane {plane_index}: " + "; ".join(parts), sorted(missing), sorted(extra))

    try:
        assembled = disjoint_union_layout(component_drawings)
        component_totals = [count_crossings(d).total for d in component_drawings]
        total = count_crossings(assembled).total
    except DomainError as exc:
        raise CertificateError(f"plane {plane_index}: {exc}") from exc
    if total != sum(component_totals):
        raise CertificateError(
            f"plane {plane_index}: assembled total {total} differs from component sum {sum(component_totals)}"
        )
    logger.info("plane %d certified: %d components, %d crossings", plane_index, len(component_drawings), total)
    return PlaneCertificate(plane_index, list(component_drawings), assembled, total, component_totals)


def certify_biplanar(
    partition: EdgePartition, plane_certificates: Sequence[PlaneCertificate]
) -> CrossingCertificate:
    """Re-derive every plane from raw geometry and compare with the claimed numbers."""
    if len(plane_certificates) != partition.k:
        raise CertificateError(f"partition has {partition.k} planes, got {len(plane_certificates)} certificates")
    problems = partition.problems()
    if problems:
        raise CertificateError("partition is not an edge partition: " + "; ".join(problems))

    planes: List[PlaneCertificate] = []
    for i, (part, claimed) in enumerate(zip(partition.parts, plane_certificates), start=1):
        if claimed.plane_index != i:
            raise CertificateError(f"plane certificate {claimed.plane_index} supplied in position {i}")
        fresh = certify_plane(part, claimed.component_drawings, i)
        if fresh.total != claimed.total:
            raise CertificateError(f"plane {i}: recount gives {fresh.total}, certificate claims {claimed.total}")
        if claimed.component_totals and fresh.component_totals != list(claimed.component_totals):
            raise CertificateError(
                f"plane {i}: component recounts {fresh.component_totals} differ from {claimed.component_totals}"
            )
        planes.append(fresh)
    grand_total = sum(p.total for p in planes)
    logger.info("certificate verified: %d planes, %d crossings", len(planes), grand_total)
    return CrossingCertificate(partition, planes, grand_total)


# ============================================================
#   TEXT FORMAT
# ============================================================

def _digest(content: str) -> str:
    return hashlib.sha256(content.encode("utf-8")).hexdigest()


def format_certificate(cert: CrossingCertificate) -> str:
    out = [f"certificate planes={len(cert.planes)} total={cert.grand_total}\n"]
    for plane in cert.planes:
        out.append(f"plane {plane.plane_index} total={plane.total} components={len(plane.component_drawings)}\n")
        for j, (d, t) in enumerate(zip(plane.component_drawings, plane.component_totals), start=1):
            out.append(f"component {j} total={t} bends={d.bend_count()}\n")
            out.append(format_drawing(d))
    content = "".join(out)
    return content + f"verified {_digest(content)}\n"


def read_certificate(text: str, partition: Optional[EdgePartition] = None) -> CrossingCertificate:
    """Parse, check the content hash and recount everything.

    Without an explicit partition, the parts are taken to be the union of each
    plane's component edges over the hypercube of the drawings' width.
    """
    cut = text.rfind("verified ")
    if cut < 0 or (cut > 0 and text[cut - 1] != "\n"):
        raise ParseError("missing trailing 'verified <hash>' line")
    content, trailer = text[:cut], text[cut:].strip()
    claimed_hash = trailer.split(" ", 1)[1] if " " in trailer else ""
    if _digest(content) != claimed_hash:
        raise CertificateError("certificate hash does not match its content")

    lines = numbered_lines(content)
    if not lines:
        raise ParseError("empty certificate")
    header = _CERT_HEADER.match(lines[0][1])
    if not header:
        raise ParseError(f"expected a certificate header, got {lines[0][1]!r}", lines[0][0])
    k, claimed_total = int(header.group(1)), int(header.group(2))

    planes: List[PlaneCertificate] = []
    for block in split_blocks(lines[1:], ("plane ",)):
        line_no, line = block[0]
        m = _PLANE_LINE.match(line)
        if not m:
            raise ParseError(f"expected a plane line, got {line!r}", line_no)
        index, plane_total, count = (int(g) for g in m.groups())
        drawings: List[Drawing] = []
        totals: List[int] = []
        for comp in split_blocks(block[1:], ("component ",)):
            c_no, c_line = comp[0]
            cm = _COMPONENT_LINE.match(c_line)
            if not cm:
                raise ParseError(f"expected a component line, got {c_line!r}", c_no)
            d = parse_drawing_lines(comp[1:])
            if d.bend_count() != int(cm.group(3)):
                raise CertificateError(f"plane {index} component {cm.group(1)}: bend count mismatch")
            drawings.append(d)
            totals.append(int(cm.group(2)))
        if len(drawings) != count:
            raise ParseError(f"plane {index} declares {count} components, found {len(drawings)}", line_no)
        try:
            assembled = disjoint_union_layout(drawings)
        except DomainError as exc:
            raise CertificateError(f"plane {index}: {exc}") from exc
        planes.append(PlaneCertificate(index, drawings, assembled, plane_total, totals))
    if len(planes) != k:
        raise ParseError(f"header declares {k} planes, found {len(planes)}", lines[0][0])

    if partition is None:
        width = next((d.width for p in planes for d in p.component_drawings), 0)
        try:
            host = hypercube(width)
            parts = tuple(frozenset().union(*(d.graph.edges for d in p.component_drawings)) for p in planes)
            partition = EdgePartition(host, parts)
        except DomainError as exc:
            raise CertificateError(f"cannot rebuild the partition: {exc}") from exc

    cert = certify_biplanar(partition, planes)
    if cert.grand_total != claimed_total:
        raise CertificateError(f"recount gives {cert.grand_total}, certificate claims {claimed_total}")
    return cert
