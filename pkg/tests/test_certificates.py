# tests/test_certificates.py
from __future__ import annotations

import pytest

from app.certificates import (
    PlaneCertificate,
    _digest,
    certify_biplanar,
    certify_plane,
    format_certificate,
    read_certificate,
)
from app.errors import CertificateError, ParseError
from app.geometry import Drawing, Point
from app.graph_core import VertexLabel


def _certify(partition, drawings):
    planes = [certify_plane(part, comps, i) for i, (part, comps) in enumerate(zip(partition.parts, drawings), start=1)]
    return certify_biplanar(partition, planes)


def test_biplanar_certificate_totals_128(biplanar_partition, biplanar_drawings):
    cert = _certify(biplanar_partition, biplanar_drawings)
    assert cert.grand_total == 128
    assert [p.total for p in cert.planes] == [64, 64]
    assert all(t == 8 for p in cert.planes for t in p.component_totals)


def test_baseline_certificate_totals_256(baseline, baseline_drawings):
    cert = _certify(baseline, baseline_drawings)
    assert cert.grand_total == 256
    assert [len(p.component_drawings) for p in cert.planes] == [16, 16]


def test_missing_component_is_named(biplanar_partition, biplanar_drawings):
    with pytest.raises(CertificateError) as info:
        certify_plane(biplanar_partition.parts[0], biplanar_drawings[0][1:], 1)
    assert len(info.value.missing) == 64
    assert info.value.extra == []
    assert "missing" in str(info.value)


def test_component_from_the_other_plane_is_extra(biplanar_partition, biplanar_drawings):
    with pytest.raises(CertificateError) as info:
        certify_plane(biplanar_partition.parts[0], biplanar_drawings[0][1:] + biplanar_drawings[1][:1], 1)
    assert len(info.value.extra) == 64


def test_moved_vertex_changes_the_recount(biplanar_partition, biplanar_drawings):
    comp = biplanar_drawings[0][0]
    v = VertexLabel("00000010")
    assert v in comp.graph.vertices
    moved = Drawing(comp.graph, {**comp.position, v: Point(-5, 0)}, comp.route)
    plane = certify_plane(biplanar_partition.parts[0], [moved] + biplanar_drawings[0][1:], 1)
    assert plane.total == 66
    forged = PlaneCertificate(1, plane.component_drawings, plane.assembled, 64, [8] * 8)
    honest = certify_plane(biplanar_partition.parts[1], biplanar_drawings[1], 2)
    with pytest.raises(CertificateError):
        certify_biplanar(biplanar_partition, [forged, honest])


def test_wrong_plane_count(biplanar_partition, biplanar_drawings):
    plane = certify_plane(biplanar_partition.parts[0], biplanar_drawings[0], 1)
    with pytest.raises(CertificateError):
        certify_biplanar(biplanar_partition, [plane])


# ---------- text format ----------

def test_certificate_text_roundtrip(biplanar_partition, biplanar_drawings):
    cert = _certify(biplanar_partition, biplanar_drawings)
    text = format_certificate(cert)
    assert text.startswith("certificate planes=2 total=128\n")
    assert text.splitlines()[-1].startswith("verified ")
    again = read_certificate(text)
    assert again.grand_total == 128
    assert read_certificate(text, biplanar_partition).grand_total == 128
    assert format_certificate(again) == text


def test_edited_certificate_fails_its_hash(biplanar_partition, biplanar_drawings):
    text = format_certificate(_certify(biplanar_partition, biplanar_drawings))
    tampered = text.replace("v 00000010 20 0\n", "v 00000010 -5 0\n", 1)
    assert tampered != text
    with pytest.raises(CertificateError):
        read_certificate(tampered)


def test_claimed_total_is_recounted(biplanar_partition, biplanar_drawings):
    text = format_certificate(_certify(biplanar_partition, biplanar_drawings))
    content = text[: text.rfind("verified ")].replace("total=128", "total=100", 1)
    with pytest.raises(CertificateError):
        read_certificate(content + f"verified {_digest(content)}\n")


def test_certificate_without_trailer():
    with pytest.raises(ParseError):
        read_certificate("certificate planes=0 total=0\n")
