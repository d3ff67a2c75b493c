"""Shared fixtures: hand-assembled PDF files independent of the package writer."""

from __future__ import annotations

import re
import zlib

import pytest

from pdfseal import make_baseline, protect, write

HELLO_OPS = b"BT /F1 12 Tf 72 712 Td (Hello) Tj ET"


def stream_body(ops: bytes, extra: bytes = b"") -> bytes:
    return b"<</Length " + str(len(ops)).encode() + extra + b">>\nstream\n" + ops + b"\nendstream"


def flate_stream_body(ops: bytes, extra: bytes = b"") -> bytes:
    raw = zlib.compress(ops)
    return (
        b"<</Length " + str(len(raw)).encode() + b" /Filter /FlateDecode" + extra
        + b">>\nstream\n" + raw + b"\nendstream"
    )


def assemble_pdf(
    bodies: dict[int, bytes],
    root: int = 1,
    info: int | None = None,
    header: bytes = b"%PDF-1.4\n",
    trailer_extra: bytes = b"",
) -> bytes:
    """Build a classic-xref PDF from numbered object bodies."""
    out = bytearray(header)
    offsets: dict[int, int] = {}
    for num in sorted(bodies):
        offsets[num] = len(out)
        out += f"{num} 0 obj\n".encode() + bodies[num] + b"\nendobj\n"
    xref_offset = len(out)
    size = max(bodies) + 1
    out += b"xref\n" + f"0 {size}\n".encode()
    out += b"0000000000 65535 f \n"
    for num in range(1, size):
        if num in offsets:
            out += f"{offsets[num]:010d} 00000 n \n".encode()
        else:
            out += b"0000000000 65535 f \n"
    trailer = f"trailer\n<</Size {size} /Root {root} 0 R".encode()
    if info is not None:
        trailer += f" /Info {info} 0 R".encode()
    trailer += trailer_extra + b">>\n"
    out += trailer
    out += f"startxref\n{xref_offset}\n%%EOF\n".encode()
    return bytes(out)


def append_increment(base: bytes, bodies: dict[int, bytes], root: int = 1) -> bytes:
    """Append an incremental update section redefining the given objects."""
    match = None
    for match in re.finditer(rb"startxref\s+(\d+)", base):
        pass
    assert match is not None, "base must contain startxref"
    prev = int(match.group(1))
    size_match = None
    for size_match in re.finditer(rb"/Size\s+(\d+)", base):
        pass
    size = int(size_match.group(1)) if size_match else max(bodies) + 1
    size = max(size, max(bodies) + 1)

    out = bytearray(base)
    if not out.endswith(b"\n"):
        out += b"\n"
    offsets: dict[int, int] = {}
    for num in sorted(bodies):
        offsets[num] = len(out)
        out += f"{num} 0 obj\n".encode() + bodies[num] + b"\nendobj\n"
    xref_offset = len(out)
    out += b"xref\n0 1\n0000000000 65535 f \n"
    for num in sorted(offsets):
        out += f"{num} 1\n".encode()
        out += f"{offsets[num]:010d} 00000 n \n".encode()
    out += f"trailer\n<</Size {size} /Root {root} 0 R /Prev {prev}>>\n".encode()
    out += f"startxref\n{xref_offset}\n%%EOF\n".encode()
    return bytes(out)


def minimal_pdf(ops: bytes = HELLO_OPS) -> bytes:
    return assemble_pdf({
        1: b"<</Type /Catalog /Pages 2 0 R>>",
        2: b"<</Type /Pages /Kids [3 0 R] /Count 1>>",
        3: (
            b"<</Type /Page /Parent 2 0 R /MediaBox [0 0 612 792] "
            b"/Resources <</Font <</F1 4 0 R>>>> /Contents 5 0 R>>"
        ),
        4: b"<</Type /Font /Subtype /Type1 /BaseFont /Helvetica>>",
        5: stream_body(ops),
    })


def xref_stream_pdf() -> bytes:
    """Single-page PDF indexed by an uncompressed cross-reference stream,
    with the font object packed inside an object stream."""
    font_body = b"<</Type /Font /Subtype /Type1 /BaseFont /Helvetica>>"
    objstm_payload = b"4 0 " + font_body
    first = len(b"4 0 ")
    bodies = {
        1: b"<</Type /Catalog /Pages 2 0 R>>",
        2: b"<</Type /Pages /Kids [3 0 R] /Count 1>>",
        3: (
            b"<</Type /Page /Parent 2 0 R /MediaBox [0 0 612 792] "
            b"/Resources <</Font <</F1 4 0 R>>>> /Contents 5 0 R>>"
        ),
        5: stream_body(HELLO_OPS),
        6: (
            b"<</Type /ObjStm /N 1 /First " + str(first).encode()
            + b" /Length " + str(len(objstm_payload)).encode()
            + b">>\nstream\n" + objstm_payload + b"\nendstream"
        ),
    }
    out = bytearray(b"%PDF-1.5\n")
    offsets: dict[int, int] = {}
    for num in sorted(bodies):
        offsets[num] = len(out)
        out += f"{num} 0 obj\n".encode() + bodies[num] + b"\nendobj\n"

    xref_num = 7
    size = xref_num + 1
    rows = bytearray()
    for num in range(size):
        if num == 0:
            rows += b"\x00" + (0).to_bytes(3, "big") + b"\x00"
        elif num == 4:
            rows += b"\x02" + (6).to_bytes(3, "big") + b"\x00"  # inside object stream 6
        elif num == xref_num:
            rows += b"\x01" + len(out).to_bytes(3, "big") + b"\x00"
        else:
            rows += b"\x01" + offsets[num].to_bytes(3, "big") + b"\x00"
    xref_offset = len(out)
    out += f"{xref_num} 0 obj\n".encode()
    out += (
        b"<</Type /XRef /Size " + str(size).encode()
        + b" /W [1 3 1] /Root 1 0 R /Length " + str(len(rows)).encode()
        + b">>\nstream\n" + bytes(rows) + b"\nendstream\nendobj\n"
    )
    out += f"startxref\n{xref_offset}\n%%EOF\n".encode()
    return bytes(out)


@pytest.fixture
def minimal_bytes() -> bytes:
    return minimal_pdf()


@pytest.fixture(scope="session")
def baseline3():
    return make_baseline(3, 4)


@pytest.fixture(scope="session")
def protected3_bytes(baseline3) -> bytes:
    protected, _ = protect(baseline3)
    return write(protected)
