"""Full-rewrite PDF writer: renumbered objects, one classic xref table.

Incremental saving is deliberately not offered; output bytes are a pure
function of the document graph.
"""

from __future__ import annotations

from typing import Any

from ..errors import WriteError
from .document import PdfDocument
from .objects import PdfName, PdfObject, PdfRef, PdfStream, format_number

_STRING_ESCAPES = {
    0x5C: b"\\\\",
    0x28: b"\\(",
    0x29: b"\\)",
    0x0D: b"\\r",
    0x0A: b"\\n",
}


def _write_string(value: bytes) -> bytes:
    out = bytearray(b"(")
    for b in value:
        out += _STRING_ESCAPES.get(b, bytes([b]))
    out += b")"
    return bytes(out)


def _write_name(name: str) -> bytes:
    out = bytearray(b"/")
    for b in name.encode("latin-1"):
        if 0x21 <= b <= 0x7E and b not in b"()<>[]{}/%#":
            out.append(b)
        else:
            out += f"#{b:02X}".encode("ascii")
    return bytes(out)


class _Writer:
    def __init__(self, doc: PdfDocument):
        self.doc = doc
        self.renumber: dict[tuple[int, int], int] = {}

    def run(self) -> bytes:
        self._validate()
        old_keys = sorted(self.doc.objects)
        for new_num, key in enumerate(old_keys, start=1):
            self.renumber[key] = new_num

        out = bytearray()
        major, minor = self.doc.version
        out += f"%PDF-{major}.{minor}\n".encode("ascii")
        out += b"%\xe2\xe3\xcf\xd3\n"  # binary marker comment

        offsets: dict[int, int] = {}
        for key in old_keys:
            new_num = self.renumber[key]
            offsets[new_num] = len(out)
            out += f"{new_num} 0 obj\n".encode("ascii")
            out += self._encode(self.doc.objects[key])
            out += b"\nendobj\n"

        xref_offset = len(out)
        count = len(old_keys) + 1
        out += b"xref\n"
        out += f"0 {count}\n".encode("ascii")
        out += b"0000000000 65535 f\r\n"
        for new_num in range(1, count):
            out += f"{offsets[new_num]:010d} 00000 n\r\n".encode("ascii")

        out += b"trailer\n"
        trailer: dict[str, Any] = {
            "Size": count,
            "Root": self._map_ref(self.doc.root_ref),
        }
        if self.doc.info_ref is not None and self.doc.info_ref.key() in self.renumber:
            trailer["Info"] = self._map_ref(self.doc.info_ref)
        out += self._encode(trailer)
        out += f"\nstartxref\n{xref_offset}\n%%EOF\n".encode("ascii")
        return bytes(out)

    def _validate(self) -> None:
        catalog = self.doc.resolve(self.doc.root_ref)
        if not isinstance(catalog, dict):
            raise WriteError("Root does not resolve to a dictionary")
        pages = self.doc.resolve(catalog.get("Pages"))
        if not isinstance(pages, dict):
            raise WriteError("Catalog has no usable Pages entry")
        for (num, gen), obj in self.doc.objects.items():
            if isinstance(obj, PdfStream):
                length = self.doc.resolve(obj.dict.get("Length"))
                if isinstance(length, int) and length != len(obj.raw):
                    raise WriteError(
                        f"object {num} {gen}: stream Length {length} does not match "
                        f"payload size {len(obj.raw)}"
                    )

    def _map_ref(self, ref: PdfRef) -> PdfObject:
        new_num = self.renumber.get(ref.key())
        if new_num is None:
            return None  # dangling references are written as null
        return PdfRef(new_num, 0)

    def _encode(self, obj: PdfObject) -> bytes:
        if obj is None:
            return b"null"
        if isinstance(obj, bool):
            return b"true" if obj else b"false"
        if isinstance(obj, (int, float)):
            return format_number(obj).encode("ascii")
        if isinstance(obj, PdfName):
            return _write_name(str(obj))
        if isinstance(obj, bytes):
            return _write_string(obj)
        if isinstance(obj, PdfRef):
            mapped = self._map_ref(obj)
            if mapped is None:
                return b"null"
            return f"{mapped.num} {mapped.gen} R".encode("ascii")
        if isinstance(obj, list):
            return b"[" + b" ".join(self._encode(item) for item in obj) + b"]"
        if isinstance(obj, PdfStream):
            entries = dict(obj.dict)
            entries["Length"] = len(obj.raw)
            return (
                self._encode(entries)
                + b"\nstream\n"
                + obj.raw
                + b"\nendstream"
            )
        if isinstance(obj, dict):
            parts = [
                _write_name(key) + b" " + self._encode(value)
                for key, value in obj.items()
            ]
            return b"<<" + b" ".join(parts) + b">>"
        raise WriteError(f"cannot encode object of type {type(obj).__name__}")


def write(doc: PdfDocument) -> bytes:
    """Serialize the document as a fresh single-generation PDF."""
    return _Writer(doc).run()
